#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "hsi/cobordism.hpp"
#include "hsi/moduli.hpp"

namespace hsi {

// X -> Ad_{exp(rotation * theta')} (signs . sub(X)), theta' = Ad_{c(X)^-1} theta,
// where sub(boundary) = c^-1 boundary c as reduced words
struct GraphStep {
    Substitution sub;
    std::vector<int> signs;
    double rotation = 0;
    Word conjugator;

    static GraphStep make(Substitution sub, std::vector<int> signs = {}, double rotation = 0);
    bool operator==(const GraphStep&) const = default;
};

struct GraphStage {
    int genus = 0;
    std::vector<GraphStep> steps;
};

// Handle2: genus h -> h-1, needs hol(curve) = sign I and forgets that pair.
// Handle1: genus h -> h+1, inserts pair curve.pair with hol(curve) = sign I and the dual side free.
// residual_signs act on the target generators.
struct HandleStage {
    int index = 2;  // 1 or 2
    int genus = 0;  // source genus
    CurveId curve;
    int sign = 1;
    std::vector<int> residual_signs;
};

using Stage = std::variant<GraphStage, HandleStage>;

int stage_source_genus(const Stage& s);
int stage_target_genus(const Stage& s);

// symbolic value of a generator: sign * Ad_K(w), w a word in source generators
// (ids < 2h) and handle parameters (ids >= 2h)
struct SymGen {
    Word w;
    int sign = 1;
};

struct SymCondition {
    Word w;
    int target = 1;  // condition: w = target * I
};

struct SymbolicRun {
    int n_params = 0;
    std::vector<SymGen> final_state;
    std::vector<SymCondition> conditions;  // in stage order, pinned letters kept
};

SymbolicRun run_symbolic(int source_genus, const std::vector<Stage>& stages);

class Correspondence {
public:
    enum class Kind { Graph, Handle2, Handle1, Composite };

    static Correspondence from_stages(int source_genus, std::vector<Stage> stages);
    static Correspondence identity(int h);
    static Correspondence graph(int h, std::vector<GraphStep> steps);
    static Correspondence sign_flip(const ClassBits& c);
    static Correspondence handle2(int h, CurveId attached, int sign = 1, std::vector<int> residual = {});
    static Correspondence handle1(int h, CurveId co_curve, int sign = 1, std::vector<int> residual = {});

    Kind kind() const;
    int source_genus() const { return source_; }
    int target_genus() const { return target_; }
    const std::vector<Stage>& stages() const { return stages_; }

    // handle parameters: pinned ones are forced to +-I by a later handle condition
    int parameter_count() const { return static_cast<int>(pinned_.size()); }
    const std::vector<std::optional<int>>& pinned() const { return pinned_; }
    // conditions on the source point, all of the form w(X) = target I
    const std::vector<SymCondition>& source_conditions() const { return conditions_; }
    bool always_empty() const { return always_empty_; }
    // free parameters the image actually depends on, ordered canonically
    const std::vector<int>& effective_parameters() const { return effective_; }
    const std::vector<SymGen>& symbolic_image() const { return final_; }
    // full parameter vector from values of the effective parameters (canonical order);
    // pinned parameters get +-I, unused free ones get I
    std::vector<SU2Element> full_parameters(const std::vector<SU2Element>& effective_values) const;

private:
    int source_ = 0, target_ = 0;
    std::vector<Stage> stages_;
    std::vector<std::optional<int>> pinned_;
    std::vector<SymCondition> conditions_;
    std::vector<SymGen> final_;
    std::vector<int> effective_;
    std::vector<int> home_sign_;  // per parameter, for canonical parametrization
    std::vector<int> home_exp_;
    bool always_empty_ = false;

    void analyze();
};

Correspondence elementary(const ElemCob& cob);
Correspondence elementary(const ElemCob& cob, const ClassBits& class_bits);

// c1 first, then c2
Correspondence compose(const Correspondence& c1, const Correspondence& c2);

// every level of a chain evaluation
struct ChainTrace {
    std::vector<ModuliPoint> levels;
    double worst_condition = 0;  // largest handle-condition residual
};

// params: one value per handle parameter (pinned entries are overridden)
ChainTrace evaluate_chain(const Correspondence& c, const ModuliPoint& x, std::vector<SU2Element> params);

class ImageSet {
public:
    bool empty() const { return empty_; }
    int dimension() const { return 3 * static_cast<int>(corr_.effective_parameters().size()); }
    bool is_singleton() const { return !empty_ && dimension() == 0; }
    ModuliPoint point() const;
    // effective parameters in canonical order
    ModuliPoint at(const std::vector<SU2Element>& effective_params) const;
    ModuliPoint sample(std::mt19937_64& rng) const;

private:
    friend ImageSet apply(const Correspondence&, const ModuliPoint&, const Tolerances&);
    Correspondence corr_;
    ModuliPoint source_;
    bool empty_ = false;
};

ImageSet apply(const Correspondence& corr, const ModuliPoint& pt, const Tolerances& tol = default_tolerances());

// largest discrepancy between the two correspondences on random source points,
// comparing images (shared canonical parameters) and source-condition values; +inf on shape mismatch
double agree_on_samples(const Correspondence& a, const Correspondence& b, std::mt19937_64& rng, int samples,
                        const Tolerances& tol = default_tolerances());

struct EmbeddednessReport {
    bool composable = true;
    bool empty = false;
    bool transverse = false;
    bool injective = false;
    bool pass = false;
    int samples_used = 0;
    double min_singular_value = 0;  // worst over samples, equations of the generalized intersection
    double immersion_margin = 0;    // worst over samples, projection to the outer factors
    std::optional<double> diagonal_error;
    std::string message;
};

EmbeddednessReport embeddedness_check(const Correspondence& c1, const Correspondence& c2, int samples,
                                      std::uint64_t seed = 1);

struct CleanIntersectionReport {
    int n_central = 0;
    int n_spheres = 0;
    int n_three_spheres = 0;  // S2xS1 only: L0 = L1
    int perturbed_count = 0;
    std::vector<double> angles;  // conjugacy angles of A, in [0, pi]
};

CleanIntersectionReport lens_intersection(std::int64_t p, std::int64_t q, int eps0, int eps1);

}  // namespace hsi
