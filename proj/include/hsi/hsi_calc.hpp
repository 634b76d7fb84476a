#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hsi/smith.hpp"

namespace hsi {

// one degree of a Z/8-graded group; torsion stored as sorted prime powers
struct DegreePart {
    std::uint64_t free = 0;
    std::vector<std::uint64_t> torsion;
    auto operator<=>(const DegreePart&) const = default;
};

class GradedGroup {
public:
    static constexpr int kPeriod = 8;

    static GradedGroup zero() { return {}; }
    static GradedGroup free_at(int degree, std::uint64_t rank = 1);

    void add_free(int degree, std::uint64_t rank);
    // adds Z/n (n >= 2; n <= 1 is ignored), split into prime powers
    void add_torsion(int degree, std::uint64_t n);

    const DegreePart& at(int degree) const { return parts_[mod(degree)]; }
    const std::array<DegreePart, kPeriod>& parts() const { return parts_; }

    std::uint64_t total_rank() const;
    std::vector<std::uint64_t> torsion_multiset() const;
    bool is_zero() const;
    bool torsion_free() const;

    GradedGroup shifted(int k) const;
    // lexicographically minimal rotation
    GradedGroup canonical() const;
    bool equal_up_to_shift(const GradedGroup& o) const { return canonical() == o.canonical(); }
    bool operator==(const GradedGroup&) const = default;

    static int mod(int d) { return ((d % kPeriod) + kPeriod) % kPeriod; }

private:
    std::array<DegreePart, kPeriod> parts_{};
};

std::vector<std::uint64_t> prime_power_factors(std::uint64_t n);

struct HsiResult {
    GradedGroup group;
    bool degrees_exact = true;  // false: only the parity statement is known
};

HsiResult lens_hsi(std::int64_t p, std::int64_t q, int cls);
HsiResult s2s1_hsi(int cls);

// tensor part in degree i+j, Tor part in degree i+j+1
GradedGroup kunneth(const GradedGroup& a, const GradedGroup& b);

enum class TriadVerdict { Minimal, Unknown };

struct TriadResult {
    TriadVerdict verdict = TriadVerdict::Unknown;
    std::uint64_t rank = 0;
};

// orders (|H1(Y_a)|, |H1(Y_b)|, |H1(Y_c)|), 0 meaning infinite; flags for (Y_a, Y_b, Y_c)
TriadResult triad_propagate(const std::array<std::uint64_t, 3>& orders, const std::array<bool, 3>& minimal);

struct PlumbingTree {
    std::vector<std::int64_t> weights;
    std::vector<std::pair<int, int>> edges;

    IntMatrix intersection_matrix() const;
};

struct PlumbingResult {
    bool minimal = false;
    std::uint64_t h1 = 0;
    std::string reason;  // set when not applicable
};

PlumbingResult plumbing_minimal(const PlumbingTree& tree);

struct QANode {
    enum class Leaf { Internal, Unknot, QAKnown };
    std::string name;
    std::int64_t det = 0;
    Leaf leaf = Leaf::Internal;
    std::vector<QANode> children;  // empty for leaves, two entries otherwise
};

struct QAResult {
    bool verified = false;
    std::vector<std::string> trace;
};

QAResult qa_verify(const QANode& cert);

}  // namespace hsi
