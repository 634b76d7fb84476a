#pragma once

#include <random>
#include <vector>

#include "hsi/words.hpp"

namespace hsi {

// (theta, A_1, B_1, ..., A_h, B_h) with exp(theta) = prod [A_i, B_i]
struct ModuliPoint {
    Su2Vector theta;
    HolonomyPoint hol;

    int genus() const { return hol.genus; }
    double relation_residual() const;
    // |theta| < pi sqrt 2, the chart of the extended moduli space
    bool in_chart() const;
    // throws InvalidPoint if the relation fails or theta leaves the chart
    void validate(const Tolerances& tol = default_tolerances()) const;

    // theta = log of the boundary product; fails with SingularLog when the product is -I
    static ModuliPoint from_holonomies(HolonomyPoint h, const Tolerances& tol = default_tolerances());
    static ModuliPoint random(int h, std::mt19937_64& rng);
};

double distance(const ModuliPoint& a, const ModuliPoint& b);

// Cut surface: e^g = A1 e^{b1} A1^-1 A2^-1 e^{-b2} A2 prod [U_i, V_i].
// The sign in front of b2 is the one that makes glue and unglue land on the relation.
struct CutModuliPoint {
    Su2Vector g, b1, b2;
    SU2Element A1, A2;
    std::vector<SU2Element> extra;  // U_2, V_2, ..., U_h, V_h

    int genus() const { return 1 + static_cast<int>(extra.size() / 2); }
    double relation_residual() const;
    void validate(const Tolerances& tol = default_tolerances()) const;
};

double distance(const CutModuliPoint& a, const CutModuliPoint& b);

struct Moments {
    Su2Vector gamma, phi1, phi2;
};

Moments moments(const CutModuliPoint& pt);
CutModuliPoint su2_action(const SU2Element& G, const CutModuliPoint& pt);
// needs b1 = b2; returns (g, A1 A2, A2^-1 e^{b1} A2, U, V, ...)
ModuliPoint glue(const CutModuliPoint& pt, const Tolerances& tol = default_tolerances());
// canonical section A1 = A, A2 = I, b1 = b2 = log B~ where (A, B~) = (A_1, B_1)
CutModuliPoint unglue(const ModuliPoint& m, const Tolerances& tol = default_tolerances());
// A1 -> A1 e^{t b1}
CutModuliPoint flow(const CutModuliPoint& pt, double t);

// a valid cut point with b1 = b2 (on the reduction locus), genus h >= 1
CutModuliPoint random_reduced_cut_point(int h, std::mt19937_64& rng);
// a valid cut point with independent b1, b2
CutModuliPoint random_cut_point(int h, std::mt19937_64& rng);

}  // namespace hsi
