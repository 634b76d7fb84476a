#pragma once

#include <array>
#include <complex>
#include <random>

#include "hsi/tolerances.hpp"

namespace hsi {

// Element of su(2), stored as the coefficients of the pure quaternion x i + y j + z k.
// The norm is the one coming from <a,b> = -Tr(ab), i.e. sqrt(2) times the euclidean one.
struct Su2Vector {
    double x = 0, y = 0, z = 0;

    double euclidean() const;
    double norm() const;

    Su2Vector operator+(const Su2Vector& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Su2Vector operator-(const Su2Vector& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Su2Vector operator-() const { return {-x, -y, -z}; }
    Su2Vector operator*(double s) const { return {x * s, y * s, z * s}; }
    friend Su2Vector operator*(double s, const Su2Vector& v) { return v * s; }
    bool operator==(const Su2Vector&) const = default;
};

double distance(const Su2Vector& a, const Su2Vector& b);

// Unit quaternion w + x i + y j + z k.
class SU2Element {
public:
    SU2Element() = default;
    // normalizes; a zero quaternion is rejected
    SU2Element(double w, double x, double y, double z);

    static SU2Element identity() { return {}; }
    static SU2Element minus_identity() { return SU2Element(-1, 0, 0, 0); }

    double w() const { return q_[0]; }
    double x() const { return q_[1]; }
    double y() const { return q_[2]; }
    double z() const { return q_[3]; }
    const std::array<double, 4>& coords() const { return q_; }

    SU2Element operator*(const SU2Element& o) const;
    SU2Element operator-() const;
    SU2Element inverse() const;

    // 2x2 complex matrix, z axis mapped to diag(i, -i). Debugging aid only.
    std::array<std::array<std::complex<double>, 2>, 2> to_matrix() const;

private:
    std::array<double, 4> q_{1, 0, 0, 0};
};

// euclidean distance in R^4; SU(2) itself, not SO(3), so q and -q are far apart
double distance(const SU2Element& a, const SU2Element& b);

SU2Element exp(const Su2Vector& xi);
Su2Vector log(const SU2Element& g, const Tolerances& tol = default_tolerances());

SU2Element commutator(const SU2Element& a, const SU2Element& b);
Su2Vector adjoint(const SU2Element& g, const Su2Vector& xi);
SU2Element conjugate(const SU2Element& g, const SU2Element& h);  // g h g^-1
double conjugacy_angle(const SU2Element& g);

// pi * sqrt(2): the norm of log(-I) and the radius of the extended moduli chart
double cut_radius();

SU2Element haar_sample(std::mt19937_64& rng);
// uniform direction, norm uniform in [0, max_norm)
Su2Vector algebra_sample(std::mt19937_64& rng, double max_norm);

}  // namespace hsi
