#pragma once

#include <memory>
#include <vector>

#include "hsi/tolerances.hpp"

namespace hsi {

using RealVec = std::vector<double>;

// point (u, v) of T*S^n inside R^{n+1} x R^{n+1}: |v| = 1, <u, v> = 0
struct CotangentPoint {
    RealVec u, v;
    int n() const { return static_cast<int>(v.size()) - 1; }
    // max of ||v| - 1| and |<u,v>|
    double constraint_residual() const;
};

double distance(const CotangentPoint& a, const CotangentPoint& b);

// R on the whole line. Profiles are specified on [0, lambda] and extended by
// R(t) = 0 for t >= lambda and R(-t) = R(t) - t for t < 0.
class AngleProfile {
public:
    // R(t) = -(lambda - t)^2 / (4 lambda) on [0, lambda]: R'(0) = 1/2, R'' = -1/(2 lambda)
    static AngleProfile quadratic(double lambda);
    // samples (t_i, R_i, R'_i), t_0 = 0 < t_1 < ... = lambda; cubic Hermite in between
    static AngleProfile tabulated(const std::vector<double>& t, const std::vector<double>& R,
                                  const std::vector<double>& dR);

    double lambda() const;
    double R(double t) const;
    double dR(double t) const;
    double d2R(double t) const;
    bool is_tabulated() const;

    // R' >= 0 and R'' < 0 at every grid point of [0, lambda)
    bool is_concave(int grid = 1000) const;

    struct Impl;

private:
    std::shared_ptr<const Impl> impl_;
};

CotangentPoint sigma(const CotangentPoint& pt, double t, const Tolerances& tol = default_tolerances());
CotangentPoint model_twist(const CotangentPoint& pt, const AngleProfile& prof,
                           const Tolerances& tol = default_tolerances());
// sigma_{-2 pi R'(|u|)}, antipodal on the zero section
CotangentPoint model_twist_inverse(const CotangentPoint& pt, const AngleProfile& prof,
                                   const Tolerances& tol = default_tolerances());

double spherical_distance(const RealVec& a, const RealVec& b);

// the unique point of tau(F_0) cap F_1, F_i = {|u| <= lambda} in the fiber over y_i
CotangentPoint fiber_intersection(const RealVec& y0, const RealVec& y1, const AngleProfile& prof,
                                  const Tolerances& tol = default_tolerances());

double area_K(double mu, const AngleProfile& prof);

}  // namespace hsi
