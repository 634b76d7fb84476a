#include "hsi/twist_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>

#include "hsi/error.hpp"

namespace hsi {

namespace {

double dot(const RealVec& a, const RealVec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const RealVec& a) { return std::sqrt(dot(a, a)); }

struct Quadratic {
    double lambda;
    double R(double t) const { return -(lambda - t) * (lambda - t) / (4 * lambda); }
    double dR(double t) const { return (lambda - t) / (2 * lambda); }
    double d2R(double) const { return -1 / (2 * lambda); }
};

struct Table {
    std::vector<double> t, R, dR;

    std::size_t segment(double x) const {
        auto it = std::upper_bound(t.begin(), t.end(), x);
        std::size_t i = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
        return std::min(i, t.size() - 2);
    }
    // cubic Hermite basis on segment i, derivative order k
    double eval(double x, int k) const {
        std::size_t i = segment(x);
        double h = t[i + 1] - t[i];
        double s = (x - t[i]) / h;
        double p0 = R[i], p1 = R[i + 1], m0 = dR[i] * h, m1 = dR[i + 1] * h;
        if (k == 0) {
            double h00 = 2 * s * s * s - 3 * s * s + 1, h10 = s * s * s - 2 * s * s + s;
            double h01 = -2 * s * s * s + 3 * s * s, h11 = s * s * s - s * s;
            return h00 * p0 + h10 * m0 + h01 * p1 + h11 * m1;
        }
        if (k == 1) {
            double h00 = 6 * s * s - 6 * s, h10 = 3 * s * s - 4 * s + 1;
            double h01 = -6 * s * s + 6 * s, h11 = 3 * s * s - 2 * s;
            return (h00 * p0 + h10 * m0 + h01 * p1 + h11 * m1) / h;
        }
        double h00 = 12 * s - 6, h10 = 6 * s - 4, h01 = -12 * s + 6, h11 = 6 * s - 2;
        return (h00 * p0 + h10 * m0 + h01 * p1 + h11 * m1) / (h * h);
    }
};

}  // namespace

struct AngleProfile::Impl {
    std::variant<Quadratic, Table> f;
    double lambda;

    // k-th derivative on [0, lambda]
    double base(double t, int k) const {
        return std::visit(
            [&](const auto& g) -> double {
                using G = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<G, Quadratic>) {
                    return k == 0 ? g.R(t) : k == 1 ? g.dR(t) : g.d2R(t);
                } else {
                    return g.eval(t, k);
                }
            },
            f);
    }
    double value(double t, int k) const {
        if (t >= lambda) return 0;
        if (t >= 0) return base(t, k);
        // R(t) = R(-t) + t for t < 0
        double s = -t;
        if (k == 0) return value(s, 0) + t;
        if (k == 1) return 1 - value(s, 1);
        return value(s, 2);
    }
};

AngleProfile AngleProfile::quadratic(double lambda) {
    if (!(lambda > 0)) fail(Errc::InvalidProfile, "lambda must be positive");
    AngleProfile p;
    p.impl_ = std::make_shared<Impl>(Impl{Quadratic{lambda}, lambda});
    return p;
}

AngleProfile AngleProfile::tabulated(const std::vector<double>& t, const std::vector<double>& R,
                                     const std::vector<double>& dR) {
    if (t.size() < 2 || R.size() != t.size() || dR.size() != t.size())
        fail(Errc::InvalidProfile, "profile table needs at least two rows of (t, R, R')");
    if (t.front() != 0) fail(Errc::InvalidProfile, "profile table must start at t = 0");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) fail(Errc::InvalidProfile, "profile abscissae must increase strictly");
    if (std::abs(R.back()) > 1e-9 || std::abs(dR.back()) > 1e-9)
        fail(Errc::InvalidProfile, "R and R' must vanish at the last sample (the support radius)");
    if (std::abs(dR.front() - 0.5) > 1e-9) fail(Errc::InvalidProfile, "R'(0) must be 1/2");
    AngleProfile p;
    p.impl_ = std::make_shared<Impl>(Impl{Table{t, R, dR}, t.back()});
    return p;
}

double AngleProfile::lambda() const { return impl_->lambda; }
double AngleProfile::R(double t) const { return impl_->value(t, 0); }
double AngleProfile::dR(double t) const { return impl_->value(t, 1); }
double AngleProfile::d2R(double t) const { return impl_->value(t, 2); }
bool AngleProfile::is_tabulated() const { return std::holds_alternative<Table>(impl_->f); }

bool AngleProfile::is_concave(int grid) const {
    for (int i = 0; i < grid; ++i) {
        double t = lambda() * i / grid;
        if (dR(t) < 0 || !(d2R(t) < 0)) return false;
    }
    return true;
}

double CotangentPoint::constraint_residual() const {
    return std::max(std::abs(norm(v) - 1), std::abs(dot(u, v)));
}

double distance(const CotangentPoint& a, const CotangentPoint& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.u.size(); ++i) s += (a.u[i] - b.u[i]) * (a.u[i] - b.u[i]);
    for (std::size_t i = 0; i < a.v.size(); ++i) s += (a.v[i] - b.v[i]) * (a.v[i] - b.v[i]);
    return std::sqrt(s);
}

CotangentPoint sigma(const CotangentPoint& pt, double t, const Tolerances& tol) {
    double r = norm(pt.u);
    if (r <= tol.arithmetic) fail(Errc::ZeroSection, "sigma is undefined on the zero section");
    double c = std::cos(t), s = std::sin(t);
    CotangentPoint out{RealVec(pt.u.size()), RealVec(pt.v.size())};
    for (std::size_t i = 0; i < pt.u.size(); ++i) {
        out.u[i] = c * pt.u[i] - s * r * pt.v[i];
        out.v[i] = c * pt.v[i] + s * pt.u[i] / r;
    }
    return out;
}

static CotangentPoint twist_with_sign(const CotangentPoint& pt, const AngleProfile& prof, double sign,
                                      const Tolerances& tol) {
    double r = norm(pt.u);
    if (r >= prof.lambda()) return pt;
    if (r <= tol.arithmetic) {
        CotangentPoint out{RealVec(pt.u.size(), 0.0), pt.v};
        for (auto& x : out.v) x = -x;
        return out;
    }
    return sigma(pt, sign * 2 * std::numbers::pi * prof.dR(r), tol);
}

CotangentPoint model_twist(const CotangentPoint& pt, const AngleProfile& prof, const Tolerances& tol) {
    return twist_with_sign(pt, prof, 1, tol);
}

CotangentPoint model_twist_inverse(const CotangentPoint& pt, const AngleProfile& prof,
                                   const Tolerances& tol) {
    return twist_with_sign(pt, prof, -1, tol);
}

double spherical_distance(const RealVec& a, const RealVec& b) {
    // atan2 form is accurate near 0 and pi
    double c = dot(a, b);
    RealVec w(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) w[i] = b[i] - c * a[i];
    return std::atan2(norm(w), c);
}

CotangentPoint fiber_intersection(const RealVec& y0, const RealVec& y1, const AngleProfile& prof,
                                  const Tolerances& tol) {
    if (y0.size() != y1.size() || y0.size() < 2)
        fail(Errc::InvalidParams, "fiber endpoints must be unit vectors of equal dimension >= 2");
    if (std::abs(norm(y0) - 1) > tol.solver || std::abs(norm(y1) - 1) > tol.solver)
        fail(Errc::InvalidParams, "fiber endpoints must be unit vectors");
    const double pi = std::numbers::pi;
    const double d = spherical_distance(y0, y1);
    if (d > 2 * pi * prof.dR(0) + tol.solver)
        fail(Errc::NoSolution, "distance exceeds the maximal twist angle");

    const std::size_t m = y0.size();
    // unit tangent at y0 pointing to y1
    RealVec w(m);
    double c = dot(y0, y1);
    for (std::size_t i = 0; i < m; ++i) w[i] = y1[i] - c * y0[i];
    double wn = norm(w);
    if (wn < 1e-14) {
        if (c < 0) return {RealVec(m, 0.0), y1};  // antipodal: zero section
        // y0 = y1: any tangent direction at the support edge
        std::size_t k = 0;
        for (std::size_t i = 1; i < m; ++i)
            if (std::abs(y0[i]) < std::abs(y0[k])) k = i;
        w.assign(m, 0.0);
        w[k] = 1;
        double p = dot(w, y0);
        for (std::size_t i = 0; i < m; ++i) w[i] -= p * y0[i];
        wn = norm(w);
        for (auto& x : w) x /= wn;
        RealVec u(m);
        for (std::size_t i = 0; i < m; ++i) u[i] = prof.lambda() * w[i];
        return {u, y0};
    }
    for (auto& x : w) x /= wn;

    // 2 pi R'(s) decreases from pi to 0 on [0, lambda]
    double lo = 0, hi = prof.lambda();
    auto f = [&](double s) { return 2 * pi * prof.dR(s) - d; };
    for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, prof.lambda()); ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    double s = 0.5 * (lo + hi);
    if (std::abs(f(s)) > tol.solver) fail(Errc::NoSolution, "bisection did not reach the solver tolerance");
    // tau(s w, y0) = (s (cos d w - sin d y0), cos d y0 + sin d w)
    CotangentPoint z{RealVec(m), RealVec(y1)};
    double cd = std::cos(d), sd = std::sin(d);
    for (std::size_t i = 0; i < m; ++i) z.u[i] = s * (cd * w[i] - sd * y0[i]);
    return z;
}

double area_K(double mu, const AngleProfile& prof) {
    if (mu < 0) fail(Errc::InvalidParams, "area_K needs mu >= 0");
    return 2 * std::numbers::pi * (prof.dR(mu) * mu - prof.R(mu));
}

}  // namespace hsi
