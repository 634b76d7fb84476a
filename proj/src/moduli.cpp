#include "hsi/moduli.hpp"

#include <algorithm>
#include <cmath>

#include "hsi/error.hpp"

namespace hsi {

double ModuliPoint::relation_residual() const {
    return distance(exp(theta), boundary_holonomy(hol));
}

bool ModuliPoint::in_chart() const { return theta.norm() < cut_radius(); }

void ModuliPoint::validate(const Tolerances& tol) const {
    if (!in_chart()) fail(Errc::InvalidPoint, "|theta| must be below pi*sqrt(2)");
    double r = relation_residual();
    if (r > tol.relation)
        fail(Errc::InvalidPoint, "exp(theta) differs from the boundary product by " + std::to_string(r));
}

ModuliPoint ModuliPoint::from_holonomies(HolonomyPoint h, const Tolerances& tol) {
    SU2Element p = boundary_holonomy(h);
    return {log(p, tol), std::move(h)};
}

ModuliPoint ModuliPoint::random(int h, std::mt19937_64& rng) {
    for (;;) {
        auto hp = HolonomyPoint::random(h, rng);
        if (h == 0 || distance(boundary_holonomy(hp), SU2Element::minus_identity()) > 1e-6)
            return from_holonomies(std::move(hp));
    }
}

double distance(const ModuliPoint& a, const ModuliPoint& b) {
    if (a.genus() != b.genus()) return INFINITY;
    double d = distance(a.theta, b.theta);
    for (std::size_t i = 0; i < a.hol.hol.size(); ++i) d = std::max(d, distance(a.hol.hol[i], b.hol.hol[i]));
    return d;
}

static SU2Element extra_product(const std::vector<SU2Element>& extra) {
    SU2Element r;
    for (std::size_t i = 0; i + 1 < extra.size(); i += 2) r = r * commutator(extra[i], extra[i + 1]);
    return r;
}

double CutModuliPoint::relation_residual() const {
    SU2Element rhs = A1 * exp(b1) * A1.inverse() * A2.inverse() * exp(-b2) * A2 * extra_product(extra);
    return distance(exp(g), rhs);
}

void CutModuliPoint::validate(const Tolerances& tol) const {
    if (extra.size() % 2) fail(Errc::InvalidPoint, "extra holonomies must come in pairs");
    const double rmax = cut_radius();
    if (g.norm() >= rmax || b1.norm() >= rmax || b2.norm() >= rmax)
        fail(Errc::InvalidPoint, "g, b1, b2 must have norm below pi*sqrt(2)");
    double r = relation_residual();
    if (r > tol.relation) fail(Errc::InvalidPoint, "cut relation residual " + std::to_string(r));
}

double distance(const CutModuliPoint& a, const CutModuliPoint& b) {
    if (a.extra.size() != b.extra.size()) return INFINITY;
    double d = std::max({distance(a.g, b.g), distance(a.b1, b.b1), distance(a.b2, b.b2),
                         distance(a.A1, b.A1), distance(a.A2, b.A2)});
    for (std::size_t i = 0; i < a.extra.size(); ++i) d = std::max(d, distance(a.extra[i], b.extra[i]));
    return d;
}

Moments moments(const CutModuliPoint& pt) { return {pt.g, -pt.b1, pt.b2}; }

CutModuliPoint su2_action(const SU2Element& G, const CutModuliPoint& pt) {
    CutModuliPoint r = pt;
    r.A1 = pt.A1 * G.inverse();
    r.A2 = G * pt.A2;
    r.b1 = adjoint(G, pt.b1);
    r.b2 = adjoint(G, pt.b2);
    return r;
}

ModuliPoint glue(const CutModuliPoint& pt, const Tolerances& tol) {
    Moments m = moments(pt);
    if ((m.phi1 + m.phi2).norm() > tol.relation)
        fail(Errc::MomentNotZero, "glue needs b1 = b2; |phi1 + phi2| = " +
                                      std::to_string((m.phi1 + m.phi2).norm()));
    std::vector<SU2Element> h{pt.A1 * pt.A2, pt.A2.inverse() * exp(pt.b1) * pt.A2};
    h.insert(h.end(), pt.extra.begin(), pt.extra.end());
    return {pt.g, HolonomyPoint(std::move(h))};
}

CutModuliPoint unglue(const ModuliPoint& m, const Tolerances& tol) {
    if (m.genus() < 1) fail(Errc::InvalidGenus, "unglue needs genus >= 1");
    const SU2Element& Bt = m.hol.B(0);
    if (distance(Bt, SU2Element::minus_identity()) < tol.relation)
        fail(Errc::OnComplementCMinus, "B~ = -I lies in C-, outside the image of the reduction");
    CutModuliPoint c;
    c.g = m.theta;
    c.A1 = m.hol.A(0);
    c.A2 = SU2Element::identity();
    c.b1 = log(Bt, tol);
    c.b2 = c.b1;
    c.extra.assign(m.hol.hol.begin() + 2, m.hol.hol.end());
    return c;
}

CutModuliPoint flow(const CutModuliPoint& pt, double t) {
    CutModuliPoint r = pt;
    r.A1 = pt.A1 * exp(t * pt.b1);
    return r;
}

static CutModuliPoint solve_g(CutModuliPoint c) {
    SU2Element rhs = c.A1 * exp(c.b1) * c.A1.inverse() * c.A2.inverse() * exp(-c.b2) * c.A2 *
                     extra_product(c.extra);
    c.g = log(rhs);
    return c;
}

CutModuliPoint random_reduced_cut_point(int h, std::mt19937_64& rng) {
    if (h < 1) fail(Errc::InvalidGenus, "cut points need genus >= 1");
    for (;;) {
        CutModuliPoint c;
        c.A1 = haar_sample(rng);
        c.A2 = haar_sample(rng);
        c.b1 = algebra_sample(rng, 0.95 * cut_radius());
        c.b2 = c.b1;
        for (int i = 0; i < 2 * (h - 1); ++i) c.extra.push_back(haar_sample(rng));
        try {
            return solve_g(std::move(c));
        } catch (const Error&) {
        }
    }
}

CutModuliPoint random_cut_point(int h, std::mt19937_64& rng) {
    if (h < 1) fail(Errc::InvalidGenus, "cut points need genus >= 1");
    for (;;) {
        CutModuliPoint c;
        c.A1 = haar_sample(rng);
        c.A2 = haar_sample(rng);
        c.b1 = algebra_sample(rng, 0.95 * cut_radius());
        c.b2 = algebra_sample(rng, 0.95 * cut_radius());
        for (int i = 0; i < 2 * (h - 1); ++i) c.extra.push_back(haar_sample(rng));
        try {
            return solve_g(std::move(c));
        } catch (const Error&) {
        }
    }
}

}  // namespace hsi
