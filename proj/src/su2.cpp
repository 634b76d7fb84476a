#include "hsi/su2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hsi/error.hpp"

namespace hsi {

Tolerances& default_tolerances() {
    static Tolerances t;
    return t;
}

double Su2Vector::euclidean() const { return std::sqrt(x * x + y * y + z * z); }

double Su2Vector::norm() const { return std::numbers::sqrt2 * euclidean(); }

double distance(const Su2Vector& a, const Su2Vector& b) { return (a - b).norm(); }

SU2Element::SU2Element(double w, double x, double y, double z) {
    double n = std::sqrt(w * w + x * x + y * y + z * z);
    if (!(n > 0)) fail(Errc::InvalidPoint, "zero quaternion is not in SU(2)");
    q_ = {w / n, x / n, y / n, z / n};
}

SU2Element SU2Element::operator*(const SU2Element& o) const {
    const auto& a = q_;
    const auto& b = o.q_;
    return SU2Element(a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                      a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                      a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                      a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]);
}

SU2Element SU2Element::operator-() const {
    SU2Element r;
    r.q_ = {-q_[0], -q_[1], -q_[2], -q_[3]};
    return r;
}

SU2Element SU2Element::inverse() const {
    SU2Element r;
    r.q_ = {q_[0], -q_[1], -q_[2], -q_[3]};
    return r;
}

std::array<std::array<std::complex<double>, 2>, 2> SU2Element::to_matrix() const {
    using C = std::complex<double>;
    // w + xi + yj + zk -> [[w+iz, -y+ix], [y+ix, w-iz]]
    return {{{C(w(), z()), C(-y(), x())}, {C(y(), x()), C(w(), -z())}}};
}

double distance(const SU2Element& a, const SU2Element& b) {
    double s = 0;
    for (int i = 0; i < 4; ++i) {
        double d = a.coords()[i] - b.coords()[i];
        s += d * d;
    }
    return std::sqrt(s);
}

SU2Element exp(const Su2Vector& xi) {
    double r = xi.euclidean();
    if (r < 1e-8) {
        // sin(r)/r = 1 - r^2/6 + O(r^4)
        double s = 1 - r * r / 6;
        return SU2Element(1 - r * r / 2, s * xi.x, s * xi.y, s * xi.z);
    }
    double s = std::sin(r) / r;
    return SU2Element(std::cos(r), s * xi.x, s * xi.y, s * xi.z);
}

Su2Vector log(const SU2Element& g, const Tolerances& tol) {
    if (distance(g, SU2Element::minus_identity()) < tol.relation)
        fail(Errc::SingularLog, "log is undefined at -I");
    double v = std::sqrt(g.x() * g.x() + g.y() * g.y() + g.z() * g.z());
    double r = std::atan2(v, g.w());  // in [0, pi)
    // r = asin(v) near the identity, so r/v = 1 + v^2/6 + ...
    double s = (g.w() > 0 && v < 1e-8) ? 1 + v * v / 6 : r / v;
    return {s * g.x(), s * g.y(), s * g.z()};
}

SU2Element commutator(const SU2Element& a, const SU2Element& b) {
    return a * b * a.inverse() * b.inverse();
}

SU2Element conjugate(const SU2Element& g, const SU2Element& h) { return g * h * g.inverse(); }

Su2Vector adjoint(const SU2Element& g, const Su2Vector& xi) {
    // rotate the pure quaternion directly; avoids exp/log round trips
    double w = g.w(), x = g.x(), y = g.y(), z = g.z();
    double r00 = 1 - 2 * (y * y + z * z), r01 = 2 * (x * y - w * z), r02 = 2 * (x * z + w * y);
    double r10 = 2 * (x * y + w * z), r11 = 1 - 2 * (x * x + z * z), r12 = 2 * (y * z - w * x);
    double r20 = 2 * (x * z - w * y), r21 = 2 * (y * z + w * x), r22 = 1 - 2 * (x * x + y * y);
    return {r00 * xi.x + r01 * xi.y + r02 * xi.z, r10 * xi.x + r11 * xi.y + r12 * xi.z,
            r20 * xi.x + r21 * xi.y + r22 * xi.z};
}

double conjugacy_angle(const SU2Element& g) { return std::acos(std::clamp(g.w(), -1.0, 1.0)); }

double cut_radius() { return std::numbers::pi * std::numbers::sqrt2; }

SU2Element haar_sample(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0, 1);
    for (;;) {
        double w = n(rng), x = n(rng), y = n(rng), z = n(rng);
        if (w * w + x * x + y * y + z * z > 1e-12) return SU2Element(w, x, y, z);
    }
}

Su2Vector algebra_sample(std::mt19937_64& rng, double max_norm) {
    std::normal_distribution<double> n(0, 1);
    std::uniform_real_distribution<double> u(0, 1);
    Su2Vector d;
    double e = 0;
    while (e < 1e-12) {
        d = {n(rng), n(rng), n(rng)};
        e = d.euclidean();
    }
    double target = u(rng) * max_norm;  // in the sqrt(2)-scaled norm
    return d * (target / (std::numbers::sqrt2 * e));
}

}  // namespace hsi
