#include "hsi/cobordism.hpp"

#include <algorithm>

#include "hsi/error.hpp"

namespace hsi {

const char* kind_name(ElemCob::Kind k) {
    switch (k) {
        case ElemCob::Kind::Cylinder: return "cylinder";
        case ElemCob::Kind::Handle1: return "handle1";
        case ElemCob::Kind::Handle2: return "handle2";
        case ElemCob::Kind::Diffeo: return "diffeo";
        case ElemCob::Kind::Reparam: return "reparam";
    }
    return "?";
}

std::vector<int> class_signs(const ClassBits& c) {
    std::vector<int> s(c.size(), 1);
    for (std::size_t i = 0; i + 1 < c.size(); i += 2) {
        if (c[i + 1]) s[i] = -1;  // b_i bit flips A_i
        if (c[i]) s[i + 1] = -1;  // a_i bit flips B_i
    }
    return s;
}

static ElemCob finish(ElemCob e) {
    e = e.canonical();
    e.validate();
    return e;
}

ElemCob ElemCob::cylinder(int h, ClassBits c) {
    ElemCob e;
    e.kind = Kind::Cylinder;
    e.genus = h;
    e.class_bits = std::move(c);
    return finish(std::move(e));
}

ElemCob ElemCob::diffeo(Substitution s, ClassBits c) {
    ElemCob e;
    e.kind = Kind::Diffeo;
    e.genus = s.genus();
    e.sub = std::move(s);
    e.class_bits = std::move(c);
    return finish(std::move(e));
}

ElemCob ElemCob::reparam(int h, double angle, ClassBits c) {
    ElemCob e;
    e.kind = Kind::Reparam;
    e.genus = h;
    e.angle = angle;
    e.class_bits = std::move(c);
    return finish(std::move(e));
}

ElemCob ElemCob::handle1(int h, CurveId co_curve, ClassBits c) {
    ElemCob e;
    e.kind = Kind::Handle1;
    e.genus = h;
    e.curve = co_curve;
    e.class_bits = std::move(c);
    return finish(std::move(e));
}

ElemCob ElemCob::handle2(int h, CurveId attached, ClassBits c) {
    ElemCob e;
    e.kind = Kind::Handle2;
    e.genus = h;
    e.curve = attached;
    e.class_bits = std::move(c);
    return finish(std::move(e));
}

int ElemCob::target_genus() const {
    if (kind == Kind::Handle1) return genus + 1;
    if (kind == Kind::Handle2) return genus - 1;
    return genus;
}

int ElemCob::class_size() const { return 2 * (kind == Kind::Handle1 ? genus + 1 : genus); }

bool ElemCob::zero_class() const {
    return std::all_of(class_bits.begin(), class_bits.end(), [](std::uint8_t b) { return b == 0; });
}

ElemCob ElemCob::canonical() const {
    ElemCob e = *this;
    if (e.class_bits.empty()) e.class_bits.assign(std::max(0, class_size()), 0);
    for (auto& b : e.class_bits) b = b ? 1 : 0;
    if ((kind == Kind::Handle1 || kind == Kind::Handle2) && curve.gen() < static_cast<int>(e.class_bits.size()))
        e.class_bits[curve.gen()] = 0;
    if (kind != Kind::Diffeo) e.sub = Substitution();
    if (kind != Kind::Reparam) e.angle = 0;
    if (kind != Kind::Handle1 && kind != Kind::Handle2) e.curve = CurveId{};
    return e;
}

void ElemCob::validate() const {
    if (genus < 0) fail(Errc::InvalidGenus, "negative genus");
    if (static_cast<int>(class_bits.size()) != class_size())
        fail(Errc::InvalidParams, std::string(kind_name(kind)) + " piece of genus " + std::to_string(genus) +
                                      " needs " + std::to_string(class_size()) + " class bits, got " +
                                      std::to_string(class_bits.size()));
    switch (kind) {
        case Kind::Handle2:
            if (genus < 1) fail(Errc::InvalidGenus, "a 2-handle needs source genus >= 1");
            if (curve.pair < 0 || curve.pair >= genus)
                fail(Errc::UnsupportedCurve, "attaching curve " + curve.name() + " is not a standard curve");
            break;
        case Kind::Handle1:
            if (curve.pair < 0 || curve.pair > genus)
                fail(Errc::UnsupportedCurve, "new pair index out of range for " + curve.name());
            break;
        case Kind::Diffeo:
            if (sub.genus() != genus) fail(Errc::GenusMismatch, "substitution genus differs from piece genus");
            break;
        default: break;
    }
}

}  // namespace hsi
