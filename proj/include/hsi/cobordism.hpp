#pragma once

#include <cstdint>
#include <vector>

#include "hsi/words.hpp"

namespace hsi {

using ClassBits = std::vector<std::uint8_t>;  // Z/2 coefficients on a generator basis

// An elementary cobordism with vertical boundary, with a Z/2 homology class.
// Class bits are indexed by surface generators:
//   Cylinder, Diffeo, Reparam, Handle2: generators of the source surface;
//   Handle1: generators of the target surface.
// For the handles the bit of the curve that bounds a disc in the piece is zero in H_1
// and is cleared by canonical().
struct ElemCob {
    enum class Kind { Cylinder, Handle1, Handle2, Diffeo, Reparam };

    Kind kind = Kind::Cylinder;
    int genus = 0;       // source genus
    CurveId curve;       // Handle1: co-curve (trivial side) of the new pair; Handle2: attaching curve
    Substitution sub;    // Diffeo
    double angle = 0;    // Reparam
    ClassBits class_bits;

    static ElemCob cylinder(int h, ClassBits c = {});
    static ElemCob diffeo(Substitution s, ClassBits c = {});
    static ElemCob reparam(int h, double angle, ClassBits c = {});
    static ElemCob handle1(int h, CurveId co_curve, ClassBits c = {});
    static ElemCob handle2(int h, CurveId attached, ClassBits c = {});

    int source_genus() const { return genus; }
    int target_genus() const;
    int class_size() const;
    bool zero_class() const;
    ElemCob canonical() const;
    void validate() const;
    bool operator==(const ElemCob&) const = default;
};

const char* kind_name(ElemCob::Kind k);

// sign of each generator: A_i flips with the b_i bit, B_i with the a_i bit
std::vector<int> class_signs(const ClassBits& c);

}  // namespace hsi
