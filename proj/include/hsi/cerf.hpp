#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "hsi/cobordism.hpp"
#include "hsi/correspondence.hpp"
#include "hsi/hsi_calc.hpp"
#include "hsi/smith.hpp"

namespace hsi {

struct CobWord {
    int genus = 0;  // genus of the incoming surface
    std::vector<ElemCob> pieces;

    // genus at each cut level, size pieces.size() + 1
    std::vector<int> genera() const;
    int target_genus() const { return genera().back(); }
    void validate() const;
    bool operator==(const CobWord&) const = default;
};

enum class MoveKind {
    CylinderCreate,     // insert a zero-class cylinder before piece `position`
    CylinderCancel,     // remove the zero-class cylinder at `position`
    CriticalCreate,     // insert Handle1(co-curve beta_p) . Handle2(alpha_p) before `position`, p = pair
    CriticalCancel,     // replace the zero-class birth-death pair at position, position+1 by a cylinder
    CriticalSwitch,     // swap two adjacent zero-class 2-handles
    ClassSlide,         // replace the classes of pieces position, position+1 by (first, second)
    DiffeoEquivalence,  // replace the piece at position by an equivalent one
};

const char* move_name(MoveKind k);

struct CerfMove {
    MoveKind kind = MoveKind::CylinderCreate;
    std::size_t position = 0;
    int pair = 0;             // CriticalCreate
    ClassBits first, second;  // ClassSlide
    ElemCob replacement;      // DiffeoEquivalence
};

CobWord apply_move(const CobWord& w, const CerfMove& m);

// greedy cancellation of zero-class cylinders and zero-class birth-death pairs
CobWord normalize(const CobWord& w);

// classes of a piece on the basis of the surface after `sub`: sign pattern pushed through the substitution
ClassBits push_class(const Substitution& sub, const ClassBits& source_bits);

// sum of all class bits pushed to the outgoing surface (killed pairs dropped, new pairs zero-padded)
ClassBits class_total(const CobWord& w);

std::vector<Correspondence> to_correspondences(const CobWord& w);
// left-to-right composite; NotComposable if the word leaves the closed-form fragment
Correspondence compose_word(const CobWord& w);

struct Family;

struct LensFamily {
    std::int64_t p = 1, q = 1;
};
struct S2xS1Family {};
struct ConnectedSumFamily {
    std::vector<Family> parts;
};
// linear chains only
struct PlumbingFamily {
    PlumbingTree tree;
};

struct Family {
    std::variant<LensFamily, S2xS1Family, ConnectedSumFamily, PlumbingFamily> v;
};

// twists realising an SL(2,Z) element whose alpha column abelianizes to (p, -q); genus 1
Substitution lens_gluing(std::int64_t p, std::int64_t q);

// genus-0 to genus-0 word: Handle1 pieces, one Diffeo, Handle2 pieces
CobWord heegaard_word(const Family& f);

// relations among the free handle parameters of a closed word, abelianized: one row per 2-handle
IntMatrix presentation_matrix(const CobWord& w);

}  // namespace hsi
