#pragma once

#include <random>
#include <string>
#include <vector>

#include "hsi/su2.hpp"

namespace hsi {

// Generator 2i is alpha_{i+1}, generator 2i+1 is beta_{i+1}.
inline int alpha_gen(int pair) { return 2 * pair; }
inline int beta_gen(int pair) { return 2 * pair + 1; }

struct Letter {
    int gen = 0;
    int exp = 1;  // +1 or -1
    bool operator==(const Letter&) const = default;
};

class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
    static Word gen(int g, int exp = 1) { return Word({Letter{g, exp}}); }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    Word reduced() const;
    bool is_reduced() const;
    Word inverse() const;
    Word power(int n) const;
    // free product: concatenation followed by reduction
    Word operator*(const Word& o) const;
    bool operator==(const Word&) const = default;

    // exponent sum of each generator, indexed 0..n-1
    std::vector<long long> abelianize(int n) const;

    // JSON form: generator g with exponent e is written e*(g+1)
    std::vector<int> to_signed() const;
    static Word from_signed(const std::vector<int>& v);
    std::string to_string() const;

private:
    std::vector<Letter> letters_;
};

Word boundary_word(int h);

struct HolonomyPoint {
    int genus = 0;
    std::vector<SU2Element> hol;  // A_1, B_1, ..., A_h, B_h

    HolonomyPoint() = default;
    explicit HolonomyPoint(std::vector<SU2Element> h);
    const SU2Element& A(int pair) const { return hol.at(alpha_gen(pair)); }
    const SU2Element& B(int pair) const { return hol.at(beta_gen(pair)); }
    SU2Element& A(int pair) { return hol.at(alpha_gen(pair)); }
    SU2Element& B(int pair) { return hol.at(beta_gen(pair)); }

    static HolonomyPoint random(int h, std::mt19937_64& rng);
};

SU2Element evaluate(const Word& w, const std::vector<SU2Element>& values);
SU2Element evaluate(const Word& w, const HolonomyPoint& pt);
// prod_i [A_i, B_i]
SU2Element boundary_holonomy(const HolonomyPoint& pt);

// A standard curve alpha_i or beta_i (pair is 0-based, names are 1-based: "a1", "b2").
struct CurveId {
    enum class Side { Alpha, Beta };
    Side side = Side::Alpha;
    int pair = 0;

    int gen() const { return side == Side::Alpha ? alpha_gen(pair) : beta_gen(pair); }
    CurveId dual() const { return {side == Side::Alpha ? Side::Beta : Side::Alpha, pair}; }
    std::string name() const;
    static CurveId parse(const std::string& s);
    bool operator==(const CurveId&) const = default;
};

// replace every letter g^e of w by images[g]^e and reduce
Word substitute(const Word& w, const std::vector<Word>& images);

// Action of a surface map on the free group: generator k goes to images[k].
// On holonomies: (S.X)_k = evaluate(images[k], X).
class Substitution {
public:
    Substitution() = default;
    Substitution(int genus, std::vector<Word> images);
    static Substitution identity(int genus);

    int genus() const { return genus_; }
    const std::vector<Word>& images() const { return images_; }
    const Word& image(int g) const { return images_.at(g); }

    Word apply(const Word& w) const { return substitute(w, images_); }
    std::vector<SU2Element> apply(const std::vector<SU2Element>& x) const;
    HolonomyPoint apply(const HolonomyPoint& x) const;
    // the map "this, then next" on holonomy points
    Substitution then(const Substitution& next) const;
    bool is_identity() const;
    bool operator==(const Substitution&) const = default;

    // integer matrix of the induced map on H_1: column k = abelianized images[k]
    std::vector<std::vector<long long>> abelian_matrix() const;

private:
    int genus_ = 0;
    std::vector<Word> images_;
};

// power +1: beta_i twist sends alpha_i -> alpha_i beta_i, alpha_i twist sends beta_i -> beta_i alpha_i^-1
Substitution twist_substitution(const CurveId& curve, int h, int power = 1);

}  // namespace hsi
