#include "hsi/words.hpp"

#include <cctype>
#include <sstream>

#include "hsi/error.hpp"

namespace hsi {

Word Word::reduced() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (const auto& l : letters_) {
        if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
    return Word(std::move(out));
}

bool Word::is_reduced() const {
    for (std::size_t i = 1; i < letters_.size(); ++i)
        if (letters_[i].gen == letters_[i - 1].gen && letters_[i].exp == -letters_[i - 1].exp)
            return false;
    return true;
}

Word Word::inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (auto& l : out) l.exp = -l.exp;
    return Word(std::move(out));
}

Word Word::power(int n) const {
    Word base = n < 0 ? inverse() : *this;
    std::vector<Letter> out;
    for (int i = 0; i < std::abs(n); ++i)
        out.insert(out.end(), base.letters_.begin(), base.letters_.end());
    return Word(std::move(out)).reduced();
}

Word Word::operator*(const Word& o) const {
    std::vector<Letter> out = letters_;
    out.insert(out.end(), o.letters_.begin(), o.letters_.end());
    return Word(std::move(out)).reduced();
}

std::vector<long long> Word::abelianize(int n) const {
    std::vector<long long> v(n, 0);
    for (const auto& l : letters_) {
        if (l.gen < 0 || l.gen >= n)
            fail(Errc::UnknownGenerator, "generator " + std::to_string(l.gen) + " out of range");
        v[l.gen] += l.exp;
    }
    return v;
}

std::vector<int> Word::to_signed() const {
    std::vector<int> v;
    v.reserve(letters_.size());
    for (const auto& l : letters_) v.push_back(l.exp * (l.gen + 1));
    return v;
}

Word Word::from_signed(const std::vector<int>& v) {
    std::vector<Letter> out;
    out.reserve(v.size());
    for (int s : v) {
        if (s == 0) fail(Errc::UnknownGenerator, "0 is not a valid signed generator");
        out.push_back({std::abs(s) - 1, s > 0 ? 1 : -1});
    }
    return Word(std::move(out));
}

std::string Word::to_string() const {
    if (letters_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        const auto& l = letters_[i];
        if (i) os << ' ';
        os << (l.gen % 2 == 0 ? 'a' : 'b') << (l.gen / 2 + 1);
        if (l.exp < 0) os << "^-1";
    }
    return os.str();
}

Word boundary_word(int h) {
    if (h < 1) fail(Errc::InvalidGenus, "boundary word needs genus >= 1");
    std::vector<Letter> out;
    for (int i = 0; i < h; ++i) {
        out.push_back({alpha_gen(i), 1});
        out.push_back({beta_gen(i), 1});
        out.push_back({alpha_gen(i), -1});
        out.push_back({beta_gen(i), -1});
    }
    return Word(std::move(out));
}

HolonomyPoint::HolonomyPoint(std::vector<SU2Element> h) : hol(std::move(h)) {
    if (hol.size() % 2) fail(Errc::InvalidGenus, "holonomy list must have even length");
    genus = static_cast<int>(hol.size() / 2);
}

HolonomyPoint HolonomyPoint::random(int h, std::mt19937_64& rng) {
    std::vector<SU2Element> v;
    for (int i = 0; i < 2 * h; ++i) v.push_back(haar_sample(rng));
    return HolonomyPoint(std::move(v));
}

SU2Element evaluate(const Word& w, const std::vector<SU2Element>& values) {
    SU2Element r;
    const int n = static_cast<int>(values.size());
    for (const auto& l : w.letters()) {
        if (l.gen < 0 || l.gen >= n)
            fail(Errc::UnknownGenerator,
                 "generator " + std::to_string(l.gen) + " not in a point with " + std::to_string(n) +
                     " holonomies");
        r = r * (l.exp > 0 ? values[l.gen] : values[l.gen].inverse());
    }
    return r;
}

SU2Element evaluate(const Word& w, const HolonomyPoint& pt) { return evaluate(w, pt.hol); }

SU2Element boundary_holonomy(const HolonomyPoint& pt) {
    SU2Element r;
    for (int i = 0; i < pt.genus; ++i) r = r * commutator(pt.A(i), pt.B(i));
    return r;
}

std::string CurveId::name() const {
    return (side == Side::Alpha ? "a" : "b") + std::to_string(pair + 1);
}

CurveId CurveId::parse(const std::string& s) {
    std::string head, tail;
    std::size_t i = 0;
    while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) head += s[i++];
    tail = s.substr(i);
    Side side;
    if (head == "a" || head == "alpha")
        side = Side::Alpha;
    else if (head == "b" || head == "beta")
        side = Side::Beta;
    else
        fail(Errc::UnsupportedCurve, "not a standard curve: '" + s + "'");
    if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos || tail.size() > 6)
        fail(Errc::UnsupportedCurve, "not a standard curve: '" + s + "'");
    int idx = std::stoi(tail);
    if (idx < 1) fail(Errc::UnsupportedCurve, "curve indices start at 1: '" + s + "'");
    return {side, idx - 1};
}

Word substitute(const Word& w, const std::vector<Word>& images) {
    std::vector<Letter> out;
    const int n = static_cast<int>(images.size());
    for (const auto& l : w.letters()) {
        if (l.gen < 0 || l.gen >= n)
            fail(Errc::UnknownGenerator, "generator " + std::to_string(l.gen) + " has no image");
        const Word& img = l.exp > 0 ? images[l.gen] : images[l.gen].inverse();
        out.insert(out.end(), img.letters().begin(), img.letters().end());
    }
    return Word(std::move(out)).reduced();
}

Substitution::Substitution(int genus, std::vector<Word> images)
    : genus_(genus), images_(std::move(images)) {
    if (genus < 0) fail(Errc::InvalidGenus, "negative genus");
    if (static_cast<int>(images_.size()) != 2 * genus)
        fail(Errc::InvalidParams, "substitution needs one image per generator");
    for (auto& w : images_) {
        for (const auto& l : w.letters())
            if (l.gen < 0 || l.gen >= 2 * genus)
                fail(Errc::UnknownGenerator, "substitution image uses generator " + std::to_string(l.gen));
        w = w.reduced();
    }
}

Substitution Substitution::identity(int genus) {
    std::vector<Word> im;
    for (int g = 0; g < 2 * genus; ++g) im.push_back(Word::gen(g));
    return Substitution(genus, std::move(im));
}

std::vector<SU2Element> Substitution::apply(const std::vector<SU2Element>& x) const {
    std::vector<SU2Element> out;
    out.reserve(images_.size());
    for (const auto& w : images_) out.push_back(evaluate(w, x));
    return out;
}

HolonomyPoint Substitution::apply(const HolonomyPoint& x) const {
    if (x.genus != genus_) fail(Errc::GenusMismatch, "substitution genus differs from point genus");
    return HolonomyPoint(apply(x.hol));
}

Substitution Substitution::then(const Substitution& next) const {
    if (next.genus_ != genus_) fail(Errc::GenusMismatch, "cannot chain substitutions of different genus");
    std::vector<Word> im;
    for (const auto& w : next.images_) im.push_back(apply(w));
    return Substitution(genus_, std::move(im));
}

bool Substitution::is_identity() const { return *this == identity(genus_); }

std::vector<std::vector<long long>> Substitution::abelian_matrix() const {
    const int n = 2 * genus_;
    std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
    for (int k = 0; k < n; ++k) {
        auto col = images_[k].abelianize(n);
        for (int r = 0; r < n; ++r) m[r][k] = col[r];
    }
    return m;
}

Substitution twist_substitution(const CurveId& curve, int h, int power) {
    if (h < 1) fail(Errc::InvalidGenus, "twists need genus >= 1");
    if (curve.pair < 0 || curve.pair >= h)
        fail(Errc::UnsupportedCurve, "curve " + curve.name() + " is not a standard curve of genus " +
                                         std::to_string(h));
    auto s = Substitution::identity(h);
    std::vector<Word> im = s.images();
    const int a = alpha_gen(curve.pair), b = beta_gen(curve.pair);
    if (curve.side == CurveId::Side::Beta)
        im[a] = Word::gen(a) * Word::gen(b).power(power);
    else
        im[b] = Word::gen(b) * Word::gen(a).power(-power);
    return Substitution(h, std::move(im));
}

}  // namespace hsi
