#include <random>

#include "doctest.h"
#include "hsi/error.hpp"
#include "hsi/words.hpp"

using namespace hsi;

namespace {

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return Errc::Schema;
}

Word random_word(std::mt19937_64& rng, int n, int len) {
    std::uniform_int_distribution<int> g(0, n - 1), e(0, 1);
    std::vector<Letter> ls;
    for (int i = 0; i < len; ++i) ls.push_back({g(rng), e(rng) ? 1 : -1});
    return Word(ls);
}

}  // namespace

TEST_CASE("free reduction") {
    Word w({{0, 1}, {1, 1}, {1, -1}, {0, -1}, {2, 1}});
    CHECK(w.reduced() == Word::gen(2));
    CHECK(w.reduced().is_reduced());
    std::mt19937_64 rng(4);
    for (int i = 0; i < 500; ++i) {
        Word r = random_word(rng, 4, 12);
        Word once = r.reduced();
        CHECK(once.reduced() == once);
        CHECK(once.size() <= r.size());
        auto pt = HolonomyPoint::random(2, rng);
        CHECK(distance(evaluate(r, pt), evaluate(once, pt)) < 1e-12);
    }
}

TEST_CASE("evaluate") {
    std::mt19937_64 rng(8);
    auto pt = HolonomyPoint::random(2, rng);
    CHECK(distance(evaluate(Word(), pt), SU2Element::identity()) < 1e-15);
    Word c({{0, 1}, {1, 1}, {0, -1}, {1, -1}});
    CHECK(distance(evaluate(c, pt), commutator(pt.A(0), pt.B(0))) < 1e-14);
    for (int i = 0; i < 200; ++i) {
        Word a = random_word(rng, 4, 6), b = random_word(rng, 4, 6);
        CHECK(distance(evaluate(a * b, pt), evaluate(a, pt) * evaluate(b, pt)) < 1e-12);
    }
    CHECK(code_of([&] { evaluate(Word::gen(4), pt); }) == Errc::UnknownGenerator);
}

TEST_CASE("boundary word") {
    CHECK(boundary_word(1).to_string() == "a1 b1 a1^-1 b1^-1");
    CHECK(boundary_word(2).size() == 8);
    CHECK(boundary_word(3).is_reduced());
    CHECK(code_of([] { boundary_word(0); }) == Errc::InvalidGenus);
    std::mt19937_64 rng(12);
    for (int h = 1; h <= 3; ++h)
        for (int i = 0; i < 100; ++i) {
            auto pt = HolonomyPoint::random(h, rng);
            SU2Element prod;
            for (int k = 0; k < h; ++k) prod = prod * commutator(pt.A(k), pt.B(k));
            CHECK(distance(evaluate(boundary_word(h), pt), prod) < 1e-12);
            CHECK(distance(boundary_holonomy(pt), prod) < 1e-12);
            for (int k = 0; k < h; ++k) pt.B(k) = SU2Element::identity();
            CHECK(distance(evaluate(boundary_word(h), pt), SU2Element::identity()) < 1e-12);
        }
}

TEST_CASE("signed and text forms") {
    Word w({{0, 1}, {3, -1}});
    CHECK(w.to_signed() == std::vector<int>{1, -4});
    CHECK(Word::from_signed({1, -4}) == w);
    CHECK(w.to_string() == "a1 b2^-1");
    CHECK(CurveId::parse("b2") == CurveId{CurveId::Side::Beta, 1});
    CHECK(CurveId::parse("alpha1") == CurveId{CurveId::Side::Alpha, 0});
    CHECK(code_of([] { CurveId::parse("c1"); }) == Errc::UnsupportedCurve);
}

TEST_CASE("twist substitutions") {
    auto tb = twist_substitution(CurveId::parse("b1"), 1);
    CHECK(tb.image(0) == Word({{0, 1}, {1, 1}}));
    CHECK(tb.image(1) == Word::gen(1));
    auto ta = twist_substitution(CurveId::parse("a1"), 1);
    CHECK(ta.image(1) == Word({{1, 1}, {0, -1}}));
    CHECK(code_of([] { twist_substitution(CurveId::parse("a3"), 2); }) == Errc::UnsupportedCurve);

    auto id = Substitution::identity(2);
    std::mt19937_64 rng(21);
    for (int i = 0; i < 50; ++i) {
        Word w = random_word(rng, 4, 8).reduced();
        CHECK(id.apply(w) == w);
    }
    for (int h = 1; h <= 3; ++h)
        for (int k = 0; k < 2 * h; ++k) {
            CurveId c{k % 2 ? CurveId::Side::Beta : CurveId::Side::Alpha, k / 2};
            for (int power : {1, -1, 3}) {
                auto s = twist_substitution(c, h, power);
                // boundary fixed exactly as a word for standard twists
                CHECK(s.apply(boundary_word(h)) == boundary_word(h));
            }
        }
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        auto pt = HolonomyPoint::random(1, rng);
        worst = std::max(worst, distance(evaluate(tb.apply(boundary_word(1)), pt), evaluate(boundary_word(1), pt)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("substitution composition and abelianization") {
    auto s1 = twist_substitution(CurveId::parse("b1"), 1);
    auto s2 = twist_substitution(CurveId::parse("a1"), 1);
    auto both = s1.then(s2);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        auto pt = HolonomyPoint::random(1, rng);
        auto seq = s2.apply(s1.apply(pt));
        auto direct = both.apply(pt);
        for (int k = 0; k < 2; ++k) CHECK(distance(seq.hol[k], direct.hol[k]) < 1e-12);
    }
    auto m = s1.abelian_matrix();
    CHECK(m == std::vector<std::vector<long long>>{{1, 0}, {1, 1}});
    auto mb = both.abelian_matrix();
    auto m2 = s2.abelian_matrix();
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) CHECK(mb[r][c] == m[r][0] * m2[0][c] + m[r][1] * m2[1][c]);
    CHECK(Substitution::identity(3).is_identity());
    CHECK_FALSE(s1.is_identity());
}
