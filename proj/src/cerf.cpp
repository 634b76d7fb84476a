#include "hsi/cerf.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "hsi/error.hpp"

namespace hsi {

namespace {

using Side = CurveId::Side;

[[noreturn]] void mismatch(const CerfMove& m, const std::string& why) {
    fail(Errc::PatternMismatch, std::string(move_name(m.kind)) + " at " + std::to_string(m.position) + ": " + why);
}

ClassBits add(ClassBits a, const ClassBits& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
    return a;
}

ClassBits drop_pair(const ClassBits& c, int pair) {
    ClassBits out;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (static_cast<int>(i) / 2 != pair) out.push_back(c[i]);
    return out;
}

ClassBits insert_pair(ClassBits c, int pair) {
    c.insert(c.begin() + 2 * pair, 2, 0);
    return c;
}

bool is_zero_cylinder(const ElemCob& e) { return e.kind == ElemCob::Kind::Cylinder && e.zero_class(); }

bool birth_death(const ElemCob& a, const ElemCob& b) {
    return a.kind == ElemCob::Kind::Handle1 && b.kind == ElemCob::Kind::Handle2 && a.zero_class() &&
           b.zero_class() && b.genus == a.genus + 1 && b.curve == a.curve.dual();
}

// both classes of a (cylinder, piece) pair on one basis, bits that do not reach the correspondence cleared
ClassBits slide_sum(const ElemCob& x, const ElemCob& y) {
    const bool cyl_first = x.kind == ElemCob::Kind::Cylinder;
    const ElemCob& cyl = cyl_first ? x : y;
    const ElemCob& w = cyl_first ? y : x;
    switch (w.kind) {
        case ElemCob::Kind::Cylinder:
        case ElemCob::Kind::Reparam:
            return add(cyl.class_bits, w.class_bits);
        case ElemCob::Kind::Diffeo:
            if (cyl_first) return add(cyl.class_bits, w.class_bits);
            return add(push_class(w.sub, w.class_bits), cyl.class_bits);
        case ElemCob::Kind::Handle2: {
            ClassBits c = cyl_first ? cyl.class_bits : insert_pair(cyl.class_bits, w.curve.pair);
            c = add(c, w.class_bits);
            c[w.curve.gen()] = 0;
            return c;
        }
        case ElemCob::Kind::Handle1: {
            ClassBits c = cyl_first ? insert_pair(cyl.class_bits, w.curve.pair) : cyl.class_bits;
            c = add(c, w.class_bits);
            c[w.curve.gen()] = 0;
            return c;
        }
    }
    return {};
}

ElemCob with_bits(ElemCob e, ClassBits c) {
    e.class_bits = std::move(c);
    e = e.canonical();
    e.validate();
    return e;
}

CerfMove make_move(MoveKind k, std::size_t pos) {
    CerfMove m;
    m.kind = k;
    m.position = pos;
    return m;
}

bool equivalent_pieces(const ElemCob& a, const ElemCob& b) {
    if (a == b) return true;
    auto trivial_graph = [](const ElemCob& e) {
        return (e.kind == ElemCob::Kind::Diffeo && e.sub.is_identity()) ||
               (e.kind == ElemCob::Kind::Reparam && e.angle == 0) || e.kind == ElemCob::Kind::Cylinder;
    };
    return a.genus == b.genus && a.class_bits == b.class_bits && trivial_graph(a) && trivial_graph(b);
}

}  // namespace

const char* move_name(MoveKind k) {
    switch (k) {
        case MoveKind::CylinderCreate: return "cylinder-create";
        case MoveKind::CylinderCancel: return "cylinder-cancel";
        case MoveKind::CriticalCreate: return "critical-create";
        case MoveKind::CriticalCancel: return "critical-cancel";
        case MoveKind::CriticalSwitch: return "critical-switch";
        case MoveKind::ClassSlide: return "class-slide";
        case MoveKind::DiffeoEquivalence: return "diffeo-equivalence";
    }
    return "?";
}

std::vector<int> CobWord::genera() const {
    std::vector<int> g{genus};
    for (const auto& p : pieces) g.push_back(p.target_genus());
    return g;
}

void CobWord::validate() const {
    if (genus < 0) fail(Errc::InvalidGenus, "negative genus");
    int g = genus;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (pieces[i].genus != g)
            fail(Errc::GenusMismatch, "piece " + std::to_string(i) + " starts at genus " +
                                          std::to_string(pieces[i].genus) + ", previous level has genus " +
                                          std::to_string(g));
        pieces[i].validate();
        g = pieces[i].target_genus();
    }
}

ClassBits push_class(const Substitution& sub, const ClassBits& c) {
    const int n = 2 * sub.genus();
    if (static_cast<int>(c.size()) != n) fail(Errc::InvalidParams, "class size does not match the substitution");
    // class bits -> sign bits (a_i flips B_i, b_i flips A_i), push, and back
    std::vector<int> sigma(n);
    for (int i = 0; i < n; ++i) sigma[i] = c[i ^ 1];
    const auto M = sub.abelian_matrix();
    std::vector<int> out(n, 0);
    for (int k = 0; k < n; ++k) {
        long long s = 0;
        for (int g = 0; g < n; ++g) s += M[g][k] * sigma[g];
        out[k] = static_cast<int>(((s % 2) + 2) % 2);
    }
    ClassBits r(n);
    for (int i = 0; i < n; ++i) r[i] = static_cast<std::uint8_t>(out[i ^ 1]);
    return r;
}

ClassBits class_total(const CobWord& w) {
    w.validate();
    ClassBits t(2 * w.genus, 0);
    for (const auto& p : w.pieces) {
        switch (p.kind) {
            case ElemCob::Kind::Cylinder:
            case ElemCob::Kind::Reparam:
                t = add(t, p.class_bits);
                break;
            case ElemCob::Kind::Diffeo:
                t = push_class(p.sub, add(t, p.class_bits));
                break;
            case ElemCob::Kind::Handle2:
                t = drop_pair(add(t, p.class_bits), p.curve.pair);
                break;
            case ElemCob::Kind::Handle1:
                t = add(insert_pair(t, p.curve.pair), p.class_bits);
                break;
        }
    }
    return t;
}

CobWord apply_move(const CobWord& w, const CerfMove& m) {
    w.validate();
    const auto gen = w.genera();
    const std::size_t n = w.pieces.size();
    CobWord out = w;
    auto& P = out.pieces;
    const auto pos = static_cast<long>(m.position);
    auto need_pair = [&] {
        if (m.position + 1 >= n) mismatch(m, "needs two pieces starting here, word has " + std::to_string(n));
    };
    switch (m.kind) {
        case MoveKind::CylinderCreate:
            if (m.position > n) mismatch(m, "position past the end of the word");
            P.insert(P.begin() + pos, ElemCob::cylinder(gen[m.position]));
            break;
        case MoveKind::CylinderCancel:
            if (m.position >= n) mismatch(m, "no piece at this position");
            if (!is_zero_cylinder(P[m.position])) mismatch(m, "piece is not a zero-class cylinder");
            P.erase(P.begin() + pos);
            break;
        case MoveKind::CriticalCreate: {
            if (m.position > n) mismatch(m, "position past the end of the word");
            const int h = gen[m.position];
            if (m.pair < 0 || m.pair > h) mismatch(m, "new pair index out of range");
            ElemCob birth = ElemCob::handle1(h, CurveId{Side::Beta, m.pair});
            ElemCob death = ElemCob::handle2(h + 1, CurveId{Side::Alpha, m.pair});
            P.insert(P.begin() + pos, {birth, death});
            break;
        }
        case MoveKind::CriticalCancel:
            need_pair();
            if (!birth_death(P[m.position], P[m.position + 1]))
                mismatch(m, "pieces are not a zero-class 1-handle followed by a 2-handle along the dual curve");
            P.erase(P.begin() + pos, P.begin() + pos + 2);
            P.insert(P.begin() + pos, ElemCob::cylinder(gen[m.position]));
            break;
        case MoveKind::CriticalSwitch: {
            need_pair();
            const ElemCob& a = P[m.position];
            const ElemCob& b = P[m.position + 1];
            if (a.kind != ElemCob::Kind::Handle2 || b.kind != ElemCob::Kind::Handle2)
                mismatch(m, "both pieces must be 2-handles");
            if (!a.zero_class() || !b.zero_class()) mismatch(m, "both 2-handles must carry the zero class");
            const int h = a.genus;
            const int q2 = b.curve.pair < a.curve.pair ? b.curve.pair : b.curve.pair + 1;
            const int p1 = a.curve.pair < q2 ? a.curve.pair : a.curve.pair - 1;
            ElemCob first = ElemCob::handle2(h, CurveId{b.curve.side, q2});
            ElemCob second = ElemCob::handle2(h - 1, CurveId{a.curve.side, p1});
            P[m.position] = first;
            P[m.position + 1] = second;
            break;
        }
        case MoveKind::ClassSlide: {
            need_pair();
            const ElemCob& a = P[m.position];
            const ElemCob& b = P[m.position + 1];
            if (a.kind != ElemCob::Kind::Cylinder && b.kind != ElemCob::Kind::Cylinder)
                mismatch(m, "one of the two pieces must be a cylinder");
            if (static_cast<int>(m.first.size()) != a.class_size() || static_cast<int>(m.second.size()) != b.class_size())
                mismatch(m, "new classes have the wrong size");
            ElemCob na = with_bits(a, m.first);
            ElemCob nb = with_bits(b, m.second);
            if (slide_sum(a, b) != slide_sum(na, nb)) mismatch(m, "class sums c_i + c_i+1 and d_i + d_i+1 differ");
            P[m.position] = na;
            P[m.position + 1] = nb;
            break;
        }
        case MoveKind::DiffeoEquivalence: {
            if (m.position >= n) mismatch(m, "no piece at this position");
            ElemCob r = m.replacement.canonical();
            r.validate();
            if (!equivalent_pieces(P[m.position], r))
                mismatch(m, "replacement is not equivalent by relabeling (" + std::string(kind_name(P[m.position].kind)) +
                                " -> " + kind_name(r.kind) + ")");
            P[m.position] = r;
            break;
        }
    }
    out.validate();
    return out;
}

CobWord normalize(const CobWord& w) {
    CobWord cur = w;
    cur.validate();
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < cur.pieces.size() && !changed; ++i) {
            if (is_zero_cylinder(cur.pieces[i])) {
                cur = apply_move(cur, make_move(MoveKind::CylinderCancel, i));
                changed = true;
            } else if (i + 1 < cur.pieces.size() && birth_death(cur.pieces[i], cur.pieces[i + 1])) {
                cur = apply_move(cur, make_move(MoveKind::CriticalCancel, i));
                changed = true;
            }
        }
    }
    return cur;
}

std::vector<Correspondence> to_correspondences(const CobWord& w) {
    w.validate();
    std::vector<Correspondence> out;
    for (const auto& p : w.pieces) out.push_back(elementary(p));
    return out;
}

Correspondence compose_word(const CobWord& w) {
    Correspondence c = Correspondence::identity(w.genus);
    for (const auto& e : to_correspondences(w)) c = compose(c, e);
    return c;
}

Substitution lens_gluing(std::int64_t p, std::int64_t q) {
    if (std::gcd(p, q) != 1) fail(Errc::InvalidParams, "gcd(p, q) must be 1");
    // peel twists off the left until (p, -q) becomes (1, 0)
    std::vector<std::pair<Side, std::int64_t>> twists;
    std::int64_t x = p, y = -q;
    while (!(x == 1 && y == 0)) {
        if (x == -1 && y == 0) {
            twists.insert(twists.end(), {{Side::Beta, 1}, {Side::Alpha, 2}, {Side::Beta, 1}});
            break;
        }
        if (x == 1) {
            twists.push_back({Side::Beta, y});
            y = 0;
        } else if (x == 0) {
            twists.push_back({Side::Alpha, y});
            x = 1;
        } else if (std::llabs(x) > std::llabs(y)) {
            const std::int64_t k = -(x / y);
            twists.push_back({Side::Alpha, k});
            x += k * y;
        } else {
            const std::int64_t k = y / x;
            twists.push_back({Side::Beta, k});
            y -= k * x;
        }
    }
    Substitution s = Substitution::identity(1);
    for (auto [side, k] : twists) {
        if (k == 0) continue;
        s = s.then(twist_substitution(CurveId{side, 0}, 1, static_cast<int>(k)));
    }
    return s;
}

namespace {

struct HeegaardData {
    int g = 0;
    std::vector<Side> co_curves;
    Substitution sub;
    std::vector<Side> attached;
};

HeegaardData heegaard_data(const Family& f);

HeegaardData lens_data(std::int64_t p, std::int64_t q) {
    if (p < 0) fail(Errc::InvalidParams, "lens space needs p >= 0");
    return {1, {Side::Beta}, lens_gluing(p, q), {Side::Alpha}};
}

HeegaardData chain_data(const PlumbingTree& t) {
    const int n = static_cast<int>(t.weights.size());
    if (n == 0) fail(Errc::UnsupportedFamily, "empty plumbing graph");
    if (static_cast<int>(t.edges.size()) != n - 1) fail(Errc::UnsupportedFamily, "plumbing graph is not a chain");
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : t.edges) {
        if (a < 0 || b < 0 || a >= n || b >= n || a == b) fail(Errc::UnsupportedFamily, "bad plumbing edge");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    int start = 0;
    for (int v = 0; v < n; ++v) {
        if (adj[v].size() > 2) fail(Errc::UnsupportedFamily, "only linear chains have a built-in splitting");
        if (adj[v].size() <= 1) start = v;
    }
    std::vector<int> order{start};
    for (int prev = -1, v = start; static_cast<int>(order.size()) < n;) {
        int next = -1;
        for (int u : adj[v])
            if (u != prev) next = u;
        if (next < 0) fail(Errc::UnsupportedFamily, "plumbing graph is not connected");
        prev = v;
        v = next;
        order.push_back(v);
    }
    // continuants of the chain read from either end: det of the tridiagonal matrix
    auto continuant = [&](std::size_t from) {
        std::int64_t a = 1, b = 0;  // K_{-1}, K_{-2}
        for (std::size_t i = from; i < order.size(); ++i) {
            std::int64_t c = checked_add(checked_mul(t.weights[order[i]], a), -b);
            b = a;
            a = c;
        }
        return a;
    };
    std::int64_t p = continuant(0), q = continuant(1);
    if (p < 0) {
        p = -p;
        q = -q;
    }
    if (p == 0) return {1, {Side::Beta}, Substitution::identity(1), {Side::Beta}};
    return lens_data(p, q);
}

HeegaardData heegaard_data(const Family& f) {
    if (const auto* l = std::get_if<LensFamily>(&f.v)) return lens_data(l->p, l->q);
    if (std::holds_alternative<S2xS1Family>(f.v)) return {1, {Side::Beta}, Substitution::identity(1), {Side::Beta}};
    if (const auto* pl = std::get_if<PlumbingFamily>(&f.v)) return chain_data(pl->tree);
    const auto& cs = std::get<ConnectedSumFamily>(f.v);
    if (cs.parts.empty()) fail(Errc::UnsupportedFamily, "connected sum of nothing");
    HeegaardData out;
    std::vector<Word> images;
    for (const auto& part : cs.parts) {
        HeegaardData d = heegaard_data(part);
        const int shift = 2 * out.g;
        for (const Word& img : d.sub.images()) {
            std::vector<Letter> ls = img.letters();
            for (auto& l : ls) l.gen += shift;
            images.emplace_back(std::move(ls));
        }
        out.co_curves.insert(out.co_curves.end(), d.co_curves.begin(), d.co_curves.end());
        out.attached.insert(out.attached.end(), d.attached.begin(), d.attached.end());
        out.g += d.g;
    }
    out.sub = Substitution(out.g, std::move(images));
    return out;
}

}  // namespace

CobWord heegaard_word(const Family& f) {
    HeegaardData d = heegaard_data(f);
    CobWord w;
    w.genus = 0;
    for (int k = 0; k < d.g; ++k) w.pieces.push_back(ElemCob::handle1(k, CurveId{d.co_curves[k], k}));
    w.pieces.push_back(ElemCob::diffeo(d.sub));
    // pair 0 is always the next one to close off
    for (int k = 0; k < d.g; ++k) w.pieces.push_back(ElemCob::handle2(d.g - k, CurveId{d.attached[k], 0}));
    w.validate();
    return w;
}

IntMatrix presentation_matrix(const CobWord& w) {
    w.validate();
    if (w.genus != 0 || w.target_genus() != 0) fail(Errc::InvalidParams, "presentation matrix needs a closed word");
    std::vector<Stage> stages;
    for (const auto& c : to_correspondences(w)) stages.insert(stages.end(), c.stages().begin(), c.stages().end());
    SymbolicRun run = run_symbolic(0, stages);
    IntMatrix m;
    for (const auto& cnd : run.conditions) {
        auto ab = cnd.w.abelianize(run.n_params);
        m.emplace_back(ab.begin(), ab.end());
    }
    return m;
}

}  // namespace hsi
