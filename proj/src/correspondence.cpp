#include "hsi/correspondence.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hsi/error.hpp"

namespace hsi {

namespace {

// c with sub(boundary) = c^-1 boundary c, or UnsupportedShape
Word boundary_conjugator(const Substitution& s) {
    const int h = s.genus();
    if (h == 0) return {};
    const Word d = boundary_word(h);
    const Word image = s.apply(d);
    const auto& L = image.letters();
    std::size_t i = 0, j = L.size();
    std::vector<Letter> peeled;  // outermost first
    while (j - i >= 2 && L[i].gen == L[j - 1].gen && L[i].exp == -L[j - 1].exp) {
        peeled.push_back(L[j - 1]);
        ++i;
        --j;
    }
    const std::vector<Letter> core(L.begin() + static_cast<long>(i), L.begin() + static_cast<long>(j));
    const auto& D = d.letters();
    if (core.size() == D.size()) {
        for (std::size_t k = 0; k < D.size(); ++k) {
            bool match = true;
            for (std::size_t t = 0; t < D.size() && match; ++t) match = core[t] == D[(k + t) % D.size()];
            if (!match) continue;
            Word x(std::vector<Letter>(D.begin(), D.begin() + static_cast<long>(k)));
            Word p(std::vector<Letter>(peeled.rbegin(), peeled.rend()));
            return x * p;
        }
    }
    fail(Errc::UnsupportedShape, "substitution does not fix the boundary word up to conjugation");
}

std::vector<int> ones(std::size_t n) { return std::vector<int>(n, 1); }

int letter_sign_product(const Word& w, const std::vector<int>& signs) {
    int s = 1;
    for (const auto& l : w.letters()) s *= signs[l.gen];
    return s;
}

bool mergeable(const GraphStep& a, const GraphStep& b) { return a.rotation == 0 || b.conjugator.empty(); }

GraphStep merge(const GraphStep& a, const GraphStep& b) {
    const int n = 2 * a.sub.genus();
    std::vector<int> signs(n);
    for (int k = 0; k < n; ++k) signs[k] = b.signs[k] * letter_sign_product(b.sub.image(k), a.signs);
    return GraphStep::make(a.sub.then(b.sub), std::move(signs), a.rotation + b.rotation);
}

std::vector<GraphStep> merge_steps(std::vector<GraphStep> steps) {
    std::vector<GraphStep> out;
    for (auto& s : steps) {
        if (!out.empty() && mergeable(out.back(), s))
            out.back() = merge(out.back(), s);
        else
            out.push_back(std::move(s));
    }
    return out;
}

ModuliPoint apply_step(const GraphStep& s, const ModuliPoint& x) {
    auto y = s.sub.apply(x.hol.hol);
    Su2Vector th = x.theta;
    if (!s.conjugator.empty()) th = adjoint(evaluate(s.conjugator, x.hol).inverse(), th);
    for (std::size_t k = 0; k < y.size(); ++k)
        if (s.signs[k] < 0) y[k] = -y[k];
    if (s.rotation != 0) {
        SU2Element R = exp(s.rotation * th);
        for (auto& e : y) e = conjugate(R, e);
    }
    return {th, HolonomyPoint(std::move(y))};
}

SU2Element signed_identity(int s) { return s > 0 ? SU2Element::identity() : SU2Element::minus_identity(); }

// positions of the source generators of a handle stage in its target
int handle_target_index(const HandleStage& h, int k) {
    const int p = h.curve.pair;
    if (h.index == 2) return k < 2 * p ? k : k - 2;  // k never in the removed pair here
    return k < 2 * p ? k : k + 2;
}

ModuliPoint apply_handle(const HandleStage& h, const ModuliPoint& x, const SU2Element& param, double& residual) {
    const int p = h.curve.pair;
    std::vector<SU2Element> y;
    if (h.index == 2) {
        residual = std::max(residual, distance(x.hol.hol[h.curve.gen()], signed_identity(h.sign)));
        for (int k = 0; k < 2 * h.genus; ++k)
            if (k / 2 != p) y.push_back(x.hol.hol[k]);
    } else {
        y = x.hol.hol;
        SU2Element triv = signed_identity(h.sign);
        bool alpha_trivial = h.curve.side == CurveId::Side::Alpha;
        y.insert(y.begin() + 2 * p, alpha_trivial ? param : triv);
        y.insert(y.begin() + 2 * p, alpha_trivial ? triv : param);
    }
    for (std::size_t k = 0; k < y.size(); ++k)
        if (h.residual_signs[k] < 0) y[k] = -y[k];
    return {x.theta, HolonomyPoint(std::move(y))};
}

}  // namespace

GraphStep GraphStep::make(Substitution sub, std::vector<int> signs, double rotation) {
    const std::size_t n = 2 * static_cast<std::size_t>(sub.genus());
    if (signs.empty()) signs = ones(n);
    if (signs.size() != n) fail(Errc::InvalidParams, "graph step needs one sign per generator");
    for (int s : signs)
        if (s != 1 && s != -1) fail(Errc::InvalidParams, "graph signs must be +1 or -1");
    GraphStep g;
    g.conjugator = boundary_conjugator(sub);
    g.sub = std::move(sub);
    g.signs = std::move(signs);
    g.rotation = rotation;
    return g;
}

int stage_source_genus(const Stage& s) {
    return std::visit([](const auto& x) { return x.genus; }, s);
}

int stage_target_genus(const Stage& s) {
    if (const auto* h = std::get_if<HandleStage>(&s)) return h->index == 2 ? h->genus - 1 : h->genus + 1;
    return std::get<GraphStage>(s).genus;
}

SymbolicRun run_symbolic(int source_genus, const std::vector<Stage>& stages) {
    SymbolicRun r;
    const int n0 = 2 * source_genus;
    std::vector<SymGen> st;
    for (int g = 0; g < n0; ++g) st.push_back({Word::gen(g), 1});
    for (const auto& stage : stages) {
        if (const auto* gs = std::get_if<GraphStage>(&stage)) {
            for (const auto& step : gs->steps) {
                std::vector<Word> words;
                std::vector<int> signs;
                for (const auto& s : st) {
                    words.push_back(s.w);
                    signs.push_back(s.sign);
                }
                std::vector<SymGen> next;
                for (int k = 0; k < static_cast<int>(st.size()); ++k) {
                    const Word& img = step.sub.image(k);
                    next.push_back({substitute(img, words), step.signs[k] * letter_sign_product(img, signs)});
                }
                st = std::move(next);
            }
            continue;
        }
        const auto& h = std::get<HandleStage>(stage);
        const int p = h.curve.pair;
        if (h.index == 2) {
            const SymGen& c = st[h.curve.gen()];
            r.conditions.push_back({c.w, h.sign * c.sign});
            st.erase(st.begin() + 2 * p, st.begin() + 2 * p + 2);
        } else {
            SymGen triv{Word(), h.sign};
            SymGen free{Word::gen(n0 + r.n_params++), 1};
            bool alpha_trivial = h.curve.side == CurveId::Side::Alpha;
            st.insert(st.begin() + 2 * p, alpha_trivial ? free : triv);
            st.insert(st.begin() + 2 * p, alpha_trivial ? triv : free);
        }
        for (std::size_t k = 0; k < st.size(); ++k) st[k].sign *= h.residual_signs[k];
    }
    r.final_state = std::move(st);
    return r;
}

Correspondence Correspondence::from_stages(int source_genus, std::vector<Stage> stages) {
    if (source_genus < 0) fail(Errc::InvalidGenus, "negative genus");
    Correspondence c;
    c.source_ = source_genus;
    int g = source_genus;
    for (const auto& s : stages) {
        if (stage_source_genus(s) != g)
            fail(Errc::GenusMismatch, "stage expects genus " + std::to_string(stage_source_genus(s)) + ", got " +
                                          std::to_string(g));
        if (const auto* h = std::get_if<HandleStage>(&s)) {
            if (h->index != 1 && h->index != 2) fail(Errc::UnsupportedShape, "handle index must be 1 or 2");
            if (h->sign != 1 && h->sign != -1) fail(Errc::InvalidParams, "handle sign must be +1 or -1");
            int bound = h->index == 2 ? h->genus - 1 : h->genus;
            if (h->curve.pair < 0 || h->curve.pair > bound)
                fail(Errc::UnsupportedCurve, "handle curve " + h->curve.name() + " out of range");
            if (static_cast<int>(h->residual_signs.size()) != 2 * stage_target_genus(s))
                fail(Errc::InvalidParams, "handle residual signs must cover the target generators");
        } else {
            for (const auto& step : std::get<GraphStage>(s).steps)
                if (step.sub.genus() != g) fail(Errc::GenusMismatch, "graph step genus mismatch");
        }
        g = stage_target_genus(s);
    }
    if (stages.empty()) stages.push_back(GraphStage{source_genus, {GraphStep::make(Substitution::identity(source_genus))}});
    c.target_ = g;
    c.stages_ = std::move(stages);
    c.analyze();
    return c;
}

void Correspondence::analyze() {
    const int n0 = 2 * source_;
    SymbolicRun run = run_symbolic(source_, stages_);
    pinned_.assign(run.n_params, std::nullopt);
    conditions_.clear();
    always_empty_ = false;

    auto strip = [&](const Word& w, int& sign) {
        std::vector<Letter> rest;
        for (const auto& l : w.letters()) {
            if (l.gen >= n0 && pinned_[l.gen - n0])
                sign *= *pinned_[l.gen - n0];
            else
                rest.push_back(l);
        }
        return Word(std::move(rest)).reduced();
    };
    auto has_param = [&](const Word& w) {
        return std::any_of(w.letters().begin(), w.letters().end(), [&](const Letter& l) { return l.gen >= n0; });
    };

    // conditions may pin parameters used by earlier ones, so iterate to a fixed point
    std::vector<SymCondition> pending = run.conditions;
    bool progress = true;
    while (progress && !pending.empty()) {
        progress = false;
        std::vector<SymCondition> keep;
        for (const auto& cnd : pending) {
            int target = cnd.target;
            Word w = strip(cnd.w, target);
            if (w.empty()) {
                if (target != 1) always_empty_ = true;
                progress = true;
            } else if (!has_param(w)) {
                conditions_.push_back({w, target});
                progress = true;
            } else if (w.size() == 1) {
                auto& slot = pinned_[w.letters()[0].gen - n0];
                if (slot && *slot != target) always_empty_ = true;
                slot = target;
                progress = true;
            } else {
                keep.push_back(cnd);
            }
        }
        pending = std::move(keep);
    }
    if (!pending.empty())
        fail(Errc::NotComposable, "a handle condition mixes a free handle parameter with other holonomies (" +
                                      pending.front().w.to_string() + "); not in the closed-form fragment");

    final_.clear();
    for (const auto& s : run.final_state) {
        int sign = s.sign;
        Word w = strip(s.w, sign);
        final_.push_back({w, sign});
    }
    effective_.clear();
    home_sign_.assign(run.n_params, 1);
    home_exp_.assign(run.n_params, 1);
    std::vector<int> home(run.n_params, -1);
    std::vector<bool> used(run.n_params, false);
    for (int k = 0; k < static_cast<int>(final_.size()); ++k) {
        for (const auto& l : final_[k].w.letters())
            if (l.gen >= n0) used[l.gen - n0] = true;
        if (final_[k].w.size() == 1 && final_[k].w.letters()[0].gen >= n0) {
            int p = final_[k].w.letters()[0].gen - n0;
            if (home[p] < 0) {
                home[p] = k;
                home_sign_[p] = final_[k].sign;
                home_exp_[p] = final_[k].w.letters()[0].exp;
            }
        }
    }
    for (int p = 0; p < run.n_params; ++p)
        if (used[p] && home[p] >= 0) effective_.push_back(p);
    std::sort(effective_.begin(), effective_.end(), [&](int a, int b) { return home[a] < home[b]; });
    for (int p = 0; p < run.n_params; ++p)
        if (used[p] && home[p] < 0) effective_.push_back(p);
}

std::vector<SU2Element> Correspondence::full_parameters(const std::vector<SU2Element>& eff) const {
    if (eff.size() != effective_.size()) fail(Errc::InvalidParams, "wrong number of effective parameters");
    std::vector<SU2Element> full(pinned_.size());
    for (std::size_t p = 0; p < pinned_.size(); ++p)
        if (pinned_[p]) full[p] = signed_identity(*pinned_[p]);
    for (std::size_t i = 0; i < effective_.size(); ++i) {
        int p = effective_[i];
        SU2Element q = home_exp_[p] > 0 ? eff[i] : eff[i].inverse();
        full[p] = home_sign_[p] > 0 ? q : -q;
    }
    return full;
}

Correspondence Correspondence::identity(int h) { return from_stages(h, {}); }

Correspondence Correspondence::graph(int h, std::vector<GraphStep> steps) {
    if (steps.empty()) return identity(h);
    return from_stages(h, {GraphStage{h, merge_steps(std::move(steps))}});
}

Correspondence Correspondence::sign_flip(const ClassBits& c) {
    if (c.size() % 2) fail(Errc::InvalidParams, "class vector must have even length");
    const int h = static_cast<int>(c.size() / 2);
    return graph(h, {GraphStep::make(Substitution::identity(h), class_signs(c))});
}

Correspondence Correspondence::handle2(int h, CurveId attached, int sign, std::vector<int> residual) {
    if (residual.empty()) residual = ones(2 * std::max(0, h - 1));
    return from_stages(h, {HandleStage{2, h, attached, sign, std::move(residual)}});
}

Correspondence Correspondence::handle1(int h, CurveId co_curve, int sign, std::vector<int> residual) {
    if (residual.empty()) residual = ones(2 * (h + 1));
    return from_stages(h, {HandleStage{1, h, co_curve, sign, std::move(residual)}});
}

Correspondence::Kind Correspondence::kind() const {
    if (stages_.size() != 1) return Kind::Composite;
    if (const auto* h = std::get_if<HandleStage>(&stages_[0])) return h->index == 2 ? Kind::Handle2 : Kind::Handle1;
    return Kind::Graph;
}

Correspondence elementary(const ElemCob& cob) {
    ElemCob e = cob.canonical();
    e.validate();
    const int h = e.genus;
    switch (e.kind) {
        case ElemCob::Kind::Cylinder:
            return Correspondence::sign_flip(e.class_bits);
        case ElemCob::Kind::Diffeo:
            return Correspondence::graph(h, {GraphStep::make(Substitution::identity(h), class_signs(e.class_bits)),
                                             GraphStep::make(e.sub)});
        case ElemCob::Kind::Reparam:
            return Correspondence::graph(h, {GraphStep::make(Substitution::identity(h), class_signs(e.class_bits), e.angle)});
        case ElemCob::Kind::Handle2: {
            auto signs = class_signs(e.class_bits);
            int eps = e.class_bits[e.curve.dual().gen()] ? -1 : 1;
            std::vector<int> residual;
            for (int k = 0; k < 2 * h; ++k)
                if (k / 2 != e.curve.pair) residual.push_back(signs[k]);
            return Correspondence::handle2(h, e.curve, eps, residual);
        }
        case ElemCob::Kind::Handle1: {
            auto signs = class_signs(e.class_bits);
            int eps = e.class_bits[e.curve.dual().gen()] ? -1 : 1;
            signs[2 * e.curve.pair] = 1;
            signs[2 * e.curve.pair + 1] = 1;
            return Correspondence::handle1(h, e.curve, eps, signs);
        }
    }
    fail(Errc::UnsupportedShape, "unknown cobordism kind");
}

Correspondence elementary(const ElemCob& cob, const ClassBits& class_bits) {
    ElemCob e = cob;
    e.class_bits = class_bits;
    return elementary(e);
}

Correspondence compose(const Correspondence& c1, const Correspondence& c2) {
    if (c1.target_genus() != c2.source_genus())
        fail(Errc::GenusMismatch, "cannot compose: target genus " + std::to_string(c1.target_genus()) +
                                      " differs from source genus " + std::to_string(c2.source_genus()));
    std::vector<Stage> stages = c1.stages();
    for (const auto& s : c2.stages()) {
        if (!stages.empty() && std::holds_alternative<GraphStage>(stages.back()) &&
            std::holds_alternative<GraphStage>(s)) {
            auto& g = std::get<GraphStage>(stages.back());
            auto steps = g.steps;
            const auto& more = std::get<GraphStage>(s).steps;
            steps.insert(steps.end(), more.begin(), more.end());
            g.steps = merge_steps(std::move(steps));
        } else {
            stages.push_back(s);
        }
    }
    return Correspondence::from_stages(c1.source_genus(), std::move(stages));
}

ChainTrace evaluate_chain(const Correspondence& c, const ModuliPoint& x, std::vector<SU2Element> params) {
    if (x.genus() != c.source_genus())
        fail(Errc::GenusMismatch, "point of genus " + std::to_string(x.genus()) + " given to a correspondence from genus " +
                                      std::to_string(c.source_genus()));
    if (params.size() < static_cast<std::size_t>(c.parameter_count())) params.resize(c.parameter_count());
    for (int p = 0; p < c.parameter_count(); ++p)
        if (c.pinned()[p]) params[p] = signed_identity(*c.pinned()[p]);
    ChainTrace t;
    t.levels.push_back(x);
    int next_param = 0;
    for (const auto& s : c.stages()) {
        ModuliPoint cur = t.levels.back();
        if (const auto* g = std::get_if<GraphStage>(&s)) {
            for (const auto& step : g->steps) cur = apply_step(step, cur);
        } else {
            const auto& h = std::get<HandleStage>(s);
            SU2Element param;
            if (h.index == 1) param = params[next_param++];
            cur = apply_handle(h, cur, param, t.worst_condition);
        }
        t.levels.push_back(std::move(cur));
    }
    return t;
}

ModuliPoint ImageSet::point() const {
    if (!is_singleton()) fail(Errc::InvalidParams, "image is not a single point");
    return at({});
}

ModuliPoint ImageSet::at(const std::vector<SU2Element>& eff) const {
    if (empty_) fail(Errc::InvalidParams, "image is empty");
    return evaluate_chain(corr_, source_, corr_.full_parameters(eff)).levels.back();
}

ModuliPoint ImageSet::sample(std::mt19937_64& rng) const {
    std::vector<SU2Element> eff;
    for (std::size_t i = 0; i < corr_.effective_parameters().size(); ++i) eff.push_back(haar_sample(rng));
    return at(eff);
}

ImageSet apply(const Correspondence& corr, const ModuliPoint& pt, const Tolerances& tol) {
    if (pt.genus() != corr.source_genus())
        fail(Errc::GenusMismatch, "point genus " + std::to_string(pt.genus()) + " but correspondence source genus " +
                                      std::to_string(corr.source_genus()));
    ImageSet s;
    s.corr_ = corr;
    s.source_ = pt;
    s.empty_ = corr.always_empty();
    for (const auto& c : corr.source_conditions()) {
        SU2Element v = evaluate(c.w, pt.hol);
        if (distance(v, signed_identity(c.target)) > tol.relation) s.empty_ = true;
    }
    return s;
}

double agree_on_samples(const Correspondence& a, const Correspondence& b, std::mt19937_64& rng, int samples,
                        const Tolerances&) {
    if (a.source_genus() != b.source_genus() || a.target_genus() != b.target_genus()) return INFINITY;
    if (a.always_empty() != b.always_empty()) return INFINITY;
    if (a.always_empty()) return 0;
    if (a.effective_parameters().size() != b.effective_parameters().size()) return INFINITY;
    if (a.source_conditions().size() != b.source_conditions().size()) return INFINITY;
    double err = 0;
    for (int s = 0; s < samples; ++s) {
        ModuliPoint x = ModuliPoint::random(a.source_genus(), rng);
        std::vector<SU2Element> q;
        for (std::size_t i = 0; i < a.effective_parameters().size(); ++i) q.push_back(haar_sample(rng));
        auto ya = evaluate_chain(a, x, a.full_parameters(q)).levels.back();
        auto yb = evaluate_chain(b, x, b.full_parameters(q)).levels.back();
        err = std::max(err, distance(ya, yb));
        // condition values target * w(X), matched as multisets
        std::vector<SU2Element> vb;
        for (const auto& c : b.source_conditions())
            vb.push_back(c.target > 0 ? evaluate(c.w, x.hol) : -evaluate(c.w, x.hol));
        std::vector<bool> taken(vb.size(), false);
        for (const auto& c : a.source_conditions()) {
            SU2Element va = c.target > 0 ? evaluate(c.w, x.hol) : -evaluate(c.w, x.hol);
            double best = INFINITY;
            std::size_t bi = 0;
            for (std::size_t i = 0; i < vb.size(); ++i)
                if (!taken[i] && distance(va, vb[i]) < best) {
                    best = distance(va, vb[i]);
                    bi = i;
                }
            if (!vb.empty()) taken[bi] = true;
            err = std::max(err, best);
        }
    }
    return err;
}

namespace {

void push_log(std::vector<double>& out, const SU2Element& g) {
    // residuals sit near I; far from it the plain coordinates are enough to register failure
    Su2Vector v = distance(g, SU2Element::minus_identity()) > 1e-6 ? log(g) : Su2Vector{10, 10, 10};
    out.push_back(v.x);
    out.push_back(v.y);
    out.push_back(v.z);
}

void stage_equations(const Stage& s, const HolonomyPoint& a, const HolonomyPoint& b, std::vector<double>& out) {
    if (const auto* g = std::get_if<GraphStage>(&s)) {
        SU2Element prod = boundary_holonomy(a);
        Su2Vector th = distance(prod, SU2Element::minus_identity()) > 1e-9 ? log(prod) : Su2Vector{};
        ModuliPoint cur{th, a};
        for (const auto& step : g->steps) cur = apply_step(step, cur);
        for (std::size_t k = 0; k < b.hol.size(); ++k) push_log(out, cur.hol.hol[k] * b.hol[k].inverse());
        return;
    }
    const auto& h = std::get<HandleStage>(s);
    auto sgn = [](int s, const SU2Element& e) { return s > 0 ? e : -e; };
    if (h.index == 2) {
        push_log(out, sgn(h.sign, a.hol[h.curve.gen()]));
        for (int k = 0; k < 2 * h.genus; ++k) {
            if (k / 2 == h.curve.pair) continue;
            int t = handle_target_index(h, k);
            push_log(out, sgn(h.residual_signs[t], a.hol[k]) * b.hol[t].inverse());
        }
    } else {
        int triv = h.curve.gen();
        push_log(out, sgn(h.sign * h.residual_signs[triv], b.hol[triv]));
        for (int k = 0; k < 2 * h.genus; ++k) {
            int t = handle_target_index(h, k);
            push_log(out, sgn(h.residual_signs[t], a.hol[k]) * b.hol[t].inverse());
        }
    }
}

std::vector<double> chain_equations(const Correspondence& c, const std::vector<HolonomyPoint>& levels) {
    std::vector<double> out;
    for (std::size_t i = 0; i < c.stages().size(); ++i) stage_equations(c.stages()[i], levels[i], levels[i + 1], out);
    return out;
}

struct JacobianInfo {
    double min_sv = 0;
    bool full_row_rank = false;
    double immersion = 0;
};

JacobianInfo analyze_jacobian(const Correspondence& c, const std::vector<HolonomyPoint>& levels) {
    // coordinate layout: level, holonomy, axis
    std::vector<std::size_t> offset;
    std::size_t ncols = 0;
    for (const auto& l : levels) {
        offset.push_back(ncols);
        ncols += 3 * l.hol.size();
    }
    const std::size_t nrows = chain_equations(c, levels).size();
    JacobianInfo info;
    if (nrows == 0) {
        info.full_row_rank = true;
        info.min_sv = INFINITY;
        info.immersion = INFINITY;
        return info;
    }
    Eigen::MatrixXd J(nrows, ncols);
    const double delta = 1e-6;
    for (std::size_t li = 0; li < levels.size(); ++li)
        for (std::size_t k = 0; k < levels[li].hol.size(); ++k)
            for (int ax = 0; ax < 3; ++ax) {
                Su2Vector e{ax == 0 ? delta : 0, ax == 1 ? delta : 0, ax == 2 ? delta : 0};
                auto plus = levels, minus = levels;
                plus[li].hol[k] = exp(e) * levels[li].hol[k];
                minus[li].hol[k] = exp(-e) * levels[li].hol[k];
                auto fp = chain_equations(c, plus), fm = chain_equations(c, minus);
                for (std::size_t r = 0; r < nrows; ++r) J(r, offset[li] + k * 3 + ax) = (fp[r] - fm[r]) / (2 * delta);
            }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv(0) : 0;
    const double cut = 1e-7 * std::max(1.0, smax);
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) ++rank;
    info.full_row_rank = rank == nrows;
    info.min_sv = nrows <= static_cast<std::size_t>(sv.size()) ? sv(static_cast<Eigen::Index>(nrows) - 1) : 0;
    // tangent space of the intersection, projected to the outer levels
    const std::size_t null_dim = ncols - rank;
    if (null_dim == 0) {
        info.immersion = INFINITY;
        return info;
    }
    Eigen::MatrixXd N = svd.matrixV().rightCols(static_cast<Eigen::Index>(null_dim));
    const std::size_t first = 3 * levels.front().hol.size();
    const std::size_t last = 3 * levels.back().hol.size();
    Eigen::MatrixXd P(first + last, null_dim);
    for (std::size_t r = 0; r < first; ++r) P.row(r) = N.row(r);
    for (std::size_t r = 0; r < last; ++r) P.row(first + r) = N.row(offset.back() + r);
    if (first + last < null_dim) {
        info.immersion = 0;
        return info;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> psvd(P);
    info.immersion = psvd.singularValues()(static_cast<Eigen::Index>(null_dim) - 1);
    return info;
}

}  // namespace

EmbeddednessReport embeddedness_check(const Correspondence& c1, const Correspondence& c2, int samples,
                                      std::uint64_t seed) {
    EmbeddednessReport rep;
    if (c1.target_genus() != c2.source_genus()) {
        rep.composable = false;
        rep.message = "genus mismatch between the two correspondences";
        return rep;
    }
    std::vector<Stage> stages = c1.stages();
    stages.insert(stages.end(), c2.stages().begin(), c2.stages().end());
    Correspondence chain;
    try {
        chain = Correspondence::from_stages(c1.source_genus(), std::move(stages));
    } catch (const Error& e) {
        rep.composable = false;
        rep.message = e.what();
        return rep;
    }
    if (chain.always_empty()) {
        rep.empty = true;
        rep.message = "empty intersection: a handle condition can never hold";
        return rep;
    }
    std::mt19937_64 rng(seed);
    rep.transverse = true;
    rep.injective = true;
    rep.min_singular_value = INFINITY;
    rep.immersion_margin = INFINITY;
    const int h0 = chain.source_genus();
    for (int s = 0; s < samples; ++s) {
        // a source point on the condition locus: only single-letter conditions can be imposed directly
        HolonomyPoint hp = HolonomyPoint::random(h0, rng);
        for (const auto& cnd : chain.source_conditions()) {
            if (cnd.w.size() != 1) {
                rep.message = "cannot sample the condition locus " + cnd.w.to_string();
                rep.transverse = rep.injective = false;
                return rep;
            }
            const auto& l = cnd.w.letters()[0];
            hp.hol[l.gen] = signed_identity(cnd.target);
        }
        if (h0 > 0 && distance(boundary_holonomy(hp), SU2Element::minus_identity()) < 1e-6) continue;
        ModuliPoint x = ModuliPoint::from_holonomies(hp);
        std::vector<SU2Element> params;
        for (int p = 0; p < chain.parameter_count(); ++p) params.push_back(haar_sample(rng));
        auto tr = evaluate_chain(chain, x, params);
        if (tr.worst_condition > 1e-9) continue;
        ++rep.samples_used;
        std::vector<HolonomyPoint> levels;
        for (const auto& l : tr.levels) levels.push_back(l.hol);
        auto info = analyze_jacobian(chain, levels);
        rep.transverse = rep.transverse && info.full_row_rank;
        rep.min_singular_value = std::min(rep.min_singular_value, info.min_sv);
        rep.immersion_margin = std::min(rep.immersion_margin, info.immersion);
        if (info.immersion < 1e-6) rep.injective = false;
        // a second intersection point over the same source: equal outer images must mean equal middles
        std::vector<SU2Element> params2;
        for (int p = 0; p < chain.parameter_count(); ++p) params2.push_back(haar_sample(rng));
        auto tr2 = evaluate_chain(chain, x, params2);
        if (distance(tr.levels.back(), tr2.levels.back()) < 1e-9) {
            for (std::size_t i = 1; i + 1 < tr.levels.size(); ++i)
                if (distance(tr.levels[i], tr2.levels[i]) > 1e-6) rep.injective = false;
        }
        if (chain.source_genus() == chain.target_genus()) {
            double d = distance(tr.levels.back(), tr.levels.front());
            rep.diagonal_error = std::max(rep.diagonal_error.value_or(0.0), d);
        }
    }
    if (rep.samples_used == 0) {
        rep.empty = true;
        rep.transverse = rep.injective = false;
        rep.message = "no sampled point lies on the intersection";
        return rep;
    }
    rep.pass = rep.transverse && rep.injective;
    if (rep.message.empty())
        rep.message = rep.pass ? "transverse and injective at all samples"
                               : (!rep.transverse ? "rank-deficient intersection equations" : "projection is not injective");
    return rep;
}

CleanIntersectionReport lens_intersection(std::int64_t p, std::int64_t q, int eps0, int eps1) {
    if ((eps0 != 1 && eps0 != -1) || (eps1 != 1 && eps1 != -1))
        fail(Errc::InvalidParams, "signs must be +1 or -1");
    if (p < 0) fail(Errc::InvalidParams, "p must be >= 0");
    if (std::gcd(p, q) != 1) fail(Errc::InvalidParams, "gcd(p, q) must be 1");
    CleanIntersectionReport r;
    if (p == 0) {
        // L0 = {B = eps0 I}, L1 = {B = eps1 I}
        if (eps0 == eps1) {
            r.n_three_spheres = 1;
            r.perturbed_count = 2;
        }
        return r;
    }
    // on L0, A^p = eps1 eps0^q I; eta = -1 shifts the angle by pi/p
    const int eta = eps1 * ((q % 2 != 0) ? eps0 : 1);
    const std::int64_t phase = eta > 0 ? 0 : 1;
    for (std::int64_t m = phase; m <= p; m += 2) {
        r.angles.push_back(std::numbers::pi * static_cast<double>(m) / static_cast<double>(p));
        if (m == 0 || m == p)
            ++r.n_central;
        else
            ++r.n_spheres;
    }
    r.perturbed_count = r.n_central + 2 * r.n_spheres + 2 * r.n_three_spheres;
    return r;
}

}  // namespace hsi
