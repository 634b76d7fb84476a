#include "hsi/json_io.hpp"

#include <cmath>
#include <sstream>

#include "hsi/error.hpp"

namespace hsi::io {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) { fail(Errc::Schema, path + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) bad(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(path + "." + key, "missing field");
    return *it;
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) bad(path, "expected a number");
    return j.get<double>();
}

std::int64_t integer(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) bad(path, "expected an integer");
    return j.get<std::int64_t>();
}

int small_int(const Json& j, const std::string& path) {
    auto v = integer(j, path);
    if (v < -(1 << 30) || v > (1 << 30)) bad(path, "integer out of range");
    return static_cast<int>(v);
}

const Json& array(const Json& j, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array");
    return j;
}

std::string string(const Json& j, const std::string& path) {
    if (!j.is_string()) bad(path, "expected a string");
    return j.get<std::string>();
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

CurveId curve_from_json(const Json& j, const std::string& path) {
    try {
        return CurveId::parse(string(j, path));
    } catch (const Error& e) {
        if (e.code() == Errc::Schema) throw;
        bad(path, e.what());
    }
}

Json signs_json(const std::vector<int>& s) { return Json(s); }

}  // namespace

Json to_json(const SU2Element& g) {
    auto c = g.coords();
    return Json::array({c[0], c[1], c[2], c[3]});
}

Json to_json(const Su2Vector& v) { return Json::array({v.x, v.y, v.z}); }

Json to_json(const Word& w) { return Json(w.to_signed()); }

Json to_json(const Substitution& s) {
    Json out = Json::array();
    for (const auto& w : s.images()) out.push_back(to_json(w));
    return out;
}

Json to_json(const ModuliPoint& m) {
    Json hol = Json::array();
    for (const auto& g : m.hol.hol) hol.push_back(to_json(g));
    return {{"theta", to_json(m.theta)}, {"holonomies", hol}};
}

Json to_json(const CutModuliPoint& c) {
    Json extra = Json::array();
    for (const auto& g : c.extra) extra.push_back(to_json(g));
    return {{"g", to_json(c.g)},   {"b1", to_json(c.b1)}, {"b2", to_json(c.b2)},
            {"A1", to_json(c.A1)}, {"A2", to_json(c.A2)}, {"extra", extra}};
}

Json to_json(const ElemCob& e) {
    Json j{{"kind", kind_name(e.kind)}, {"genus", e.genus}, {"class", e.class_bits}};
    if (e.kind == ElemCob::Kind::Handle1 || e.kind == ElemCob::Kind::Handle2) j["curve"] = e.curve.name();
    if (e.kind == ElemCob::Kind::Diffeo) j["substitution"] = to_json(e.sub);
    if (e.kind == ElemCob::Kind::Reparam) j["angle"] = e.angle;
    return j;
}

Json to_json(const CobWord& w) {
    Json pieces = Json::array();
    for (const auto& p : w.pieces) pieces.push_back(to_json(p));
    return {{"genus", w.genus}, {"pieces", pieces}};
}

Json to_json(const Correspondence& c) {
    static const char* kinds[] = {"graph", "handle2", "handle1", "composite"};
    Json stages = Json::array();
    for (const auto& s : c.stages()) {
        if (const auto* g = std::get_if<GraphStage>(&s)) {
            Json steps = Json::array();
            for (const auto& st : g->steps)
                steps.push_back({{"substitution", to_json(st.sub)},
                                 {"signs", signs_json(st.signs)},
                                 {"rotation", st.rotation},
                                 {"conjugator", to_json(st.conjugator)}});
            stages.push_back({{"stage", "graph"}, {"genus", g->genus}, {"steps", steps}});
        } else {
            const auto& h = std::get<HandleStage>(s);
            stages.push_back({{"stage", h.index == 2 ? "handle2" : "handle1"},
                              {"genus", h.genus},
                              {"curve", h.curve.name()},
                              {"sign", h.sign},
                              {"residual_signs", signs_json(h.residual_signs)}});
        }
    }
    Json conds = Json::array();
    for (const auto& cnd : c.source_conditions()) conds.push_back({{"word", cnd.w.to_string()}, {"target", cnd.target}});
    Json image = Json::array();
    for (const auto& g : c.symbolic_image()) image.push_back({{"word", g.w.to_string()}, {"sign", g.sign}});
    return {{"type", "correspondence"},
            {"kind", kinds[static_cast<int>(c.kind())]},
            {"source_genus", c.source_genus()},
            {"target_genus", c.target_genus()},
            {"always_empty", c.always_empty()},
            {"parameters", c.parameter_count()},
            {"effective_parameters", c.effective_parameters().size()},
            {"source_conditions", conds},
            {"image", image},
            {"stages", stages}};
}

Json to_json(const GradedGroup& g) {
    Json degrees = Json::array();
    for (int d = 0; d < GradedGroup::kPeriod; ++d) {
        const auto& p = g.at(d);
        if (p.free == 0 && p.torsion.empty()) continue;
        degrees.push_back({{"degree", d}, {"free", p.free}, {"torsion", p.torsion}});
    }
    return {{"total_rank", g.total_rank()}, {"degrees", degrees}};
}

Json to_json(const PlumbingTree& t) {
    Json edges = Json::array();
    for (auto [a, b] : t.edges) edges.push_back({a, b});
    return {{"weights", t.weights}, {"edges", edges}};
}

Json to_json(const QANode& n) {
    static const char* leaves[] = {"", "unknot", "qa-known"};
    Json j{{"det", n.det}};
    if (!n.name.empty()) j["name"] = n.name;
    if (n.leaf != QANode::Leaf::Internal) j["leaf"] = leaves[static_cast<int>(n.leaf)];
    if (!n.children.empty()) {
        j["children"] = Json::array();
        for (const auto& c : n.children) j["children"].push_back(to_json(c));
    }
    return j;
}

namespace {
Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }
}  // namespace

Json to_json(const EmbeddednessReport& r) {
    Json j{{"composable", r.composable},
           {"empty", r.empty},
           {"transverse", r.transverse},
           {"injective", r.injective},
           {"pass", r.pass},
           {"samples_used", r.samples_used},
           {"min_singular_value", finite_or_null(r.min_singular_value)},
           {"immersion_margin", finite_or_null(r.immersion_margin)},
           {"message", r.message}};
    if (r.diagonal_error) j["diagonal_error"] = *r.diagonal_error;
    return j;
}

Json to_json(const CleanIntersectionReport& r) {
    return {{"n_central", r.n_central},
            {"n_spheres", r.n_spheres},
            {"n_three_spheres", r.n_three_spheres},
            {"perturbed_count", r.perturbed_count},
            {"angles", r.angles}};
}

Json to_json(const PlumbingResult& r) {
    Json j{{"minimal", r.minimal}};
    if (r.minimal)
        j["h1"] = r.h1;
    else
        j["reason"] = r.reason;
    return j;
}

Json to_json(const QAResult& r) { return {{"verified", r.verified}, {"trace", r.trace}}; }

Json to_json(const IntMatrix& m) { return Json(m); }

SU2Element su2_from_json(const Json& j, const std::string& path) {
    if (array(j, path).size() != 4) bad(path, "expected [w, x, y, z]");
    double c[4];
    for (std::size_t i = 0; i < 4; ++i) c[i] = number(j[i], at(path, i));
    try {
        return SU2Element(c[0], c[1], c[2], c[3]);
    } catch (const Error& e) {
        bad(path, e.what());
    }
}

Su2Vector vector_from_json(const Json& j, const std::string& path) {
    if (array(j, path).size() != 3) bad(path, "expected [x, y, z]");
    return {number(j[0], at(path, 0)), number(j[1], at(path, 1)), number(j[2], at(path, 2))};
}

Word parse_word(const std::string& text) {
    std::vector<Letter> letters;
    std::string tok;
    std::istringstream in(text);
    while (in >> tok) {
        if (tok == "1" || tok == "*") continue;
        int exp = 1;
        auto caret = tok.find('^');
        std::string base = tok.substr(0, caret);
        if (caret != std::string::npos) {
            std::string e = tok.substr(caret + 1);
            if (e == "-1")
                exp = -1;
            else if (e != "1")
                fail(Errc::Schema, "bad exponent in '" + tok + "'");
        }
        CurveId c;
        try {
            c = CurveId::parse(base);
        } catch (const Error&) {
            fail(Errc::Schema, "bad letter '" + tok + "'");
        }
        letters.push_back({c.gen(), exp});
    }
    return Word(std::move(letters)).reduced();
}

Word word_from_json(const Json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return parse_word(j.get<std::string>());
        } catch (const Error& e) {
            bad(path, e.what());
        }
    }
    std::vector<int> v;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) {
        int x = small_int(j[i], at(path, i));
        if (x == 0) bad(at(path, i), "generator code 0 is not allowed");
        v.push_back(x);
    }
    return Word::from_signed(v);
}

Substitution substitution_from_json(const Json& j, int genus, const std::string& path) {
    if (array(j, path).size() != static_cast<std::size_t>(2 * genus))
        bad(path, "expected " + std::to_string(2 * genus) + " generator images");
    std::vector<Word> images;
    for (std::size_t i = 0; i < j.size(); ++i) images.push_back(word_from_json(j[i], at(path, i)));
    try {
        return Substitution(genus, std::move(images));
    } catch (const Error& e) {
        bad(path, e.what());
    }
}

ModuliPoint moduli_point_from_json(const Json& j, const std::string& path) {
    const Json& hj = field(j, "holonomies", path);
    std::vector<SU2Element> hol;
    for (std::size_t i = 0; i < array(hj, path + ".holonomies").size(); ++i)
        hol.push_back(su2_from_json(hj[i], at(path + ".holonomies", i)));
    if (hol.size() % 2) bad(path + ".holonomies", "needs an even number of holonomies");
    HolonomyPoint hp(std::move(hol));
    if (j.contains("theta")) {
        ModuliPoint m{vector_from_json(j["theta"], path + ".theta"), hp};
        return m;
    }
    try {
        return ModuliPoint::from_holonomies(hp);
    } catch (const Error& e) {
        bad(path, e.what());
    }
}

CutModuliPoint cut_point_from_json(const Json& j, const std::string& path) {
    CutModuliPoint c;
    c.g = vector_from_json(field(j, "g", path), path + ".g");
    c.b1 = vector_from_json(field(j, "b1", path), path + ".b1");
    c.b2 = vector_from_json(field(j, "b2", path), path + ".b2");
    c.A1 = su2_from_json(field(j, "A1", path), path + ".A1");
    c.A2 = su2_from_json(field(j, "A2", path), path + ".A2");
    if (j.contains("extra")) {
        const Json& e = array(j["extra"], path + ".extra");
        if (e.size() % 2) bad(path + ".extra", "needs an even number of holonomies");
        for (std::size_t i = 0; i < e.size(); ++i) c.extra.push_back(su2_from_json(e[i], at(path + ".extra", i)));
    }
    return c;
}

ClassBits class_from_json(const Json& j, const std::string& path) {
    ClassBits c;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) {
        auto v = integer(j[i], at(path, i));
        if (v != 0 && v != 1) bad(at(path, i), "class bits are 0 or 1");
        c.push_back(static_cast<std::uint8_t>(v));
    }
    return c;
}

ElemCob elem_cob_from_json(const Json& j, const std::string& path) {
    const std::string kind = string(field(j, "kind", path), path + ".kind");
    ClassBits cls;
    if (j.contains("class")) cls = class_from_json(j["class"], path + ".class");
    auto genus = [&] {
        int h = small_int(field(j, "genus", path), path + ".genus");
        if (h < 0) bad(path + ".genus", "genus must be >= 0");
        return h;
    };
    try {
        if (kind == "cylinder") return ElemCob::cylinder(genus(), cls);
        if (kind == "reparam")
            return ElemCob::reparam(genus(), number(field(j, "angle", path), path + ".angle"), cls);
        if (kind == "handle1" || kind == "handle2") {
            int h = genus();
            CurveId c = curve_from_json(field(j, "curve", path), path + ".curve");
            return kind == "handle1" ? ElemCob::handle1(h, c, cls) : ElemCob::handle2(h, c, cls);
        }
        if (kind == "diffeo") {
            int h = genus();
            Substitution s = Substitution::identity(h);
            if (j.contains("substitution")) s = substitution_from_json(j["substitution"], h, path + ".substitution");
            if (j.contains("twists")) {
                const Json& tw = array(j["twists"], path + ".twists");
                for (std::size_t i = 0; i < tw.size(); ++i) {
                    std::string t = string(tw[i], at(path + ".twists", i));
                    int power = 1;
                    if (!t.empty() && t[0] == '-') {
                        power = -1;
                        t = t.substr(1);
                    }
                    s = s.then(twist_substitution(curve_from_json(t, at(path + ".twists", i)), h, power));
                }
            }
            return ElemCob::diffeo(s, cls);
        }
    } catch (const Error& e) {
        if (e.code() == Errc::Schema) throw;
        bad(path, e.what());
    }
    bad(path + ".kind", "unknown kind '" + kind + "'");
}

CobWord cob_word_from_json(const Json& j, const std::string& path) {
    CobWord w;
    w.genus = small_int(field(j, "genus", path), path + ".genus");
    const Json& ps = array(field(j, "pieces", path), path + ".pieces");
    for (std::size_t i = 0; i < ps.size(); ++i) w.pieces.push_back(elem_cob_from_json(ps[i], at(path + ".pieces", i)));
    try {
        w.validate();
    } catch (const Error& e) {
        bad(path, e.what());
    }
    return w;
}

Correspondence correspondence_from_json(const Json& j, const std::string& path) {
    if (j.is_object() && j.contains("pieces")) return compose_word(cob_word_from_json(j, path));
    return elementary(elem_cob_from_json(j, path));
}

GradedGroup graded_group_from_json(const Json& j, const std::string& path) {
    GradedGroup g;
    const Json& ds = array(field(j, "degrees", path), path + ".degrees");
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const std::string p = at(path + ".degrees", i);
        int d = small_int(field(ds[i], "degree", p), p + ".degree");
        if (ds[i].contains("free")) {
            auto f = integer(ds[i]["free"], p + ".free");
            if (f < 0) bad(p + ".free", "rank must be >= 0");
            g.add_free(d, static_cast<std::uint64_t>(f));
        }
        if (ds[i].contains("torsion")) {
            const Json& t = array(ds[i]["torsion"], p + ".torsion");
            for (std::size_t k = 0; k < t.size(); ++k) {
                auto n = integer(t[k], at(p + ".torsion", k));
                if (n < 2) bad(at(p + ".torsion", k), "torsion coefficients are >= 2");
                g.add_torsion(d, static_cast<std::uint64_t>(n));
            }
        }
    }
    return g;
}

PlumbingTree plumbing_from_json(const Json& j, const std::string& path) {
    PlumbingTree t;
    const Json& w = field(j, "weights", path);
    if (w.is_array()) {
        for (std::size_t i = 0; i < w.size(); ++i) t.weights.push_back(integer(w[i], at(path + ".weights", i)));
    } else if (w.is_object()) {
        // {"0": 2, "1": 3}: keys must be 0..n-1
        t.weights.assign(w.size(), 0);
        std::vector<bool> seen(w.size(), false);
        for (auto it = w.begin(); it != w.end(); ++it) {
            const std::string p = path + ".weights." + it.key();
            std::size_t idx = 0;
            try {
                std::size_t used = 0;
                idx = std::stoul(it.key(), &used);
                if (used != it.key().size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                bad(p, "vertex keys are integers");
            }
            if (idx >= w.size() || seen[idx]) bad(p, "vertex keys must be 0..n-1");
            seen[idx] = true;
            t.weights[idx] = integer(*it, p);
        }
    } else {
        bad(path + ".weights", "expected an array or an object");
    }
    if (j.contains("edges")) {
        const Json& es = array(j["edges"], path + ".edges");
        for (std::size_t i = 0; i < es.size(); ++i) {
            const std::string p = at(path + ".edges", i);
            if (array(es[i], p).size() != 2) bad(p, "an edge is a pair [u, v]");
            t.edges.emplace_back(small_int(es[i][0], p + "[0]"), small_int(es[i][1], p + "[1]"));
        }
    }
    return t;
}

QANode qa_from_json(const Json& j, const std::string& path) {
    QANode n;
    n.det = integer(field(j, "det", path), path + ".det");
    if (j.contains("name")) n.name = string(j["name"], path + ".name");
    if (j.contains("leaf")) {
        std::string l = string(j["leaf"], path + ".leaf");
        if (l == "unknot")
            n.leaf = QANode::Leaf::Unknot;
        else if (l == "qa-known")
            n.leaf = QANode::Leaf::QAKnown;
        else
            bad(path + ".leaf", "leaf is 'unknot' or 'qa-known'");
    }
    if (j.contains("children")) {
        const Json& cs = array(j["children"], path + ".children");
        for (std::size_t i = 0; i < cs.size(); ++i) n.children.push_back(qa_from_json(cs[i], at(path + ".children", i)));
    }
    return n;
}

AngleProfile profile_from_json(const Json& j, const std::string& path) {
    try {
        if (j.is_object() && j.contains("lambda")) return AngleProfile::quadratic(number(j["lambda"], path + ".lambda"));
        const Json& s = array(field(j, "samples", path), path + ".samples");
        std::vector<double> t, R, dR;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::string p = at(path + ".samples", i);
            if (array(s[i], p).size() != 3) bad(p, "a sample is [t, R, dR]");
            t.push_back(number(s[i][0], p + "[0]"));
            R.push_back(number(s[i][1], p + "[1]"));
            dR.push_back(number(s[i][2], p + "[2]"));
        }
        return AngleProfile::tabulated(t, R, dR);
    } catch (const Error& e) {
        if (e.code() == Errc::Schema) throw;
        bad(path, e.what());
    }
}

Family family_from_json(const Json& j, const std::string& path) {
    const std::string f = string(field(j, "family", path), path + ".family");
    if (f == "lens")
        return {LensFamily{integer(field(j, "p", path), path + ".p"), integer(field(j, "q", path), path + ".q")}};
    if (f == "s2s1") return {S2xS1Family{}};
    if (f == "plumbing") return {PlumbingFamily{plumbing_from_json(j, path)}};
    if (f == "connsum") {
        ConnectedSumFamily cs;
        const Json& ps = array(field(j, "parts", path), path + ".parts");
        for (std::size_t i = 0; i < ps.size(); ++i) cs.parts.push_back(family_from_json(ps[i], at(path + ".parts", i)));
        return {cs};
    }
    bad(path + ".family", "unknown family '" + f + "'");
}

CerfMove move_from_json(const Json& j, const std::string& path) {
    static const std::pair<const char*, MoveKind> names[] = {
        {"cylinder-create", MoveKind::CylinderCreate}, {"cylinder-cancel", MoveKind::CylinderCancel},
        {"critical-create", MoveKind::CriticalCreate}, {"critical-cancel", MoveKind::CriticalCancel},
        {"critical-switch", MoveKind::CriticalSwitch}, {"class-slide", MoveKind::ClassSlide},
        {"diffeo-equivalence", MoveKind::DiffeoEquivalence}};
    CerfMove m;
    const std::string name = string(field(j, "move", path), path + ".move");
    bool found = false;
    for (auto [n, k] : names)
        if (name == n) {
            m.kind = k;
            found = true;
        }
    if (!found) bad(path + ".move", "unknown move '" + name + "'");
    auto pos = integer(field(j, "position", path), path + ".position");
    if (pos < 0) bad(path + ".position", "position must be >= 0");
    m.position = static_cast<std::size_t>(pos);
    if (j.contains("pair")) m.pair = small_int(j["pair"], path + ".pair");
    if (m.kind == MoveKind::ClassSlide) {
        m.first = class_from_json(field(j, "first", path), path + ".first");
        m.second = class_from_json(field(j, "second", path), path + ".second");
    }
    if (m.kind == MoveKind::DiffeoEquivalence)
        m.replacement = elem_cob_from_json(field(j, "replacement", path), path + ".replacement");
    return m;
}

IntMatrix matrix_from_json(const Json& j, const std::string& path) {
    IntMatrix m;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) {
        const std::string p = at(path, i);
        std::vector<std::int64_t> row;
        for (std::size_t k = 0; k < array(j[i], p).size(); ++k) row.push_back(integer(j[i][k], at(p, k)));
        if (!m.empty() && row.size() != m[0].size()) bad(p, "rows must have equal length");
        m.push_back(std::move(row));
    }
    return m;
}

}  // namespace hsi::io
