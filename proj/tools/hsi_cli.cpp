#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "hsi/cerf.hpp"
#include "hsi/error.hpp"
#include "hsi/hsi_calc.hpp"
#include "hsi/json_io.hpp"
#include "hsi/smith.hpp"
#include "hsi/twist_model.hpp"

using hsi::io::Json;

namespace {

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) hsi::fail(hsi::Errc::Schema, path + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        hsi::fail(hsi::Errc::Schema, path + ": " + e.what());
    }
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(*it, prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << "\t" << j.dump() << "\n";
    }
}

struct Output {
    std::string format = "json";
    void emit(const Json& j) const {
        if (format == "table")
            flatten(j, "", std::cout);
        else
            std::cout << j.dump(2) << "\n";
    }
};

std::uint64_t default_seed() {
    if (const char* s = std::getenv("HSI_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            hsi::fail(hsi::Errc::Schema, "HSI_SEED: not an unsigned integer");
        }
    }
    return 1;
}

hsi::HsiResult part_hsi(const Json& j, const std::string& path) {
    int cls = j.contains("class") ? j["class"].get<int>() : 0;
    hsi::Family f = hsi::io::family_from_json(j, path);
    if (const auto* l = std::get_if<hsi::LensFamily>(&f.v)) return hsi::lens_hsi(l->p, l->q, cls);
    if (std::holds_alternative<hsi::S2xS1Family>(f.v)) return hsi::s2s1_hsi(cls);
    hsi::fail(hsi::Errc::UnsupportedFamily, path + ": connected-sum parts are lens spaces or S2xS1");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hsi: symplectic instanton homology calculators and checkers"};
    app.require_subcommand(1, 1);
    Output out;
    std::uint64_t seed = 0;
    bool seed_given = false;
    auto& tol = hsi::default_tolerances();
    app.add_option("--format", out.format, "output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { seed = s, seed_given = true; }, "RNG seed (default $HSI_SEED or 1)");
    app.add_option("--tol-arith", tol.arithmetic, "arithmetic tolerance")->capture_default_str();
    app.add_option("--tol-relation", tol.relation, "relation tolerance")->capture_default_str();
    app.add_option("--tol-solver", tol.solver, "solver tolerance")->capture_default_str();

    std::int64_t p = 1, q = 1;
    int cls = 0, eps0 = 1, eps1 = 1;
    auto* lens = app.add_subcommand("lens", "HSI rank of L(p,q) and the genus-1 intersection count");
    lens->add_option("p", p)->required();
    lens->add_option("q", q)->required();
    lens->add_option("--class", cls, "0 or 1: whether the class is zero")->check(CLI::IsMember({0, 1}));
    lens->add_option("--eps0", eps0)->check(CLI::IsMember({-1, 1}));
    lens->add_option("--eps1", eps1)->check(CLI::IsMember({-1, 1}));

    auto* s2s1 = app.add_subcommand("s2s1", "HSI of S2xS1");
    s2s1->add_option("--class", cls)->check(CLI::IsMember({0, 1}));

    std::string file;
    auto* connsum = app.add_subcommand("connsum", "Kunneth formula for a connected sum");
    connsum->add_option("file", file, "JSON {parts: [{family, p, q, class}, ...]}")->required();
    auto* euler = app.add_subcommand("euler", "|H1| and Euler characteristic from a presentation matrix");
    euler->add_option("file", file, "JSON integer matrix")->required();
    auto* plumbing = app.add_subcommand("plumbing", "minimality check for a plumbing tree");
    plumbing->add_option("file", file, "JSON {weights, edges}")->required();
    auto* qa = app.add_subcommand("qa", "verify a quasi-alternating certificate");
    qa->add_option("file", file, "JSON resolution tree")->required();
    auto* cerf = app.add_subcommand("cerf-normalize", "apply Cerf moves, then normalize a cobordism word");
    cerf->add_option("file", file, "JSON word, or {word, moves}")->required();
    int samples = 20;
    auto* intersect = app.add_subcommand("intersect", "sampled embeddedness check of a composition");
    intersect->add_option("file", file, "JSON {first, second}")->required();
    intersect->add_option("--samples", samples)->check(CLI::PositiveNumber);
    int n = 3;
    double lambda = 1.0;
    std::string profile_file;
    auto* twist = app.add_subcommand("twist-check", "model twist: tau(F0) meets F1 in one point");
    twist->add_option("--n", n)->check(CLI::PositiveNumber);
    twist->add_option("--samples", samples)->check(CLI::PositiveNumber);
    twist->add_option("--lambda", lambda);
    twist->add_option("--profile", profile_file, "tabulated profile JSON");
    auto* comp = app.add_subcommand("compose", "compose two correspondences");
    comp->add_option("file", file, "JSON {first, second}")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (!seed_given) seed = default_seed();
        std::mt19937_64 rng(seed);
        if (*lens) {
            auto r = hsi::lens_hsi(p, q, cls);
            auto ci = hsi::lens_intersection(p, q, eps0, eps1);
            auto h = hsi::h1_order({{p}});
            Json j = hsi::io::to_json(r.group);
            j["p"] = p;
            j["q"] = q;
            j["class"] = cls;
            j["degrees_exact"] = r.degrees_exact;
            j["h1"] = h.infinite ? Json(nullptr) : Json(h.order);
            j["intersection"] = hsi::io::to_json(ci);
            out.emit(j);
        } else if (*s2s1) {
            auto r = hsi::s2s1_hsi(cls);
            Json j = hsi::io::to_json(r.group);
            j["class"] = cls;
            j["intersection"] = hsi::io::to_json(hsi::lens_intersection(0, 1, 1, cls ? -1 : 1));
            out.emit(j);
        } else if (*connsum) {
            Json in = read_json(file);
            const Json& parts = in.at("parts");
            if (!parts.is_array() || parts.empty()) hsi::fail(hsi::Errc::Schema, "$.parts: expected a non-empty array");
            hsi::GradedGroup g = hsi::GradedGroup::free_at(0);
            hsi::ConnectedSumFamily cs;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                const std::string path = "$.parts[" + std::to_string(i) + "]";
                g = hsi::kunneth(g, part_hsi(parts[i], path).group);
                cs.parts.push_back(hsi::io::family_from_json(parts[i], path));
            }
            auto h = hsi::h1_order(hsi::presentation_matrix(hsi::heegaard_word({cs})));
            Json j = hsi::io::to_json(g);
            j["euler"] = h.infinite ? 0 : h.order;
            out.emit(j);
        } else if (*euler) {
            auto m = hsi::io::matrix_from_json(read_json(file));
            auto h = hsi::h1_order(m);
            auto snf = hsi::smith_normal_form(m);
            out.emit({{"h1", h.infinite ? Json("infinite") : Json(h.order)},
                      {"euler", hsi::euler_hsi(m)},
                      {"smith_diagonal", snf.diagonal()}});
        } else if (*plumbing) {
            out.emit(hsi::io::to_json(hsi::plumbing_minimal(hsi::io::plumbing_from_json(read_json(file)))));
        } else if (*qa) {
            out.emit(hsi::io::to_json(hsi::qa_verify(hsi::io::qa_from_json(read_json(file)))));
        } else if (*cerf) {
            Json in = read_json(file);
            hsi::CobWord w;
            if (in.is_object() && in.contains("word")) {
                w = hsi::io::cob_word_from_json(in["word"], "$.word");
                if (in.contains("moves")) {
                    const Json& mv = in["moves"];
                    if (!mv.is_array()) hsi::fail(hsi::Errc::Schema, "$.moves: expected an array");
                    for (std::size_t i = 0; i < mv.size(); ++i)
                        w = hsi::apply_move(w, hsi::io::move_from_json(mv[i], "$.moves[" + std::to_string(i) + "]"));
                }
            } else {
                w = hsi::io::cob_word_from_json(in);
            }
            auto nw = hsi::normalize(w);
            out.emit({{"word", hsi::io::to_json(nw)}, {"class_total", hsi::class_total(nw)}});
        } else if (*intersect || *comp) {
            Json in = read_json(file);
            auto c1 = hsi::io::correspondence_from_json(in.contains("first") ? in["first"] : Json(), "$.first");
            auto c2 = hsi::io::correspondence_from_json(in.contains("second") ? in["second"] : Json(), "$.second");
            if (*intersect)
                out.emit(hsi::io::to_json(hsi::embeddedness_check(c1, c2, samples, seed)));
            else
                out.emit(hsi::io::to_json(hsi::compose(c1, c2)));
        } else if (*twist) {
            hsi::AngleProfile prof = profile_file.empty() ? hsi::AngleProfile::quadratic(lambda)
                                                          : hsi::io::profile_from_json(read_json(profile_file));
            std::normal_distribution<double> gauss;
            auto sphere = [&] {
                hsi::RealVec y(n + 1);
                double s = 0;
                for (auto& c : y) {
                    c = gauss(rng);
                    s += c * c;
                }
                for (auto& c : y) c /= std::sqrt(s);
                return y;
            };
            double worst_fiber = 0, worst_angle = 0, worst_constraint = 0;
            for (int i = 0; i < samples; ++i) {
                auto y0 = sphere(), y1 = sphere();
                auto z = hsi::fiber_intersection(y0, y1, prof, tol);
                auto back = hsi::model_twist_inverse(z, prof, tol);
                double fib = 0;
                for (int k = 0; k <= n; ++k) fib = std::max({fib, std::abs(z.v[k] - y1[k]), std::abs(back.v[k] - y0[k])});
                double nu = 0;
                for (double c : z.u) nu += c * c;
                nu = std::sqrt(nu);
                worst_fiber = std::max(worst_fiber, fib);
                worst_angle = std::max(worst_angle, std::abs(2 * std::numbers::pi * prof.dR(nu) - hsi::spherical_distance(y0, y1)));
                worst_constraint = std::max(worst_constraint, z.constraint_residual());
            }
            out.emit({{"n", n},
                      {"samples", samples},
                      {"seed", seed},
                      {"max_fiber_error", worst_fiber},
                      {"max_angle_error", worst_angle},
                      {"max_constraint_error", worst_constraint},
                      {"pass", std::max({worst_fiber, worst_angle, worst_constraint}) < tol.solver}});
        }
    } catch (const hsi::Error& e) {
        std::cerr << "error: " << hsi::errc_name(e.code()) << ": " << e.what() << "\n";
        return e.code() == hsi::Errc::Schema ? 2 : 1;
    } catch (const Json::exception& e) {
        std::cerr << "error: Schema: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
