// Thin layer: structured values cross as JSON text, hsikit/__init__.py turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hsi/cerf.hpp"
#include "hsi/correspondence.hpp"
#include "hsi/error.hpp"
#include "hsi/hsi_calc.hpp"
#include "hsi/json_io.hpp"
#include "hsi/smith.hpp"
#include "hsi/twist_model.hpp"

namespace py = pybind11;
using hsi::io::Json;

namespace {

std::string dump(const Json& j) { return j.dump(); }

Json parse(const std::string& text, const char* what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        hsi::fail(hsi::Errc::Schema, std::string(what) + ": " + e.what());
    }
}

Json hsi_json(const hsi::HsiResult& r) {
    Json j = hsi::io::to_json(r.group);
    j["degrees_exact"] = r.degrees_exact;
    return j;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "compiled core of hsikit";

    static py::exception<hsi::Error> error(m, "HsiError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const hsi::Error& e) {
            py::set_error(error, (std::string(hsi::errc_name(e.code())) + ": " + e.what()).c_str());
        }
    });

    m.def("lens", [](std::int64_t p, std::int64_t q, int cls) { return dump(hsi_json(hsi::lens_hsi(p, q, cls))); },
          py::arg("p"), py::arg("q"), py::arg("cls") = 0);
    m.def("s2s1", [](int cls) { return dump(hsi_json(hsi::s2s1_hsi(cls))); }, py::arg("cls") = 0);
    m.def(
        "lens_intersection",
        [](std::int64_t p, std::int64_t q, int e0, int e1) { return dump(hsi::io::to_json(hsi::lens_intersection(p, q, e0, e1))); },
        py::arg("p"), py::arg("q"), py::arg("eps0") = 1, py::arg("eps1") = 1);
    m.def("kunneth", [](const std::string& a, const std::string& b) {
        auto ga = hsi::io::graded_group_from_json(parse(a, "first group"));
        auto gb = hsi::io::graded_group_from_json(parse(b, "second group"));
        return dump(hsi::io::to_json(hsi::kunneth(ga, gb)));
    });
    m.def("smith", [](const hsi::IntMatrix& mat) {
        auto s = hsi::smith_normal_form(mat);
        return dump({{"D", s.D}, {"U", s.U}, {"V", s.V}, {"diagonal", s.diagonal()}});
    });
    m.def("euler", [](const hsi::IntMatrix& mat) { return hsi::euler_hsi(mat); });
    m.def("h1_order", [](const hsi::IntMatrix& mat) -> py::object {
        auto h = hsi::h1_order(mat);
        if (h.infinite) return py::none();
        return py::int_(h.order);
    });
    m.def("plumbing", [](const std::string& tree) {
        return dump(hsi::io::to_json(hsi::plumbing_minimal(hsi::io::plumbing_from_json(parse(tree, "plumbing")))));
    });
    m.def("qa", [](const std::string& cert) {
        return dump(hsi::io::to_json(hsi::qa_verify(hsi::io::qa_from_json(parse(cert, "certificate")))));
    });
    m.def("presentation_matrix", [](const std::string& family) {
        return hsi::presentation_matrix(hsi::heegaard_word(hsi::io::family_from_json(parse(family, "family"))));
    });
    m.def("normalize", [](const std::string& word, const std::string& moves) {
        auto w = hsi::io::cob_word_from_json(parse(word, "word"));
        Json mv = parse(moves, "moves");
        if (!mv.is_array()) hsi::fail(hsi::Errc::Schema, "$: moves must be an array");
        for (std::size_t i = 0; i < mv.size(); ++i)
            w = hsi::apply_move(w, hsi::io::move_from_json(mv[i], "$[" + std::to_string(i) + "]"));
        auto n = hsi::normalize(w);
        return dump({{"word", hsi::io::to_json(n)}, {"class_total", hsi::class_total(n)}});
    });
    m.def("compose", [](const std::string& a, const std::string& b) {
        auto c1 = hsi::io::correspondence_from_json(parse(a, "first"), "$.first");
        auto c2 = hsi::io::correspondence_from_json(parse(b, "second"), "$.second");
        return dump(hsi::io::to_json(hsi::compose(c1, c2)));
    });
    m.def(
        "intersect",
        [](const std::string& a, const std::string& b, int samples, std::uint64_t seed) {
            auto c1 = hsi::io::correspondence_from_json(parse(a, "first"), "$.first");
            auto c2 = hsi::io::correspondence_from_json(parse(b, "second"), "$.second");
            return dump(hsi::io::to_json(hsi::embeddedness_check(c1, c2, samples, seed)));
        },
        py::arg("first"), py::arg("second"), py::arg("samples") = 8, py::arg("seed") = 1);
    m.def(
        "fiber_intersection",
        [](const hsi::RealVec& y0, const hsi::RealVec& y1, double lambda) {
            auto z = hsi::fiber_intersection(y0, y1, hsi::AngleProfile::quadratic(lambda));
            return py::make_tuple(z.u, z.v);
        },
        py::arg("y0"), py::arg("y1"), py::arg("lam") = 1.0);
}
