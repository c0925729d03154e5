// Python bindings: every operation takes and returns JSON strings in the
// same document formats as the CLI, with exact rational arithmetic.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "json.hpp"
#include "solvlie/derivations.hpp"
#include "solvlie/fixtures.hpp"
#include "solvlie/geometry.hpp"
#include "solvlie/json_io.hpp"
#include "solvlie/modification.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace solvlie;

namespace {

json jgrid(const Matrix<Rat>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

json algebra_document(const LieAlgebra<Rat>& alg) { return json::parse(serialize_algebra(alg)); }

Matrix<Rat> metric_for(const LieAlgebra<Rat>& alg, const std::optional<std::string>& metric) {
    if (!metric) return Matrix<Rat>::identity(alg.dim());
    return parse_metric(*metric, alg);
}

std::string dump(const json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact computations with solvable metric Lie algebras";

    // translators run most-recently-registered first, so the ParseError
    // registration below takes precedence over its SolvlieError base
    py::register_exception<SolvlieError>(m, "SolvlieMathError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    m.def("validate", [](const std::string& text) {
        auto alg = parse_algebra(text);
        return dump({{"valid", true}, {"name", alg.name()}, {"dim", alg.dim()},
                     {"solvable", is_solvable(alg)}});
    });

    m.def("canonicalize", [](const std::string& text) {
        return serialize_algebra(parse_algebra(text));
    });

    m.def("profile", [](const std::string& text) {
        auto p = invariant_profile(parse_algebra(text));
        json j;
        j["dim"] = p.dim;
        j["derived_dims"] = p.derived_dims;
        j["lower_central_dims"] = p.lower_central_dims;
        j["center_dim"] = p.center_dim;
        j["nilradical_dim"] = p.nilradical_dim;
        j["solvable"] = p.solvable;
        j["nilpotent"] = p.nilpotent;
        j["unimodular"] = p.unimodular;
        j["completely_solvable"] = p.completely_solvable;
        j["killing_rank"] = p.killing_rank;
        j["killing_signature"] = {p.killing_positive, p.killing_negative};
        j["derivation_dim"] = p.derivation_dim;
        return dump(j);
    });

    m.def("nilradical_basis", [](const std::string& text) {
        auto alg = parse_algebra(text);
        auto nil = nilradical(alg);
        json basis = json::array();
        for (const auto& v : nil.basis()) {
            json row = json::array();
            for (const auto& x : v) row.push_back(x.str());
            basis.push_back(std::move(row));
        }
        return dump({{"dim", nil.dim()}, {"basis", basis}});
    });

    m.def(
        "derivations",
        [](const std::string& text, const std::optional<std::string>& metric) {
            auto alg = parse_algebra(text);
            auto space = metric ? skew_derivations(alg, metric_for(alg, metric))
                                : derivation_algebra(alg);
            json basis = json::array();
            for (const auto& d : space.basis) basis.push_back(jgrid(d));
            return dump({{"dim", space.basis.size()}, {"basis", basis}});
        },
        py::arg("algebra"), py::arg("metric") = py::none());

    m.def("sigma", [](const std::string& text) {
        auto res = sigma(parse_algebra(text));
        return dump({{"algebra", algebra_document(res.algebra)},
                     {"already_completely_solvable", res.witness.phi.is_zero_matrix()}});
    });

    m.def(
        "standard_modification",
        [](const std::string& text, const std::optional<std::string>& metric) {
            auto alg = parse_algebra(text);
            return dump(
                {{"algebra", algebra_document(standard_modification(alg, metric_for(alg, metric)))}});
        },
        py::arg("algebra"), py::arg("metric") = py::none());

    m.def(
        "standard_position",
        [](const std::string& text, const std::optional<std::string>& metric) {
            auto alg = parse_algebra(text);
            auto [res, steps] = standard_position_algebra(alg, metric_for(alg, metric));
            return dump({{"algebra", algebra_document(res)}, {"steps", steps}});
        },
        py::arg("algebra"), py::arg("metric") = py::none());

    m.def(
        "equivalence",
        [](const std::string& a_text, const std::string& b_text) {
            auto v = equivalence_check(parse_algebra(a_text), parse_algebra(b_text),
                                       std::optional<Matrix<Rat>>{});
            const char* status = v.status == EquivStatus::Equivalent       ? "equivalent"
                                 : v.status == EquivStatus::NotEquivalent ? "not_equivalent"
                                                                          : "unknown";
            json j{{"status", status}, {"detail", v.detail}};
            if (v.certificate) j["certificate"] = jgrid(*v.certificate);
            return dump(j);
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "ricci",
        [](const std::string& text, const std::optional<std::string>& metric) {
            auto alg = parse_algebra(text);
            return dump({{"ricci", jgrid(ricci_operator(alg, metric_for(alg, metric)))}});
        },
        py::arg("algebra"), py::arg("metric") = py::none());

    m.def(
        "soliton",
        [](const std::string& text, const std::optional<std::string>& metric) {
            auto alg = parse_algebra(text);
            auto cert = soliton_solve(alg, metric_for(alg, metric));
            return dump({{"c", cert.c.str()},
                         {"D", jgrid(cert.d)},
                         {"residual", cert.residual_sq.str()},
                         {"algebraic", cert.algebraic}});
        },
        py::arg("algebra"), py::arg("metric") = py::none());

    m.def("pre_einstein", [](const std::string& text) {
        auto pe = pre_einstein(parse_algebra(text));
        json eigs = json::array();
        for (const auto& [v, mult] : pe.eigenvalues)
            eigs.push_back({{"value", v.str()}, {"multiplicity", mult}});
        return dump({{"phi", jgrid(pe.phi)}, {"eigenvalues", eigs}});
    });

    m.def(
        "einstein_check",
        [](const std::string& text, const std::optional<std::string>& metric) {
            auto alg = parse_algebra(text);
            auto res = einstein_check(alg, metric_for(alg, metric));
            return dump({{"is_einstein", res.is_einstein},
                         {"c", res.c.str()},
                         {"residual", res.residual_sq.str()}});
        },
        py::arg("algebra"), py::arg("metric") = py::none());

    m.def(
        "extend_einstein",
        [](const std::string& text, const std::optional<std::string>& metric) {
            auto alg = parse_algebra(text);
            auto gram = metric_for(alg, metric);
            auto ext = einstein_extension(alg, gram, soliton_solve(alg, gram));
            return dump({{"algebra", algebra_document(ext.algebra)},
                         {"gram", jgrid(ext.gram)},
                         {"t", ext.t.str()},
                         {"c", ext.check.c.str()},
                         {"is_einstein", ext.check.is_einstein},
                         {"delta", jgrid(ext.delta_hat)}});
        },
        py::arg("algebra"), py::arg("metric") = py::none());

    m.def("fixture", [](const std::string& name) {
        if (name == "h3") return serialize_algebra(fixtures::h3());
        if (name == "e2_tilde") return serialize_algebra(fixtures::e2_tilde());
        if (name == "hyperbolic_plane") return serialize_algebra(fixtures::hyperbolic_plane());
        if (name == "seven_dim_s") return serialize_algebra(fixtures::seven_dim_s());
        if (name == "seven_dim_r") return serialize_algebra(fixtures::seven_dim_r());
        if (name.rfind("abelian", 0) == 0)
            return serialize_algebra(fixtures::abelian(std::stoul(name.substr(7))));
        throw ParseError("unknown fixture '" + name + "'");
    });
}
