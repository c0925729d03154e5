#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "solvlie/derivations.hpp"
#include "solvlie/fixtures.hpp"
#include "solvlie/geometry.hpp"
#include "solvlie/json_io.hpp"
#include "solvlie/modification.hpp"

using nlohmann::json;
using namespace solvlie;

namespace {

struct Options {
    std::string mode = "exact";
    double tol = 1e-9;
    std::string metric_path;
    std::string certificate_path;
    std::string out_path;
    bool pretty = false;
    std::vector<std::string> files;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

template <class T>
json jscalar(const T& x) {
    if constexpr (is_exact_v<T>)
        return scalar_traits<T>::str(x);
    else
        return scalar_traits<T>::to_double(x);
}

template <class T>
json jgrid(const Matrix<T>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(jscalar(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class T>
json jvec(const Vec<T>& v) {
    json row = json::array();
    for (const auto& x : v) row.push_back(jscalar(x));
    return row;
}

template <class T>
json algebra_document(const LieAlgebra<T>& alg) {
    json j;
    j["name"] = alg.name();
    j["dim"] = alg.dim();
    j["basis"] = alg.basis_names();
    json brackets = json::array();
    for (std::size_t i = 0; i < alg.dim(); ++i)
        for (std::size_t k = i + 1; k < alg.dim(); ++k) {
            const Vec<T>& v = alg.bracket_upper(i, k);
            if (vecops::is_zero(v)) continue;
            json value = json::object();
            for (std::size_t c = 0; c < alg.dim(); ++c)
                if (!scalar_traits<T>::is_zero(v[c])) value[alg.basis_names()[c]] = jscalar(v[c]);
            brackets.push_back(
                {{"x", alg.basis_names()[i]}, {"y", alg.basis_names()[k]}, {"value", value}});
        }
    j["brackets"] = std::move(brackets);
    return j;
}

Matrix<double> to_float(const Matrix<Rat>& m) {
    Matrix<double> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) out(i, k) = m(i, k).to_double();
    return out;
}

template <class T>
LieAlgebra<T> convert_algebra(const LieAlgebra<Rat>& alg) {
    if constexpr (is_exact_v<T>)
        return alg;
    else
        return fixtures::to_float(alg);
}

template <class T>
Matrix<T> convert_matrix(const Matrix<Rat>& m) {
    if constexpr (is_exact_v<T>)
        return m;
    else
        return to_float(m);
}

template <class T>
LieAlgebra<T> load_algebra(const Options& opt, std::size_t index = 0) {
    if (index >= opt.files.size()) throw ParseError("missing input file");
    return convert_algebra<T>(parse_algebra(slurp(opt.files[index])));
}

template <class T>
Matrix<T> load_metric(const Options& opt, const LieAlgebra<Rat>& exact_alg) {
    if (opt.metric_path.empty()) return Matrix<T>::identity(exact_alg.dim());
    return convert_matrix<T>(parse_metric(slurp(opt.metric_path), exact_alg));
}

json profile_json(const InvariantProfile& p) {
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
    j["complement_ad_char_polys"] = p.complement_ad_char_polys;
    return j;
}

json fixtures_report();

template <class T>
json dispatch(const std::string& cmd, const Options& opt) {
    json report;
    if (cmd == "validate") {
        auto alg = load_algebra<T>(opt);
        report["valid"] = true;
        report["name"] = alg.name();
        report["dim"] = alg.dim();
        report["solvable"] = is_solvable(alg);
        return report;
    }
    if (cmd == "profile") {
        auto alg = load_algebra<T>(opt);
        return profile_json(invariant_profile(alg));
    }
    if (cmd == "nilradical") {
        auto alg = load_algebra<T>(opt);
        auto nil = nilradical(alg);
        report["dim"] = nil.dim();
        json basis = json::array();
        for (const auto& v : nil.basis()) basis.push_back(jvec(v));
        report["basis"] = std::move(basis);
        return report;
    }
    if (cmd == "derivations" || cmd == "skew-derivations") {
        auto exact = parse_algebra(slurp(opt.files.at(0)));
        auto alg = convert_algebra<T>(exact);
        auto space = cmd == "derivations" ? derivation_algebra(alg)
                                          : skew_derivations(alg, load_metric<T>(opt, exact));
        report["dim"] = space.basis.size();
        json basis = json::array();
        for (const auto& d : space.basis) basis.push_back(jgrid(d));
        report["basis"] = std::move(basis);
        return report;
    }
    if (cmd == "sigma") {
        auto alg = load_algebra<T>(opt);
        auto res = sigma(alg);
        report["algebra"] = algebra_document(res.algebra);
        report["phi"] = jgrid(res.witness.phi);
        report["already_completely_solvable"] = res.witness.phi.is_zero_matrix();
        return report;
    }
    if (cmd == "std-mod") {
        auto exact = parse_algebra(slurp(opt.files.at(0)));
        auto alg = convert_algebra<T>(exact);
        auto res = standard_modification(alg, load_metric<T>(opt, exact));
        report["algebra"] = algebra_document(res);
        return report;
    }
    if (cmd == "std-position") {
        auto exact = parse_algebra(slurp(opt.files.at(0)));
        auto alg = convert_algebra<T>(exact);
        auto [res, steps] = standard_position_algebra(alg, load_metric<T>(opt, exact));
        report["algebra"] = algebra_document(res);
        report["steps"] = steps;
        return report;
    }
    if (cmd == "equiv") {
        auto a = load_algebra<T>(opt, 0);
        auto b = load_algebra<T>(opt, 1);
        std::optional<Matrix<T>> cert;
        if (!opt.certificate_path.empty()) {
            json cj = json::parse(slurp(opt.certificate_path), nullptr, false);
            if (cj.is_discarded() || !cj.is_object() || !cj.contains("matrix"))
                throw ParseError("certificate file must be {\"matrix\": grid}");
            const json& grid = cj["matrix"];
            if (!grid.is_array() || grid.size() != a.dim())
                throw ParseError("certificate matrix has wrong shape");
            Matrix<T> c(a.dim(), a.dim());
            for (std::size_t i = 0; i < a.dim(); ++i) {
                if (!grid[i].is_array() || grid[i].size() != a.dim())
                    throw ParseError("certificate matrix has wrong shape");
                for (std::size_t k = 0; k < a.dim(); ++k) {
                    if (!grid[i][k].is_string())
                        throw ParseError("certificate entries must be \"p/q\" strings");
                    Rat r = rat_from_string(grid[i][k].get<std::string>());
                    c(i, k) = convert_matrix<T>(Matrix<Rat>{{r}})(0, 0);
                }
            }
            cert = std::move(c);
        }
        auto verdict = equivalence_check(a, b, cert);
        switch (verdict.status) {
            case EquivStatus::Equivalent: report["status"] = "equivalent"; break;
            case EquivStatus::NotEquivalent: report["status"] = "not_equivalent"; break;
            case EquivStatus::Unknown: report["status"] = "unknown"; break;
        }
        report["detail"] = verdict.detail;
        if (verdict.certificate) report["certificate"] = jgrid(*verdict.certificate);
        return report;
    }
    if (cmd == "ricci") {
        auto exact = parse_algebra(slurp(opt.files.at(0)));
        auto alg = convert_algebra<T>(exact);
        report["ricci"] = jgrid(ricci_operator(alg, load_metric<T>(opt, exact)));
        return report;
    }
    if (cmd == "soliton") {
        auto exact = parse_algebra(slurp(opt.files.at(0)));
        auto alg = convert_algebra<T>(exact);
        auto cert = soliton_solve(alg, load_metric<T>(opt, exact));
        report["c"] = jscalar(cert.c);
        report["D"] = jgrid(cert.d);
        report["residual"] = jscalar(cert.residual_sq);
        report["algebraic"] = cert.algebraic;
        return report;
    }
    if (cmd == "einstein-check") {
        auto exact = parse_algebra(slurp(opt.files.at(0)));
        auto alg = convert_algebra<T>(exact);
        auto res = einstein_check(alg, load_metric<T>(opt, exact));
        report["is_einstein"] = res.is_einstein;
        report["c"] = jscalar(res.c);
        report["residual"] = jscalar(res.residual_sq);
        return report;
    }
    throw InternalError("unhandled subcommand " + cmd);
}

json dispatch_exact_only(const std::string& cmd, const Options& opt) {
    json report;
    auto alg = parse_algebra(slurp(opt.files.at(0)));
    if (cmd == "pre-einstein") {
        auto pe = pre_einstein(alg);
        report["phi"] = jgrid(pe.phi);
        json eigs = json::array();
        for (const auto& [v, m] : pe.eigenvalues)
            eigs.push_back({{"value", v.str()}, {"multiplicity", m}});
        report["eigenvalues"] = std::move(eigs);
        return report;
    }
    // extend-einstein
    auto gram = load_metric<Rat>(opt, alg);
    auto cert = soliton_solve(alg, gram);
    auto ext = einstein_extension(alg, gram, cert);
    report["algebra"] = algebra_document(ext.algebra);
    report["gram"] = jgrid(ext.gram);
    report["t"] = ext.t.str();
    report["c"] = ext.check.c.str();
    report["is_einstein"] = ext.check.is_einstein;
    report["delta"] = jgrid(ext.delta_hat);
    return report;
}

/// Embedded corpus: the worked examples the library is pinned to.
json fixtures_report() {
    namespace fx = solvlie::fixtures;
    json cases = json::array();
    bool all = true;
    auto record = [&](const std::string& name, bool ok, const std::string& detail = "") {
        json c;
        c["name"] = name;
        c["pass"] = ok;
        if (!detail.empty()) c["detail"] = detail;
        cases.push_back(std::move(c));
        all = all && ok;
    };
    auto guarded = [&](const std::string& name, auto&& body) {
        try {
            record(name, body());
        } catch (const std::exception& e) {
            record(name, false, e.what());
        }
    };
    auto diag = [](std::initializer_list<Rat> d) { return Matrix<Rat>::diagonal(Vec<Rat>(d)); };

    guarded("h3_nilsoliton", [&] {
        auto cert = soliton_solve(fx::h3(), Matrix<Rat>::identity(3));
        return cert.c == Rat(-3, 2) && cert.d == diag({Rat(1), Rat(1), Rat(2)}) &&
               cert.residual_sq.is_zero() && cert.algebraic;
    });
    guarded("h3_ricci_oracle", [&] {
        auto id = Matrix<Rat>::identity(3);
        return ricci_operator(fx::h3(), id) == ricci_oracle_koszul(fx::h3(), id) &&
               ricci_operator(fx::h3(), id) == diag({Rat(-1, 2), Rat(-1, 2), Rat(1, 2)});
    });
    guarded("abelian_flat", [&] {
        return ricci_operator(fx::abelian(4), Matrix<Rat>::identity(4)).is_zero_matrix() &&
               is_flat(fx::abelian(4), Matrix<Rat>::identity(4));
    });
    guarded("hyperbolic_plane_einstein", [&] {
        auto res = einstein_check(fx::hyperbolic_plane(), Matrix<Rat>::identity(2));
        return res.is_einstein && res.c == Rat(-1);
    });
    guarded("e2tilde_sigma_flat", [&] {
        auto res = sigma(fx::e2_tilde());
        if (res.algebra.dim() != 3) return false;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t k = i + 1; k < 3; ++k)
                if (!vecops::is_zero(res.algebra.bracket_upper(i, k))) return false;
        return is_flat(fx::e2_tilde(), Matrix<Rat>::identity(3));
    });
    guarded("seven_dim_s_g0_soliton", [&] {
        auto cert = soliton_solve(fx::seven_dim_s(), Matrix<Rat>::identity(7));
        return cert.c == Rat(-4) && cert.residual_sq.is_zero() && cert.algebraic &&
               cert.d == diag({Rat(0), Rat(4), Rat(4), Rat(4), Rat(4), Rat(4), Rat(4)});
    });
    guarded("seven_dim_s_g_soliton", [&] {
        auto cert = soliton_solve(fx::seven_dim_s(), fx::seven_dim_g());
        return cert.c == Rat(-4) && cert.residual_sq.is_zero() && cert.algebraic;
    });
    guarded("modification_r_vs_s", [&] {
        auto verdict = equivalence_check(fx::seven_dim_r(), fx::seven_dim_s(),
                                         std::optional<Matrix<Rat>>(fx::r_to_s_certificate()));
        auto sg = sigma(fx::seven_dim_r());
        return verdict.status == EquivStatus::Equivalent && !sg.witness.phi.is_zero_matrix() &&
               complete_solvability_check(sg.algebra);
    });
    guarded("einstein_extension_g0", [&] {
        auto gram = Matrix<Rat>::identity(7);
        auto ext = einstein_extension(fx::seven_dim_s(), gram,
                                      soliton_solve(fx::seven_dim_s(), gram));
        return ext.algebra.dim() == 8 && ext.check.is_einstein && ext.t == Rat(3, 2) &&
               ext.check.c == Rat(-4);
    });
    guarded("einstein_extension_g", [&] {
        auto gram = fx::seven_dim_g();
        auto ext = einstein_extension(fx::seven_dim_s(), gram,
                                      soliton_solve(fx::seven_dim_s(), gram));
        return ext.algebra.dim() == 8 && ext.check.is_einstein && ext.check.c == Rat(-4);
    });
    guarded("einstein_extension_h3", [&] {
        auto gram = Matrix<Rat>::identity(3);
        auto ext = einstein_extension(fx::h3(), gram, soliton_solve(fx::h3(), gram));
        return ext.algebra.dim() == 4 && ext.check.is_einstein && ext.check.c < Rat(0);
    });

    json report;
    report["cases"] = std::move(cases);
    report["all_pass"] = all;
    return report;
}

int emit(const json& report, const Options& opt) {
    std::string text = opt.pretty ? report.dump(2) : report.dump();
    if (!opt.out_path.empty()) {
        std::ofstream out(opt.out_path, std::ios::binary);
        if (!out) throw ParseError("cannot open '" + opt.out_path + "' for writing");
        out << text << "\n";
    } else {
        std::cout << text << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and floating computations with solvable metric Lie algebras"};
    app.require_subcommand(1);

    Options opt;
    if (const char* env = std::getenv("SOLVLIE_MODE")) opt.mode = env;

    struct Cmd {
        const char* name;
        const char* help;
        int files;  // number of positional algebra documents
        bool exact_only;
    };
    const Cmd commands[] = {
        {"validate", "parse an algebra document and check the Jacobi identity", 1, false},
        {"profile", "compute the invariant profile of an algebra", 1, false},
        {"nilradical", "compute a basis of the nilradical", 1, false},
        {"derivations", "compute a basis of the derivation algebra", 1, false},
        {"skew-derivations", "compute the metric-skew derivations", 1, false},
        {"sigma", "normalize to the completely solvable representative", 1, false},
        {"std-mod", "apply one standard modification step", 1, false},
        {"std-position", "iterate standard modifications to standard position", 1, false},
        {"equiv", "decide equivalence of two solvable algebras", 2, false},
        {"ricci", "compute the Ricci operator for a metric", 1, false},
        {"soliton", "solve the algebraic soliton equation", 1, false},
        {"pre-einstein", "compute the pre-Einstein derivation of a nilpotent algebra", 1, true},
        {"einstein-check", "test whether a metric is Einstein", 1, false},
        {"extend-einstein", "extend a non-Einstein solvsoliton to an Einstein algebra", 1, true},
        {"fixtures", "run the embedded example corpus", 0, false},
    };

    std::string selected;
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--mode", opt.mode, "arithmetic mode: exact|float");
        sub->add_option("--tol", opt.tol, "rank tolerance in float mode");
        if (c.files >= 1) sub->add_option("file", opt.files, "algebra document(s)")
                              ->expected(c.files)->required();
        if (c.files >= 1) sub->add_option("--metric", opt.metric_path, "metric document");
        if (std::string(c.name) == "equiv")
            sub->add_option("--certificate", opt.certificate_path, "isomorphism candidate");
        sub->add_option("--out", opt.out_path, "write the report to a file");
        sub->add_flag("--pretty", opt.pretty, "indent the JSON report");
        sub->callback([&selected, name = std::string(c.name)] { selected = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (opt.mode != "exact" && opt.mode != "float") {
        std::cout << json{{"error", "Usage"}, {"detail", "--mode must be exact or float"}}.dump()
                  << "\n";
        return 2;
    }
    bool exact = opt.mode == "exact";
    if (!exact) float_tolerance().store(opt.tol);

    json report;
    report["command"] = selected;
    report["mode"] = opt.mode;
    if (!exact) report["tolerance"] = opt.tol;

    try {
        bool exact_only = selected == "pre-einstein" || selected == "extend-einstein";
        if (exact_only && !exact) {
            std::cout << json{{"error", "Usage"},
                              {"detail", selected + " requires --mode exact"}}.dump()
                      << "\n";
            return 2;
        }
        json payload;
        if (selected == "fixtures")
            payload = fixtures_report();
        else if (exact_only)
            payload = dispatch_exact_only(selected, opt);
        else
            payload = exact ? dispatch<Rat>(selected, opt) : dispatch<double>(selected, opt);
        report.update(payload);
        int rc = emit(report, opt);
        if (selected == "fixtures" && !report["all_pass"].get<bool>()) return 1;
        return rc;
    } catch (const ParseError& e) {
        std::cout << json{{"error", e.code()}, {"detail", e.what()}}.dump() << "\n";
        return 2;
    } catch (const SolvlieError& e) {
        std::cout << json{{"error", e.code()}, {"detail", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << json{{"error", "InternalError"}, {"detail", e.what()}}.dump() << "\n";
        return 1;
    }
}
