// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "solvlie/derivations.hpp"
#include "solvlie/fixtures.hpp"
#include "solvlie/geometry.hpp"
#include "solvlie/json_io.hpp"
#include "solvlie/modification.hpp"
#include "support/random_algebras.hpp"

using namespace solvlie;
namespace fx = solvlie::fixtures;
namespace ts = solvlie::testsupport;

namespace {

std::string g_cli_path;  // path to the CLI binary, from argv[1]

Matrix<Rat> diag(std::initializer_list<Rat> d) { return Matrix<Rat>::diagonal(Vec<Rat>(d)); }

bool expect(bool cond, const std::string& what, std::string& detail) {
    if (!cond && detail.empty()) detail = what;
    return cond;
}

#define REQ(cond) ok = expect((cond), #cond, detail) && ok

std::vector<LieAlgebra<Rat>> corpus() {
    return {fx::h3(),         fx::abelian(3),    fx::hyperbolic_plane(),
            fx::e2_tilde(),   fx::seven_dim_s(), fx::seven_dim_r()};
}

// ---- criterion bodies ------------------------------------------------------

bool heisenberg_nilsoliton(std::string& detail) {
    bool ok = true;
    auto cert = soliton_solve(fx::h3(), Matrix<Rat>::identity(3));
    REQ(cert.c == Rat(-3, 2));
    REQ(cert.d == diag({Rat(1), Rat(1), Rat(2)}));
    REQ(cert.residual_sq.is_zero());
    REQ(cert.algebraic);
    auto id = Matrix<Rat>::identity(3);
    REQ(ricci_operator(fx::h3(), id) == ricci_oracle_koszul(fx::h3(), id));
    return ok;
}

bool pre_einstein_exactness(std::string& detail) {
    bool ok = true;
    auto h = pre_einstein(fx::h3());
    REQ(h.phi == diag({Rat(2, 3), Rat(2, 3), Rat(4, 3)}));
    for (std::size_t n = 1; n <= 8; ++n) {
        auto pe = pre_einstein(fx::abelian(n));
        REQ(pe.phi == Matrix<Rat>::identity(n));
    }
    for (const auto& alg : {fx::h3(), fx::abelian(4)}) {
        auto pe = pre_einstein(alg);
        long mult = 0;
        for (const auto& [v, m] : pe.eigenvalues) mult += m;  // all rational by type
        REQ(mult == static_cast<long>(alg.dim()));
        for (const auto& d : derivation_algebra(alg).basis)
            REQ((pe.phi * d).trace() == d.trace());
    }
    return ok;
}

bool seven_dim_fixture(std::string& detail) {
    bool ok = true;
    auto s = fx::seven_dim_s();  // construction validates the Jacobi identity
    auto nil_s = nilradical(s);
    REQ(nil_s.dim() == 6);
    for (std::size_t i = 1; i < 7; ++i) REQ(nil_s.contains(vecops::unit<Rat>(7, i)));

    auto g0 = Matrix<Rat>::identity(7);
    auto cert = soliton_solve(s, g0);
    REQ(cert.residual_sq.is_zero());
    REQ(cert.c == Rat(-4));
    REQ(cert.d == diag({Rat(0), Rat(4), Rat(4), Rat(4), Rat(4), Rat(4), Rat(4)}));
    REQ(ricci_operator(s, g0) == ricci_oracle_koszul(s, g0));

    // the modification: ambient = s extended by the rotations (1,2), (3,4)
    // of the E-plane; phi(E5) = first rotation, phi(E6) = second
    auto rotation = [](std::size_t n, std::size_t a, std::size_t b) {
        Matrix<Rat> m(n, n);
        m(b, a) = Rat(1);
        m(a, b) = Rat(-1);
        return m;
    };
    auto ambient = build_semidirect(s, {rotation(7, 1, 2), rotation(7, 3, 4)});
    std::vector<Vec<Rat>> r_basis;
    for (std::size_t i = 0; i < 7; ++i) r_basis.push_back(vecops::unit<Rat>(9, 2 + i));
    Matrix<Rat> phi(9, 7);
    phi(0, 5) = Rat(1);
    phi(1, 6) = Rat(1);
    auto mod = apply_modification(ambient, r_basis, phi);
    REQ(mod.map.condition1 && mod.map.condition2 && mod.map.condition3);
    REQ(mod.map.normal);

    auto r = fx::seven_dim_r();
    auto nil_r = nilradical(r);
    REQ(nil_r.dim() == 4);
    for (std::size_t i = 3; i < 7; ++i) REQ(nil_r.contains(vecops::unit<Rat>(7, i)));

    auto sg = sigma(r);
    auto c = fx::r_to_s_certificate();
    REQ(is_isomorphism(sg.algebra, s, c));
    REQ(solvlie::detail::same_structure(change_basis(s, c), sg.algebra));
    return ok;
}

bool sigma_and_standard_modification(std::string& detail) {
    bool ok = true;
    auto se = sigma(fx::e2_tilde());
    REQ(se.algebra.dim() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = i + 1; k < 3; ++k)
            REQ(vecops::is_zero(se.algebra.bracket_upper(i, k)));

    auto check_one = [&](const LieAlgebra<Rat>& alg, const Matrix<Rat>& gram) {
        auto [std_alg, steps] = standard_position_algebra(alg, gram);
        REQ(steps <= 2);
        auto sg = sigma(std_alg);
        REQ(sigma(sg.algebra).witness.phi.is_zero_matrix());  // idempotent
    };
    for (const auto& alg : corpus()) check_one(alg, Matrix<Rat>::identity(alg.dim()));
    std::mt19937 rng(101);
    for (int k = 0; k < 200; ++k) {
        std::size_t n = 2 + static_cast<std::size_t>(k % 3);
        auto alg = ts::random_splittable_solvable(rng, n);
        check_one(alg, k % 2 ? ts::random_gram(rng, n) : Matrix<Rat>::identity(n));
    }
    return ok;
}

bool ricci_oracle_equivalence(std::string& detail) {
    bool ok = true;
    for (const auto& alg : corpus()) {
        auto id = Matrix<Rat>::identity(alg.dim());
        REQ(ricci_operator(alg, id) == ricci_oracle_koszul(alg, id));
    }
    std::mt19937 rng(103);
    for (int k = 0; k < 100; ++k) {
        std::size_t n = 2 + static_cast<std::size_t>(k % 4);
        // mild scrambles keep the float comparison meaningful at 1e-9:
        // wild unimodular conjugation inflates Ricci entries to ~1e6 where
        // double arithmetic cannot resolve absolute differences that small
        auto alg = ts::random_solvable(rng, n, 3, 1);
        auto gram = ts::random_gram(rng, n, 3, 1);
        REQ(ricci_operator(alg, gram) == ricci_oracle_koszul(alg, gram));
        auto algf = fx::to_float(alg);
        Matrix<double> gramf(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) gramf(i, j) = gram(i, j).to_double();
        auto a = ricci_operator(algf, gramf);
        auto b = ricci_oracle_koszul(algf, gramf);
        double frob = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) frob += (a(i, j) - b(i, j)) * (a(i, j) - b(i, j));
        REQ(std::sqrt(frob) < 1e-9);
    }
    return ok;
}

bool einstein_extensions(std::string& detail) {
    bool ok = true;
    for (int which = 0; which < 2; ++which) {
        auto s = which == 0 ? fx::h3() : fx::seven_dim_s();
        auto gram = Matrix<Rat>::identity(s.dim());
        auto ext = einstein_extension(s, gram, soliton_solve(s, gram));
        REQ(ext.check.is_einstein);
        REQ(ext.check.residual_sq.is_zero());
        REQ(ext.check.c < Rat(0));

        // Heber suite on the extension
        auto nil = nilradical(ext.algebra);
        Matrix<Rat> cond(nil.dim(), ext.algebra.dim());
        for (std::size_t r = 0; r < nil.dim(); ++r) {
            Vec<Rat> gn = ext.gram.apply(nil.basis()[r]);
            for (std::size_t j = 0; j < ext.algebra.dim(); ++j) cond(r, j) = gn[j];
        }
        auto a_basis = nullspace(cond);
        for (const auto& x : a_basis) {
            for (const auto& y : a_basis) REQ(vecops::is_zero(ext.algebra.bracket(x, y)));
            REQ(is_semisimple(ext.algebra.ad(x)));
        }
        Vec<Rat> tau(ext.algebra.dim());
        for (std::size_t a = 0; a < ext.algebra.dim(); ++a)
            tau[a] = ext.algebra.ad_basis(a).trace();
        Vec<Rat> h = inverse(ext.gram)->apply(tau);
        Matrix<Rat> adh = ext.algebra.ad(h);
        Matrix<Rat> restr(nil.dim(), nil.dim());
        bool coords_ok = true;
        for (std::size_t j = 0; j < nil.dim(); ++j) {
            auto coords = nil.coordinates(adh.apply(nil.basis()[j]));
            if (!coords) { coords_ok = false; break; }
            for (std::size_t i = 0; i < nil.dim(); ++i) restr(i, j) = (*coords)[i];
        }
        REQ(coords_ok);
        if (!coords_ok) continue;
        auto roots = rational_roots(char_poly(jordan_chevalley(restr).real_part));
        long total = 0;
        mpz_class lcm = 1;
        for (const auto& [r, mult] : roots) {
            total += mult;
            REQ(r.sign() > 0);
            mpz_class g, d = r.den();
            mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
            lcm = lcm / g * d;
        }
        REQ(total == static_cast<long>(nil.dim()));
        for (const auto& [r, mult] : roots) REQ((r * Rat(lcm)).is_integer());
    }
    return ok;
}

bool normality_property(std::string& detail) {
    bool ok = true;
    std::mt19937 rng(107);
    std::uniform_int_distribution<int> coeff(-2, 2);
    int built = 0;
    for (int k = 0; k < 2000 && built < 100; ++k) {
        std::size_t n = 3 + static_cast<std::size_t>(k % 2);
        auto s = ts::random_completely_solvable(rng, n);
        auto skew = skew_derivations(s, Matrix<Rat>::identity(n));
        if (skew.dim() == 0) continue;
        Matrix<Rat> j(n, n);
        for (const auto& b : skew.basis) j += b * Rat(coeff(rng));
        if (j.is_zero_matrix()) continue;
        auto g = build_semidirect(s, {j});
        Span<Rat> killed(n);
        auto derived = characteristic_series(s, SeriesKind::Derived);
        for (const auto& sp : derived[1].basis()) killed.insert(sp);
        for (std::size_t c = 0; c < n; ++c) {
            Vec<Rat> col = j.column(c);
            if (!vecops::is_zero(col)) killed.insert(col);
        }
        Matrix<Rat> ann(killed.dim(), n);
        for (std::size_t rr = 0; rr < killed.dim(); ++rr)
            for (std::size_t c = 0; c < n; ++c) ann(rr, c) = killed.basis()[rr][c];
        auto alphas = nullspace(ann);
        if (alphas.empty()) continue;
        std::vector<Vec<Rat>> r_basis;
        for (std::size_t i = 0; i < n; ++i) r_basis.push_back(vecops::unit<Rat>(n + 1, 1 + i));
        Matrix<Rat> phi(n + 1, n);
        for (std::size_t c = 0; c < n; ++c) phi(0, c) = alphas.front()[c];
        auto res = apply_modification(g, r_basis, phi);
        REQ(res.map.condition1 && res.map.condition2 && res.map.condition3);
        REQ(res.map.normal);
        ++built;
    }
    REQ(built == 100);
    return ok;
}

bool equivalence_verdicts(std::string& detail) {
    bool ok = true;
    auto none = std::optional<Matrix<Rat>>{};
    REQ(equivalence_check(fx::e2_tilde(), fx::abelian(3), none).status ==
        EquivStatus::Equivalent);
    REQ(equivalence_check(fx::h3(), fx::abelian(3), none).status == EquivStatus::NotEquivalent);
    auto v = equivalence_check(fx::seven_dim_r(), fx::seven_dim_s(),
                               std::optional<Matrix<Rat>>(fx::r_to_s_certificate()));
    REQ(v.status == EquivStatus::Equivalent);
    REQ(v.certificate.has_value());
    return ok;
}

bool scaling_covariance(std::string& detail) {
    bool ok = true;
    std::mt19937 rng(109);
    std::uniform_int_distribution<int> num(1, 5), den(1, 5);
    for (int k = 0; k < 50; ++k) {
        std::size_t n = 2 + static_cast<std::size_t>(k % 3);
        auto alg = ts::random_solvable(rng, n);
        auto gram = ts::random_gram(rng, n);
        Rat s(num(rng), den(rng));
        auto scaled = gram * s;
        REQ(ricci_operator(alg, scaled) * s == ricci_operator(alg, gram));
        auto c1 = soliton_solve(alg, gram);
        auto c2 = soliton_solve(alg, scaled);
        REQ(c1.residual_sq.is_zero() == c2.residual_sq.is_zero());
        if (c1.residual_sq.is_zero()) {
            REQ(c2.c * s == c1.c);
            REQ(c2.d * s == c1.d);
        }
    }
    return ok;
}

int run_cli(const std::string& args, std::string& output) {
    std::string cmd = g_cli_path + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return -1;
    char buf[4096];
    output.clear();
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) output.append(buf, got);
    int status = pclose(pipe);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool cli_contract(std::string& detail) {
    bool ok = true;
    if (g_cli_path.empty()) {
        detail = "CLI path not supplied";
        return false;
    }
    std::string out;
    REQ(run_cli("fixtures", out) == 0);

    auto dir = std::filesystem::temp_directory_path() / "solvlie_acceptance";
    std::filesystem::create_directories(dir);
    for (const auto& alg : corpus()) {
        std::string once = serialize_algebra(alg);
        std::string twice = serialize_algebra(parse_algebra(once));
        REQ(once == twice);
        auto file = dir / (alg.name() + ".json");
        std::ofstream(file) << once;
        REQ(run_cli("validate " + file.string(), out) == 0);
        std::string mtext = serialize_metric(alg, Matrix<Rat>::identity(alg.dim()));
        REQ(serialize_metric(alg, parse_metric(mtext, alg)) == mtext);
    }
    auto bad = dir / "bad.json";
    std::ofstream(bad) << "{ not json";
    REQ(run_cli("validate " + bad.string(), out) == 2);
    REQ(out.find("\"error\"") != std::string::npos);
    auto shape = dir / "shape.json";
    std::ofstream(shape) << R"({"algebra": "h3", "gram": [["1","0"],["0","1"],["0","0"]]})";
    auto h3file = dir / "h3.json";
    REQ(run_cli("ricci " + h3file.string() + " --metric " + shape.string(), out) == 2);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_cli_path = argv[1];

    struct Criterion {
        const char* name;
        double limit_seconds;
        std::function<bool(std::string&)> body;
    };
    const Criterion criteria[] = {
        {"1 heisenberg nilsoliton exact certificate", 1.0, heisenberg_nilsoliton},
        {"2 pre-einstein exactness", 2.0, pre_einstein_exactness},
        {"3 seven-dim fixture end to end", 5.0, seven_dim_fixture},
        {"4 sigma and standard modification suite", 30.0, sigma_and_standard_modification},
        {"5 ricci oracle equivalence", 60.0, ricci_oracle_equivalence},
        {"6 einstein extensions and structure suite", 10.0, einstein_extensions},
        {"7 normality of random modifications", 30.0, normality_property},
        {"8 equivalence verdicts", 5.0, equivalence_verdicts},
        {"9 scaling covariance", 30.0, scaling_covariance},
        {"10 cli contract", 10.0, cli_contract},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::string detail;
        bool ok = false;
        auto start = std::chrono::steady_clock::now();
        try {
            ok = c.body(detail);
        } catch (const std::exception& e) {
            detail = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        if (secs > c.limit_seconds) {
            ok = false;
            detail = "over time limit";
        }
        std::ostringstream line;
        line << (ok ? "PASS" : "FAIL") << "  criterion " << c.name << "  (" << std::fixed;
        line.precision(2);
        line << secs << " s)";
        if (!ok && !detail.empty()) line << "  [" << detail << "]";
        std::cout << line.str() << "\n";
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
