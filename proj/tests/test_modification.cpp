#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "solvlie/fixtures.hpp"
#include "solvlie/modification.hpp"
#include "support/random_algebras.hpp"

using namespace solvlie;
namespace fx = solvlie::fixtures;
namespace ts = solvlie::testsupport;

namespace {

Matrix<Rat> rotation(std::size_t n, std::size_t a, std::size_t b) {
    Matrix<Rat> m(n, n);
    m(b, a) = Rat(1);
    m(a, b) = Rat(-1);
    return m;
}

/// seven_dim_s extended by the two commuting rotations as derivations;
/// basis (d1, d2, A, E1..E6).
LieAlgebra<Rat> s_with_rotations() {
    return build_semidirect(fx::seven_dim_s(), {rotation(7, 1, 2), rotation(7, 3, 4)});
}

Matrix<Rat> r_to_s_certificate() { return fx::r_to_s_certificate(); }

bool same_structure(const LieAlgebra<Rat>& a, const LieAlgebra<Rat>& b) {
    if (a.dim() != b.dim()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i + 1; j < a.dim(); ++j)
            if (a.bracket_upper(i, j) != b.bracket_upper(i, j)) return false;
    return true;
}

}  // namespace

TEST_CASE("rotation modification inside the extended ambient") {
    auto g = s_with_rotations();
    // r = the embedded seven_dim_s at coordinates 2..8
    std::vector<Vec<Rat>> r_basis;
    for (std::size_t i = 0; i < 7; ++i) r_basis.push_back(vecops::unit<Rat>(9, 2 + i));
    // phi(E5) = first rotation, phi(E6) = second, zero elsewhere
    Matrix<Rat> phi(9, 7);
    phi(0, 5) = Rat(1);
    phi(1, 6) = Rat(1);
    auto res = apply_modification(g, r_basis, phi);
    CHECK(res.map.condition1);
    CHECK(res.map.condition2);
    CHECK(res.map.condition3);
    CHECK(res.map.normal);
    CHECK(nilradical(res.algebra).dim() == 4);
    CHECK_FALSE(complete_solvability_check(res.algebra));
    // result basis order (A, E1..E4, B1, B2); permute into the fixture
    Matrix<Rat> p(7, 7);
    p(0, 0) = Rat(1);
    p(3, 1) = Rat(1);
    p(4, 2) = Rat(1);
    p(5, 3) = Rat(1);
    p(6, 4) = Rat(1);
    p(1, 5) = Rat(1);
    p(2, 6) = Rat(1);
    CHECK(is_isomorphism(res.algebra, fx::seven_dim_r(), p));
}

TEST_CASE("zero phi is the trivial modification") {
    auto s = fx::seven_dim_s();
    std::vector<Vec<Rat>> basis;
    for (std::size_t i = 0; i < 7; ++i) basis.push_back(vecops::unit<Rat>(7, i));
    auto res = apply_modification(s, basis, Matrix<Rat>::zero(7, 7));
    CHECK(same_structure(res.algebra, s));
    CHECK(res.map.normal);
}

TEST_CASE("modification condition failures") {
    SUBCASE("primed span not closed") {
        // r = span(X, Y) in e2_tilde, phi(X) = A: [X+A, Y] = -X leaves the span
        auto e = fx::e2_tilde();
        std::vector<Vec<Rat>> r = {vecops::unit<Rat>(3, 1), vecops::unit<Rat>(3, 2)};
        Matrix<Rat> phi(3, 2);
        phi(0, 0) = Rat(1);
        CHECK_THROWS_AS(apply_modification(e, r, phi), NotClosed);
    }
    SUBCASE("real-spectrum phi image fails condition two") {
        // ambient h3 x R delta with delta = diag(1,1,2); phi(e1) = delta
        auto g = build_semidirect(fx::h3(), {Matrix<Rat>::diagonal({Rat(1), Rat(1), Rat(2)})});
        std::vector<Vec<Rat>> r;
        for (std::size_t i = 1; i < 4; ++i) r.push_back(vecops::unit<Rat>(4, i));
        Matrix<Rat> phi(4, 3);
        phi(0, 0) = Rat(1);
        CHECK_THROWS_AS(apply_modification(g, r, phi), ConditionTwoFailed);
    }
    SUBCASE("phi image failing to normalize r fails condition three") {
        // ambient s x rotations, r = span(E1), phi(E1) = rotation d1:
        // [d1, E1] = E2 is outside r
        auto g = s_with_rotations();
        std::vector<Vec<Rat>> r = {vecops::unit<Rat>(9, 3)};
        Matrix<Rat> phi(9, 1);
        phi(0, 0) = Rat(1);
        CHECK_THROWS_AS(apply_modification(g, r, phi), ConditionThreeFailed);
    }
    SUBCASE("non-solvable source is rejected") {
        fx::BracketTable t({"h", "e", "f"});
        t.set(0, 1, {{1, Rat(2)}});
        t.set(0, 2, {{2, Rat(-2)}});
        t.set(1, 2, {{0, Rat(1)}});
        auto sl2 = t.build("sl2");
        std::vector<Vec<Rat>> r;
        for (std::size_t i = 0; i < 3; ++i) r.push_back(vecops::unit<Rat>(3, i));
        CHECK_THROWS_AS(apply_modification(sl2, r, Matrix<Rat>::zero(3, 3)), NotSolvable);
    }
}

TEST_CASE("sigma fixes completely solvable algebras") {
    for (const auto& alg :
         {fx::h3(), fx::abelian(4), fx::hyperbolic_plane(), fx::seven_dim_s()}) {
        auto res = sigma(alg);
        CHECK(same_structure(res.algebra, alg));
        CHECK(res.witness.phi.is_zero_matrix());
    }
}

TEST_CASE("sigma of the euclidean motion algebra is abelian") {
    auto res = sigma(fx::e2_tilde());
    CHECK(res.algebra.dim() == 3);
    CHECK(same_structure(res.algebra, fx::abelian(3)));
    CHECK(res.witness.normal);
}

TEST_CASE("sigma of the rotated seven-dim algebra recovers the straight one") {
    auto res = sigma(fx::seven_dim_r());
    CHECK(complete_solvability_check(res.algebra));
    CHECK(is_isomorphism(res.algebra, fx::seven_dim_s(), r_to_s_certificate()));
    // the witness map X -> X + phi(X) is a linear bijection
    REQUIRE(res.witness.primed_basis.size() == 7);
    Span<Rat> primed(res.witness.ambient.dim());
    for (const auto& v : res.witness.primed_basis) CHECK(primed.insert(v));
}

TEST_CASE("sigma is idempotent") {
    for (const auto& alg : {fx::e2_tilde(), fx::seven_dim_r(), fx::seven_dim_s(), fx::h3()}) {
        auto once = sigma(alg).algebra;
        auto twice = sigma(once).algebra;
        CHECK(same_structure(once, twice));
    }
}

TEST_CASE("standard modification fixes completely solvable algebras") {
    std::mt19937 rng(31);
    for (const auto& alg :
         {fx::h3(), fx::abelian(3), fx::hyperbolic_plane(), fx::seven_dim_s()}) {
        CHECK(same_structure(standard_modification(alg, Matrix<Rat>::identity(alg.dim())), alg));
        auto gram = ts::random_gram(rng, alg.dim());
        CHECK(same_structure(standard_modification(alg, gram), alg));
    }
}

TEST_CASE("standard modification straightens the euclidean motion algebra") {
    auto out = standard_modification(fx::e2_tilde(), Matrix<Rat>::identity(3));
    CHECK(same_structure(out, fx::abelian(3)));
    auto [fixed, steps] = standard_position_algebra(fx::e2_tilde(), Matrix<Rat>::identity(3));
    CHECK(same_structure(fixed, fx::abelian(3)));
    CHECK(steps == 1);
}

TEST_CASE("standard position step counts on fixtures") {
    auto [s, s_steps] = standard_position_algebra(fx::seven_dim_s(), Matrix<Rat>::identity(7));
    CHECK(s_steps == 0);
    CHECK(same_structure(s, fx::seven_dim_s()));
    auto [a, a_steps] = standard_position_algebra(fx::abelian(4), Matrix<Rat>::identity(4));
    CHECK(a_steps == 0);
    auto [r, r_steps] = standard_position_algebra(fx::seven_dim_r(), Matrix<Rat>::identity(7));
    CHECK(r_steps <= 2);
    CHECK(complete_solvability_check(r));
}

TEST_CASE("standard position stabilizes on random solvable algebras") {
    std::mt19937 rng(41);
    for (int k = 0; k < 40; ++k) {
        std::size_t n = 2 + static_cast<std::size_t>(k % 3);
        auto alg = ts::random_solvable(rng, n);
        auto gram = k % 2 ? ts::random_gram(rng, n) : Matrix<Rat>::identity(n);
        auto [fixed, steps] = standard_position_algebra(alg, gram);
        CHECK(steps <= 2);
        CHECK(same_structure(standard_modification(fixed, gram), fixed));
    }
}

TEST_CASE("random modifications of completely solvable sources are normal") {
    std::mt19937 rng(53);
    std::uniform_int_distribution<int> coeff(-2, 2);
    int built = 0;
    for (int k = 0; k < 60 && built < 25; ++k) {
        std::size_t n = 3 + static_cast<std::size_t>(k % 2);
        auto s = ts::random_completely_solvable(rng, n);
        auto skew = skew_derivations(s, Matrix<Rat>::identity(n));
        if (skew.dim() == 0) continue;
        Matrix<Rat> j(n, n);
        for (const auto& b : skew.basis) j += b * Rat(coeff(rng));
        if (j.is_zero_matrix()) continue;
        auto g = build_semidirect(s, {j});
        // functional vanishing on [s,s] + im(J) keeps the primed span closed
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
        const Vec<Rat>& alpha = alphas.front();
        std::vector<Vec<Rat>> r_basis;
        for (std::size_t i = 0; i < n; ++i) r_basis.push_back(vecops::unit<Rat>(n + 1, 1 + i));
        Matrix<Rat> phi(n + 1, n);
        for (std::size_t c = 0; c < n; ++c) phi(0, c) = alpha[c];
        auto res = apply_modification(g, r_basis, phi);
        CHECK(res.map.condition1);
        CHECK(res.map.condition2);
        CHECK(res.map.condition3);
        CHECK(res.map.normal);
        ++built;
    }
    CHECK(built >= 10);
}

TEST_CASE("equivalence verdicts") {
    auto eq1 = equivalence_check(fx::e2_tilde(), fx::abelian(3));
    CHECK(eq1.status == EquivStatus::Equivalent);
    auto eq2 = equivalence_check(fx::h3(), fx::abelian(3));
    CHECK(eq2.status == EquivStatus::NotEquivalent);
    CHECK(!eq2.detail.empty());
    auto eq3 =
        equivalence_check(fx::seven_dim_r(), fx::seven_dim_s(), {r_to_s_certificate()});
    CHECK(eq3.status == EquivStatus::Equivalent);
    REQUIRE(eq3.certificate.has_value());
    // symmetric order accepts the same certificate through its inverse
    auto eq4 =
        equivalence_check(fx::seven_dim_s(), fx::seven_dim_r(), {r_to_s_certificate()});
    CHECK(eq4.status == EquivStatus::Equivalent);
    // symmetry of status without certificates
    CHECK(equivalence_check(fx::abelian(3), fx::h3()).status == EquivStatus::NotEquivalent);
    CHECK(equivalence_check(fx::abelian(3), fx::e2_tilde()).status == EquivStatus::Equivalent);
}

TEST_CASE("equivalence via monomial search after a basis scramble") {
    auto h = fx::h3();
    Matrix<Rat> p(3, 3);  // swap e1, e2
    p(1, 0) = Rat(1);
    p(0, 1) = Rat(1);
    p(2, 2) = Rat(1);
    auto moved = change_basis(h, p);
    auto eq = equivalence_check(h, moved);
    CHECK(eq.status == EquivStatus::Equivalent);
    REQUIRE(eq.certificate.has_value());
    CHECK(is_isomorphism(h, moved, *eq.certificate));
}

TEST_CASE("equivalence certificates preserve invariant profiles") {
    auto eq = equivalence_check(fx::seven_dim_r(), fx::seven_dim_s(), {r_to_s_certificate()});
    REQUIRE(eq.status == EquivStatus::Equivalent);
    auto s1 = sigma(fx::seven_dim_r()).algebra;
    auto s2 = sigma(fx::seven_dim_s()).algebra;
    CHECK_FALSE(profile_difference(invariant_profile(s1), invariant_profile(s2)).has_value());
}
