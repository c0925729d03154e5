#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "solvlie/jordan.hpp"
#include "solvlie/matrix.hpp"
#include "solvlie/poly.hpp"

using namespace solvlie;

namespace {

Matrix<Rat> rat_matrix(std::initializer_list<std::initializer_list<long>> rows) {
    Matrix<Rat> m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (long x : row) m(i, j++) = Rat(x);
        ++i;
    }
    return m;
}

Matrix<Rat> random_rat_matrix(std::mt19937& rng, std::size_t n, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> d(lo, hi);
    Matrix<Rat> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Rat(d(rng));
    return m;
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
    CHECK(Rat::parse("2/4").str() == "1/2");
    CHECK(Rat::parse("-6/4").str() == "-3/2");
    CHECK(Rat::parse("1").str() == "1");
    CHECK(Rat::parse("1/1").str() == "1");
    CHECK(Rat::parse("0/7").str() == "0");
    CHECK_THROWS(Rat::parse(""));
    CHECK_THROWS(Rat::parse("1/0"));
    CHECK(Rat(3, -6).str() == "-1/2");
}

TEST_CASE("nullspace") {
    SUBCASE("identity has trivial kernel") {
        CHECK(nullspace(Matrix<Rat>::identity(3)).empty());
    }
    SUBCASE("zero matrix has full kernel") {
        auto b = nullspace(Matrix<Rat>::zero(2, 2));
        REQUIRE(b.size() == 2);
        CHECK(b[0] == Vec<Rat>{Rat(1), Rat(0)});
        CHECK(b[1] == Vec<Rat>{Rat(0), Rat(1)});
    }
    SUBCASE("rank-one 2x2") {
        auto b = nullspace(rat_matrix({{1, 2}, {2, 4}}));
        REQUIRE(b.size() == 1);
        CHECK(b[0] == Vec<Rat>{Rat(-2), Rat(1)});
    }
    SUBCASE("deterministic canonicalization") {
        std::mt19937 rng(7);
        for (int k = 0; k < 25; ++k) {
            auto m = random_rat_matrix(rng, 4);
            CHECK(nullspace(m) == nullspace(m));
        }
    }
    SUBCASE("kernel vectors are annihilated and independent") {
        std::mt19937 rng(11);
        for (int k = 0; k < 25; ++k) {
            auto m = random_rat_matrix(rng, 5, -2, 2);
            auto b = nullspace(m);
            Span<Rat> sp(5);
            for (const auto& v : b) {
                CHECK(vecops::is_zero(m.apply(v)));
                CHECK(sp.insert(v));
            }
            CHECK(b.size() + rank(m) == 5);
        }
    }
}

TEST_CASE("char poly and determinant") {
    auto m = rat_matrix({{2, 1}, {0, 3}});
    auto p = char_poly(m);
    CHECK(p.coeffs() == Vec<Rat>{Rat(6), Rat(-5), Rat(1)});
    CHECK(determinant(m) == Rat(6));
    CHECK(p.eval(m).is_zero_matrix());
}

TEST_CASE("real root counting") {
    auto x = Poly<Rat>::x();
    auto c = [](long v) { return Poly<Rat>::constant(Rat(v)); };
    CHECK(real_root_count(x * x + c(1)) == 0);
    CHECK(real_root_count(x * x - c(2)) == 2);
    CHECK(real_root_count(x * x * x - x) == 3);
    CHECK(real_root_count(x * x) == 1);  // multiplicity discarded
    CHECK_THROWS_AS(real_root_count(Poly<Rat>()), ZeroPolynomial);
}

TEST_CASE("rational roots") {
    auto x = Poly<Rat>::x();
    auto c = [](long n, long d = 1) { return Poly<Rat>::constant(Rat(n, d)); };
    auto p = (x - c(1)) * (x - c(1)) * (x + c(1, 2)) * x;
    auto roots = rational_roots(p);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == std::pair<Rat, long>{Rat(-1, 2), 1});
    CHECK(roots[1] == std::pair<Rat, long>{Rat(0), 1});
    CHECK(roots[2] == std::pair<Rat, long>{Rat(1), 2});
}

TEST_CASE("quadratic factor extraction") {
    auto x = Poly<Rat>::x();
    auto c = [](long v) { return Poly<Rat>::constant(Rat(v)); };
    auto p = (x * x + c(1)) * (x * x - c(2));
    auto qs = rational_quadratic_factors(p);
    REQUIRE(qs.size() == 2);
    for (const auto& q : qs) CHECK(q.divides(p));
}

TEST_CASE("purely imaginary spectrum detection") {
    auto x = Poly<Rat>::x();
    auto c = [](long v) { return Poly<Rat>::constant(Rat(v)); };
    CHECK(has_purely_imaginary_spectrum(x * x + c(1)));
    CHECK(has_purely_imaginary_spectrum((x * x + c(1)) * (x * x + c(4))));
    CHECK(has_purely_imaginary_spectrum(x * (x * x + c(3))));
    CHECK_FALSE(has_purely_imaginary_spectrum(x * x - c(2)));
    CHECK_FALSE(has_purely_imaginary_spectrum(x - c(1)));
    // irreducible quartic with purely imaginary roots
    CHECK(has_purely_imaginary_spectrum(x * x * x * x + c(3) * x * x + c(1)));
}

TEST_CASE("jordan decomposition: diagonal") {
    auto m = Matrix<Rat>::diagonal({Rat(1), Rat(2), Rat(3)});
    auto js = jordan_chevalley(m);
    CHECK(js.semisimple == m);
    CHECK(js.nilpotent.is_zero_matrix());
    CHECK(js.real_part == m);
    CHECK(js.imaginary_part.is_zero_matrix());
}

TEST_CASE("jordan decomposition: rotation") {
    auto m = rat_matrix({{0, -1}, {1, 0}});
    auto js = jordan_chevalley(m);
    CHECK(js.semisimple == m);
    CHECK(js.nilpotent.is_zero_matrix());
    CHECK(js.real_part.is_zero_matrix());
    CHECK(js.imaginary_part == m);
}

TEST_CASE("jordan decomposition: 2x2 Jordan block") {
    auto m = rat_matrix({{1, 1}, {0, 1}});
    auto js = jordan_chevalley(m);
    CHECK(js.semisimple == Matrix<Rat>::identity(2));
    CHECK(js.nilpotent == rat_matrix({{0, 1}, {0, 0}}));
}

TEST_CASE("jordan decomposition: mixed spectrum with complex pair") {
    // block diag(rotation + shift by 2, nilpotent) has eigenvalues 2 +- i and 0
    auto m = rat_matrix({{2, -1, 0}, {1, 2, 0}, {0, 0, 0}});
    auto js = jordan_chevalley(m);
    CHECK(js.real_part == rat_matrix({{2, 0, 0}, {0, 2, 0}, {0, 0, 0}}));
    CHECK(js.imaginary_part == rat_matrix({{0, -1, 0}, {1, 0, 0}, {0, 0, 0}}));
}

TEST_CASE("jordan decomposition: real irrational spectrum stays whole") {
    auto m = rat_matrix({{0, 2}, {1, 0}});  // eigenvalues +-sqrt(2)
    auto js = jordan_chevalley(m);
    CHECK(js.real_part == m);
    CHECK(js.imaginary_part.is_zero_matrix());
}

TEST_CASE("jordan decomposition: unsupported spectrum errors") {
    // companion matrix of t^3 - 2: complex pair with irrational real part
    auto m = rat_matrix({{0, 0, 2}, {1, 0, 0}, {0, 1, 0}});
    CHECK_THROWS_AS(jordan_chevalley(m), IrrationalSpectrum);
}

TEST_CASE("jordan invariants on random matrices") {
    std::mt19937 rng(3);
    int done = 0;
    for (int k = 0; k < 60 && done < 30; ++k) {
        auto m = random_rat_matrix(rng, 4, -2, 2);
        JordanSplit<Rat> js;
        try {
            js = jordan_chevalley(m);
        } catch (const IrrationalSpectrum&) {
            continue;
        }
        ++done;
        CHECK(js.semisimple + js.nilpotent == m);
        auto comm = [](const Matrix<Rat>& a, const Matrix<Rat>& b) { return a * b - b * a; };
        CHECK(comm(js.semisimple, js.nilpotent).is_zero_matrix());
        CHECK(comm(js.real_part, js.imaginary_part).is_zero_matrix());
        Matrix<Rat> np = js.nilpotent;
        for (std::size_t i = 1; i < 4; ++i) np = np * js.nilpotent;
        CHECK(np.is_zero_matrix());
        CHECK(is_semisimple(js.semisimple));
        auto cp = char_poly(js.real_part);
        CHECK(real_root_count(squarefree_part(cp)) == squarefree_part(cp).degree());
        CHECK(has_purely_imaginary_spectrum(char_poly(js.imaginary_part)));
    }
    CHECK(done >= 10);
}

TEST_CASE("float jordan agrees with exact on a mixed example") {
    auto m = rat_matrix({{2, -1, 0}, {1, 2, 0}, {0, 0, 0}});
    Matrix<double> md(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) md(i, j) = m(i, j).to_double();
    auto ex = jordan_chevalley(m);
    auto fl = jordan_chevalley(md);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(fl.real_part(i, j) == doctest::Approx(ex.real_part(i, j).to_double()).epsilon(1e-8));
            CHECK(fl.semisimple(i, j) == doctest::Approx(ex.semisimple(i, j).to_double()).epsilon(1e-8));
        }
}

TEST_CASE("solve and inverse") {
    auto m = rat_matrix({{2, 1}, {1, 1}});
    auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK(*inv * m == Matrix<Rat>::identity(2));
    auto x = solve(rat_matrix({{1, 2}, {2, 4}}), Vec<Rat>{Rat(3), Rat(6)});
    REQUIRE(x.has_value());
    CHECK(!solve(rat_matrix({{1, 2}, {2, 4}}), Vec<Rat>{Rat(3), Rat(7)}).has_value());
}
