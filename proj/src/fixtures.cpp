#include "solvlie/fixtures.hpp"

namespace solvlie::fixtures {

LieAlgebra<Rat> h3() {
    BracketTable t({"e1", "e2", "e3"});
    t.set(0, 1, {{2, Rat(1)}});
    return t.build("h3");
}

LieAlgebra<Rat> abelian(std::size_t n) { return LieAlgebra<Rat>::abelian(n); }

LieAlgebra<Rat> hyperbolic_plane() {
    BracketTable t({"x", "y"});
    t.set(0, 1, {{1, Rat(1)}});
    return t.build("hyp2");
}

LieAlgebra<Rat> e2_tilde() {
    BracketTable t({"A", "X", "Y"});
    t.set(0, 1, {{2, Rat(1)}});
    t.set(0, 2, {{1, Rat(-1)}});
    return t.build("e2_tilde");
}

LieAlgebra<Rat> seven_dim_s() {
    BracketTable t({"A", "E1", "E2", "E3", "E4", "E5", "E6"});
    t.set(0, 1, {{1, Rat(1)}});
    t.set(0, 2, {{2, Rat(1)}});
    t.set(0, 3, {{3, Rat(-1)}});
    t.set(0, 4, {{4, Rat(-1)}});
    return t.build("seven_dim_s");
}

LieAlgebra<Rat> seven_dim_r() {
    BracketTable t({"A", "B1", "B2", "E1", "E2", "E3", "E4"});
    t.set(0, 3, {{3, Rat(1)}});
    t.set(0, 4, {{4, Rat(1)}});
    t.set(0, 5, {{5, Rat(-1)}});
    t.set(0, 6, {{6, Rat(-1)}});
    t.set(1, 3, {{4, Rat(1)}});
    t.set(1, 4, {{3, Rat(-1)}});
    t.set(2, 5, {{6, Rat(1)}});
    t.set(2, 6, {{5, Rat(-1)}});
    return t.build("seven_dim_r");
}

Matrix<Rat> r_to_s_certificate() {
    Matrix<Rat> c(7, 7);
    c(0, 0) = Rat(1);  // A -> A
    c(5, 1) = Rat(1);  // B1 -> E5
    c(6, 2) = Rat(1);  // B2 -> E6
    c(1, 3) = Rat(1);  // E1..E4 fixed
    c(2, 4) = Rat(1);
    c(3, 5) = Rat(1);
    c(4, 6) = Rat(1);
    return c;
}

Matrix<Rat> seven_dim_g() {
    auto g = Matrix<Rat>::identity(7);
    g(5, 5) = Rat(1, 4);
    return g;
}

LieAlgebra<double> to_float(const LieAlgebra<Rat>& alg) {
    const std::size_t n = alg.dim();
    std::vector<Vec<double>> brackets;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec<double> v(n);
            const Vec<Rat>& b = alg.bracket_upper(i, j);
            for (std::size_t k = 0; k < n; ++k) v[k] = b[k].to_double();
            brackets.push_back(std::move(v));
        }
    return LieAlgebra<double>(alg.name(), alg.basis_names(), std::move(brackets));
}

}  // namespace solvlie::fixtures
