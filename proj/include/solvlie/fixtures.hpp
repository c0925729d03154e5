#pragma once

#include "lie_algebra.hpp"

namespace solvlie::fixtures {

/// Helper for assembling the structure-constant table from a sparse
/// bracket list.
class BracketTable {
public:
    BracketTable(std::vector<std::string> names) : names_(std::move(names)) {
        const std::size_t n = names_.size();
        c_.assign(n * (n - 1) / 2, vecops::zero<Rat>(n));
    }

    /// Sets [names[i], names[j]] = sum coeff_k * b_{target_k}; i < j required.
    BracketTable& set(std::size_t i, std::size_t j,
                      std::vector<std::pair<std::size_t, Rat>> terms) {
        if (i >= j || j >= names_.size()) throw std::invalid_argument("BracketTable::set");
        Vec<Rat> v = vecops::zero<Rat>(names_.size());
        for (const auto& [k, c] : terms) v[k] = c;
        c_[index(i, j)] = std::move(v);
        return *this;
    }

    LieAlgebra<Rat> build(const std::string& name) const {
        return LieAlgebra<Rat>(name, names_, c_);
    }

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        std::size_t n = names_.size();
        return i * n - i * (i + 1) / 2 + (j - i - 1);
    }
    std::vector<std::string> names_;
    std::vector<Vec<Rat>> c_;
};

/// 3-dimensional Heisenberg algebra: [e1,e2] = e3.
LieAlgebra<Rat> h3();

LieAlgebra<Rat> abelian(std::size_t n);

/// Non-abelian 2-dimensional algebra: [x,y] = y.
LieAlgebra<Rat> hyperbolic_plane();

/// Universal cover of the euclidean motion group: [A,X] = Y, [A,Y] = -X.
LieAlgebra<Rat> e2_tilde();

/// 7-dimensional completely solvable algebra RA + R^6 with
/// ad(A)|R^6 = diag(1,1,-1,-1,0,0); basis (A, E1..E6).
LieAlgebra<Rat> seven_dim_s();

/// The rotated companion of seven_dim_s on basis (A, B1, B2, E1..E4):
/// [A,Ei] = +-Ei as in seven_dim_s, [B1,E1]=E2, [B1,E2]=-E1,
/// [B2,E3]=E4, [B2,E4]=-E3.
LieAlgebra<Rat> seven_dim_r();

/// Isomorphism seven_dim_r -> seven_dim_s (columns are the images of
/// the r basis): A -> A, B1 -> E5, B2 -> E6, E1..E4 -> E1..E4.
Matrix<Rat> r_to_s_certificate();

/// Non-orthonormal inner product on seven_dim_s making 2*E5 a unit
/// vector: diag(1, 1, 1, 1, 1, 1/4, 1) in the (A, E1..E6) basis.
Matrix<Rat> seven_dim_g();

LieAlgebra<double> to_float(const LieAlgebra<Rat>& alg);

}  // namespace solvlie::fixtures
