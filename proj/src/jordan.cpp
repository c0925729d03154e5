#include "solvlie/jordan.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <complex>

namespace solvlie {

namespace {

enum class BlockKind { Real, ComplexPair, Imaginary };

struct SpectralFactor {
    Poly<Rat> factor;
    BlockKind kind;
    Rat real_value;  // real part of the eigenvalues (ComplexPair only)
};

void classify_factors(Poly<Rat> h, std::vector<SpectralFactor>& out) {
    if (h.degree() <= 0) return;
    if (has_real_spectrum(h)) {
        out.push_back({h, BlockKind::Real, Rat(0)});
        return;
    }
    if (has_purely_imaginary_spectrum(h)) {
        out.push_back({h, BlockKind::Imaginary, Rat(0)});
        return;
    }
    // Mixed spectrum: peel rational linear factors, then rational
    // quadratic factors, and classify the pieces.
    bool progressed = false;
    for (const auto& [root, mult] : rational_roots(h)) {
        Poly<Rat> lin = Poly<Rat>::x() - Poly<Rat>::constant(root);
        for (long k = 0; k < mult; ++k) h = h.divmod(lin).first;
        out.push_back({lin, BlockKind::Real, root});
        progressed = true;
    }
    std::vector<Poly<Rat>> quads;
    try {
        quads = rational_quadratic_factors(h);
    } catch (const std::overflow_error&) {
        quads.clear();
    }
    for (const auto& q : quads) {
        h = h.divmod(q).first;
        Rat p = q.coeff(1), c = q.coeff(0);
        Rat disc = p * p - Rat(4) * c;
        if (disc.sign() > 0)
            out.push_back({q, BlockKind::Real, Rat(0)});
        else
            out.push_back({q, BlockKind::ComplexPair, -(p / Rat(2))});
        progressed = true;
    }
    if (!progressed)
        throw IrrationalSpectrum("cannot split eigenvalue real parts over Q");
    classify_factors(h, out);
}

}  // namespace

JordanSplit<Rat> jordan_chevalley(const Matrix<Rat>& m) {
    if (!m.is_square()) throw NonSquare("jordan_chevalley");
    const std::size_t n = m.rows();
    JordanSplit<Rat> js;
    if (n == 0) {
        js.semisimple = js.nilpotent = js.real_part = js.imaginary_part = m;
        return js;
    }

    Poly<Rat> f = char_poly(m);
    Poly<Rat> fs = squarefree_part(f);
    Poly<Rat> fsd = fs.derivative();

    // Newton iteration on the squarefree characteristic polynomial; the
    // iterates keep the spectrum of m, on which fs' does not vanish.
    Matrix<Rat> a = m;
    bool converged = false;
    for (std::size_t it = 0; it < n + 2; ++it) {
        Matrix<Rat> fa = fs.eval(a);
        if (fa.is_zero_matrix()) {
            converged = true;
            break;
        }
        auto inv = inverse(fsd.eval(a));
        if (!inv) throw InternalError("jordan_chevalley: singular Newton step");
        a -= fa * *inv;
    }
    if (!converged && !fs.eval(a).is_zero_matrix())
        throw InternalError("jordan_chevalley: Newton did not converge");

    js.semisimple = a;
    js.nilpotent = m - a;

    // Real/imaginary split via primary decomposition of the semisimple part.
    std::vector<SpectralFactor> factors;
    classify_factors(fs, factors);

    std::vector<Vec<Rat>> columns;      // primary-block basis vectors
    std::vector<Vec<Rat>> real_images;  // real part applied to them
    for (const auto& sf : factors) {
        Matrix<Rat> fa = sf.factor.eval(a);
        for (auto& v : nullspace(fa)) {
            switch (sf.kind) {
                case BlockKind::Real:
                    real_images.push_back(a.apply(v));
                    break;
                case BlockKind::ComplexPair:
                    real_images.push_back(vecops::scale(v, sf.real_value));
                    break;
                case BlockKind::Imaginary:
                    real_images.push_back(vecops::zero<Rat>(n));
                    break;
            }
            columns.push_back(std::move(v));
        }
    }
    if (columns.size() != n)
        throw InternalError("jordan_chevalley: primary decomposition incomplete");
    Matrix<Rat> p = Matrix<Rat>::from_columns(columns);
    auto pinv = inverse(p);
    if (!pinv) throw InternalError("jordan_chevalley: singular primary basis");
    js.real_part = Matrix<Rat>::from_columns(real_images) * *pinv;
    js.imaginary_part = js.semisimple - js.real_part;
    return js;
}

bool is_semisimple(const Matrix<Rat>& m) {
    if (!m.is_square()) throw NonSquare("is_semisimple");
    if (m.rows() == 0) return true;
    return squarefree_part(char_poly(m)).eval(m).is_zero_matrix();
}

namespace {

using Cplx = std::complex<double>;

std::vector<Cplx> clustered_eigenvalues(const Matrix<double>& m, double tol) {
    const std::size_t n = m.rows();
    Eigen::MatrixXd em(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) em(i, j) = m(i, j);
    Eigen::EigenSolver<Eigen::MatrixXd> es(em, /*computeEigenvectors=*/false);
    std::vector<Cplx> raw(n);
    for (std::size_t i = 0; i < n; ++i) raw[i] = es.eigenvalues()(static_cast<long>(i));
    double scale = std::max(1.0, m.max_abs());
    std::vector<Cplx> reps;
    for (const auto& z : raw) {
        Cplx zz = z;
        if (std::fabs(zz.imag()) <= tol * scale) zz.imag(0.0);
        bool merged = false;
        for (auto& r : reps)
            if (std::abs(r - zz) <= tol * scale * 10) {
                merged = true;
                break;
            }
        if (!merged) reps.push_back(zz);
    }
    // keep conjugate symmetry
    for (const auto& r : reps)
        if (r.imag() > 0) {
            bool has_conj = false;
            for (const auto& s : reps)
                if (std::abs(s - std::conj(r)) <= tol * scale * 10) has_conj = true;
            if (!has_conj) throw InternalError("float jordan: conjugate pairing failed");
        }
    return reps;
}

Poly<double> real_poly_from_complex(const std::vector<Cplx>& coeffs) {
    Vec<double> r(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) r[i] = coeffs[i].real();
    return Poly<double>(r);
}

// Lagrange interpolation through the (conjugate-closed) node set; the
// values are conjugate-symmetric, so the result is a real polynomial.
Poly<double> interpolate_real(const std::vector<Cplx>& nodes, const std::vector<Cplx>& values) {
    const std::size_t k = nodes.size();
    std::vector<Cplx> acc(1, Cplx(0.0));
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Cplx> term{Cplx(1.0)};
        Cplx denom(1.0);
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            std::vector<Cplx> next(term.size() + 1, Cplx(0.0));
            for (std::size_t d = 0; d < term.size(); ++d) {
                next[d] += term[d] * (-nodes[j]);
                next[d + 1] += term[d];
            }
            term = std::move(next);
            denom *= nodes[i] - nodes[j];
        }
        if (acc.size() < term.size()) acc.resize(term.size(), Cplx(0.0));
        for (std::size_t d = 0; d < term.size(); ++d) acc[d] += values[i] / denom * term[d];
    }
    return real_poly_from_complex(acc);
}

}  // namespace

JordanSplit<double> jordan_chevalley(const Matrix<double>& m) {
    if (!m.is_square()) throw NonSquare("jordan_chevalley");
    const std::size_t n = m.rows();
    JordanSplit<double> js;
    if (n == 0) {
        js.semisimple = js.nilpotent = js.real_part = js.imaginary_part = m;
        return js;
    }
    double tol = float_tolerance().load();
    double scale = std::max(1.0, m.max_abs());
    auto reps = clustered_eigenvalues(m, tol);

    // real polynomial with the distinct eigenvalues as simple roots
    std::vector<Cplx> fc{Cplx(1.0)};
    for (const auto& r : reps) {
        std::vector<Cplx> next(fc.size() + 1, Cplx(0.0));
        for (std::size_t d = 0; d < fc.size(); ++d) {
            next[d] += fc[d] * (-r);
            next[d + 1] += fc[d];
        }
        fc = std::move(next);
    }
    Poly<double> fs = real_poly_from_complex(fc);
    Poly<double> fsd = fs.derivative();

    Matrix<double> a = m;
    for (std::size_t it = 0; it < n + 30; ++it) {
        Matrix<double> fa = fs.eval(a);
        if (fa.max_abs() <= 1e-13 * std::pow(scale + 1.0, static_cast<double>(reps.size())))
            break;
        auto inv = inverse(fsd.eval(a));
        if (!inv) throw InternalError("float jordan: singular Newton step");
        a -= fa * *inv;
    }
    js.semisimple = a;
    js.nilpotent = m - a;

    if (reps.size() == 1) {
        // single eigenvalue: the semisimple part is scalar
        Cplx lambda = reps[0];
        Matrix<double> r = Matrix<double>::identity(n) * lambda.real();
        js.real_part = r;
        js.imaginary_part = js.semisimple - r;
        return js;
    }
    std::vector<Cplx> values;
    for (const auto& r : reps) values.push_back(Cplx(r.real(), 0.0));
    Poly<double> g = interpolate_real(reps, values);
    js.real_part = g.eval(a);
    js.imaginary_part = js.semisimple - js.real_part;
    return js;
}

bool is_semisimple(const Matrix<double>& m) {
    auto js = jordan_chevalley(m);
    double scale = std::max(1.0, m.max_abs());
    return js.nilpotent.max_abs() <= float_tolerance().load() * scale * 100;
}

}  // namespace solvlie
