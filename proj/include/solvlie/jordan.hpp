#pragma once

#include "errors.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace solvlie {

/// Additive Jordan-Chevalley data: m = semisimple + nilpotent, and the
/// further split semisimple = real_part + imaginary_part into commuting
/// semisimple operators with real, respectively purely imaginary,
/// eigenvalues.
template <class T>
struct JordanSplit {
    Matrix<T> semisimple;
    Matrix<T> nilpotent;
    Matrix<T> real_part;
    Matrix<T> imaginary_part;
};

/// Exact path. The semisimple part is found by Newton iteration on the
/// squarefree part of the characteristic polynomial; the real/imaginary
/// split works blockwise on an exact primary decomposition. Throws
/// IrrationalSpectrum when eigenvalue real parts cannot be separated
/// over the supported fields (rational real parts, fully real blocks,
/// purely imaginary blocks).
JordanSplit<Rat> jordan_chevalley(const Matrix<Rat>& m);

/// Floating path: eigenvalue clustering plus spectral interpolation.
JordanSplit<double> jordan_chevalley(const Matrix<double>& m);

/// Exact semisimplicity test: the squarefree part of the characteristic
/// polynomial annihilates the matrix.
bool is_semisimple(const Matrix<Rat>& m);
bool is_semisimple(const Matrix<double>& m);

}  // namespace solvlie
