#include "solvlie/derivations.hpp"

namespace solvlie {

// Header-only templates; this unit pins explicit instantiations for the
// two supported scalar modes so dependent targets link fast.
template DerivationSpace<Rat> derivation_algebra<Rat>(const LieAlgebra<Rat>&);
template DerivationSpace<double> derivation_algebra<double>(const LieAlgebra<double>&);
template DerivationSpace<Rat> skew_derivations<Rat>(const LieAlgebra<Rat>&, const Matrix<Rat>&);
template DerivationSpace<double> skew_derivations<double>(const LieAlgebra<double>&,
                                                          const Matrix<double>&);
template bool imaginary_type_check<Rat>(const std::vector<Matrix<Rat>>&);
template bool imaginary_type_check<double>(const std::vector<Matrix<double>>&);

}  // namespace solvlie
