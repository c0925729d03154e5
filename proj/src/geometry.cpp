#include "solvlie/geometry.hpp"

namespace solvlie {

template Matrix<Rat> ricci_operator<Rat>(const LieAlgebra<Rat>&, const Matrix<Rat>&);
template Matrix<double> ricci_operator<double>(const LieAlgebra<double>&, const Matrix<double>&);
template Matrix<Rat> ricci_oracle_koszul<Rat>(const LieAlgebra<Rat>&, const Matrix<Rat>&);
template Matrix<double> ricci_oracle_koszul<double>(const LieAlgebra<double>&,
                                                    const Matrix<double>&);
template SolitonCertificate<Rat> soliton_solve<Rat>(const LieAlgebra<Rat>&, const Matrix<Rat>&);
template EinsteinReport<Rat> einstein_check<Rat>(const LieAlgebra<Rat>&, const Matrix<Rat>&);
template bool is_flat<Rat>(const LieAlgebra<Rat>&, const Matrix<Rat>&);

}  // namespace solvlie
