#include "solvlie/modification.hpp"

namespace solvlie {

template ModificationResult<Rat> apply_modification<Rat>(const LieAlgebra<Rat>&,
                                                         const std::vector<Vec<Rat>>&,
                                                         const Matrix<Rat>&, const std::string&);
template SigmaResult<Rat> sigma<Rat>(const LieAlgebra<Rat>&);
template LieAlgebra<Rat> standard_modification<Rat>(const LieAlgebra<Rat>&, const Matrix<Rat>&);
template std::pair<LieAlgebra<Rat>, std::size_t> standard_position_algebra<Rat>(
    const LieAlgebra<Rat>&, const Matrix<Rat>&);
template EquivalenceVerdict<Rat> equivalence_check<Rat>(const LieAlgebra<Rat>&,
                                                        const LieAlgebra<Rat>&,
                                                        const std::optional<Matrix<Rat>>&);

}  // namespace solvlie
