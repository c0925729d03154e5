#pragma once

#include <stdexcept>
#include <string>

namespace solvlie {

/// Domain errors carry a stable machine-readable code; the CLI maps them
/// onto structured JSON error reports.
class SolvlieError : public std::runtime_error {
public:
    SolvlieError(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define SOLVLIE_ERROR(Name)                                             \
    struct Name : SolvlieError {                                        \
        explicit Name(const std::string& detail = "")                   \
            : SolvlieError(#Name, detail) {}                            \
    }

SOLVLIE_ERROR(NonSquare);
SOLVLIE_ERROR(IrrationalSpectrum);
SOLVLIE_ERROR(JacobiViolation);
SOLVLIE_ERROR(NotSolvable);
SOLVLIE_ERROR(NotNilpotent);
SOLVLIE_ERROR(IrrationalWeights);
SOLVLIE_ERROR(NotDerivation);
SOLVLIE_ERROR(ActionNotClosed);
SOLVLIE_ERROR(NotPositiveDefinite);
SOLVLIE_ERROR(NotClosed);
SOLVLIE_ERROR(ConditionTwoFailed);
SOLVLIE_ERROR(ConditionThreeFailed);
SOLVLIE_ERROR(DegenerateComplement);
SOLVLIE_ERROR(NoStabilization);
SOLVLIE_ERROR(AlreadyEinstein);
SOLVLIE_ERROR(CommutationFailed);
SOLVLIE_ERROR(NoEinsteinScale);
SOLVLIE_ERROR(TorusHeuristicFailed);
SOLVLIE_ERROR(ParseError);
SOLVLIE_ERROR(InternalError);

#undef SOLVLIE_ERROR

}  // namespace solvlie
