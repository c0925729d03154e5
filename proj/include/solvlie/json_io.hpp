#pragma once

#include <string>

#include "lie_algebra.hpp"

namespace solvlie {

/// Parses an algebra document:
///   { "name": str, "dim": int, "basis": [str, ...],
///     "brackets": [ {"x": str, "y": str, "value": {str: "p/q", ...}}, ... ],
///     "declared_nilradical": [ ["p/q", ...], ... ]   (optional) }
/// Structural problems (malformed JSON, shape/type mismatches, unknown
/// basis names, x == y) raise ParseError; a bracket table that fails the
/// Jacobi identity raises JacobiViolation.
LieAlgebra<Rat> parse_algebra(const std::string& text);

/// Canonical serialization: brackets listed for i < j with nonzero value
/// only, rationals in lowest terms ("1/1" becomes "1"). parse/serialize
/// round-trips are bit-exact on canonical documents.
std::string serialize_algebra(const LieAlgebra<Rat>& alg);

/// Parses a metric document { "algebra": str, "gram": [["p/q", ...], ...] }
/// against a previously parsed algebra. The grid must be dim x dim,
/// symmetric, and positive definite; the name must match the algebra's.
Matrix<Rat> parse_metric(const std::string& text, const LieAlgebra<Rat>& alg);

std::string serialize_metric(const LieAlgebra<Rat>& alg, const Matrix<Rat>& gram);

/// Rational-grid helpers shared with the CLI reports.
std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

}  // namespace solvlie
