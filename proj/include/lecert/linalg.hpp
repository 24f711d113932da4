#ifndef LECERT_LINALG_HPP
#define LECERT_LINALG_HPP

#include <vector>

#include "lecert/rational.hpp"

// Small exact linear algebra used by the polyhedral code. Integer routines
// use fraction-free (Bareiss) elimination with 128-bit intermediates; every
// intermediate is a minor of the input, so they stay within the range of
// the final determinant.

namespace lecert::linalg {

using IntMatrix = std::vector<std::vector<long long>>;
using RatMatrix = std::vector<std::vector<Rational>>;

/// Determinant of a square integer matrix (empty matrix -> 1).
long long determinant(IntMatrix m);

/// Rank of an integer matrix with any shape.
int rank(IntMatrix m);

/// Rank of a rational matrix.
int rank(RatMatrix m);

/// Basis of the right kernel {x : m x = 0}, one vector per free column, in
/// reduced form (the free coordinate is 1, the other free coordinates 0).
RatMatrix kernel(RatMatrix m, int columns);

/// Generalized cross product of k-1 vectors in Z^k: the vector of signed
/// maximal minors, orthogonal to every row. Zero iff the rows are dependent.
std::vector<long long> cross(const IntMatrix& rows, int k);

/// Divides by the gcd of the entries (no-op on the zero vector).
void make_primitive(std::vector<long long>& v);

}   // namespace lecert::linalg

#endif
