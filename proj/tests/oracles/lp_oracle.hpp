#ifndef LECERT_TESTS_LP_ORACLE_HPP
#define LECERT_TESTS_LP_ORACLE_HPP

#include <vector>

#include "lecert/poly.hpp"
#include "lecert/rational.hpp"

// Exact feasibility LP for Newton polyhedron membership, written
// independently of the library's facet enumeration.

namespace oracle {

/// Is {x >= 0 : A x = b} nonempty? Phase-one simplex over the rationals
/// with Bland's rule.
bool feasible(std::vector<std::vector<lecert::Rational>> A, std::vector<lecert::Rational> b);

/// p ∈ conv(points) + R^n_+ .
bool in_newton_polyhedron(const std::vector<lecert::Exponent>& points, const lecert::Exponent& p);

/// Extreme points of conv(support) + R^n_+: support points not in the
/// polyhedron of the remaining points.
std::vector<lecert::Exponent> lp_vertices(std::vector<lecert::Exponent> support);

}   // namespace oracle

#endif
