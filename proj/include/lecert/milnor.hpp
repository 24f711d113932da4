#ifndef LECERT_MILNOR_HPP
#define LECERT_MILNOR_HPP

#include <optional>

#include "lecert/poly.hpp"

/**
 * Milnor numbers by exact linear algebra on truncated monomial spaces.
 *
 * d(D) = dim Q[z] / (J + m^{D+1}) where J is the Jacobian ideal. Once
 * d(D) = d(D+1), Nakayama's lemma gives m^{D+1} ⊆ J in the local ring, so
 * d(D) is the local Milnor number at the origin.
 */

namespace lecert {

/// d(D) for a t-free polynomial f.
long long truncated_colength(const PolyFamily& f, int D);

/// Local Milnor number of f at 0, or nullopt if d(D) has not stabilized
/// by D = degree_cap (non-isolated singularity or cap too small).
std::optional<long long> milnor_number_colength(const PolyFamily& f, int degree_cap = 40);

}   // namespace lecert

#endif
