#ifndef LECERT_TESTS_MODP_ORACLE_HPP
#define LECERT_TESTS_MODP_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "lecert/poly.hpp"

// Finite-field oracles. Coefficients are reduced modulo p, so callers use
// small integer or small-denominator coefficients.

namespace oracle {

/// Reduction of a rational modulo p (denominator must be a unit).
std::uint64_t reduce(const lecert::Rational& q, std::uint64_t p);

/// dim F_p[z] / (J + m^{D+1}) by dense elimination, for a t-free f.
long long colength_mod_p(const lecert::PolyFamily& f, int D, std::uint64_t p = 2147483647ULL);

/// Colength once it repeats for consecutive D, or nullopt by degree_cap.
std::optional<long long> milnor_mod_p(const lecert::PolyFamily& f, int degree_cap = 30,
                                      std::uint64_t p = 2147483647ULL);

/**
 * Brute-force search for a critical point of a 2-variable face polynomial
 * on (F_p*)². weights is the face normal; the torus action lets one
 * coordinate with weight coprime to p-1 be fixed to 1.
 */
bool torus_critical_point_mod_p(const lecert::PolyFamily& face_poly, const std::vector<long long>& weights,
                                std::uint64_t p = 10007);

}   // namespace oracle

#endif
