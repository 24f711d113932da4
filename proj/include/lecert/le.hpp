#ifndef LECERT_LE_HPP
#define LECERT_LE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "json.hpp"
#include "lecert/poly.hpp"

/**
 * Lê numbers of a line singularity along the z1-axis.
 *
 * For a large enough, μ(f_t + z1^a) = λ⁰ + (a-1)λ¹ (Iomdine–Lê–Massey), and
 * f_t + z1^a is convenient, so for non-degenerate germs both sides are
 * Newton numbers. λ¹ is also the Milnor number of a generic slice z1 = c.
 */

namespace lecert {

struct LeNumbers
{
    long long lambda0 = 0;
    long long lambda1 = 0;
    int exponent_a = 0;
    /// a' -> ν(f_t + z1^{a'}) over the window a..a+2.
    std::map<int, long long> nu_values;
    std::optional<long long> slice_mu;

    friend bool operator==(const LeNumbers&, const LeNumbers&) = default;
};

/// ν(f) certified as the Milnor number: f must be convenient and
/// non-degenerate (tier 1..3 checks). Throws DomainError otherwise.
long long milnor_via_nu(const PolyFamily& f, int tier = 3, std::uint64_t seed = 42);

/// ν(f + z1^a) if f + z1^a is convenient and non-degenerate, else nullopt.
std::optional<long long> certified_nu_with_power(const PolyFamily& f, int a, int tier = 3, std::uint64_t seed = 42);

/**
 * Smallest a >= max(M+2, 3), M the largest z1-exponent in the support, such
 * that for every sample a' -> ν(f_t + z1^{a'}) is affine on {a, a+1, a+2}
 * with each f_t + z1^{a'} convenient and non-degenerate. Throws DomainError
 * ("stabilization not reached") past M+64.
 */
int choose_exponent_a(const PolyFamily& family, const std::vector<Rational>& t_samples, int tier = 3,
                      std::uint64_t seed = 42);

/// λ⁰, λ¹ from the window a..a+2. f_t must be t-free. Throws DomainError
/// ("ILM extraction failed") on negative values or an inconsistent window.
LeNumbers le_numbers(const PolyFamily& f_t, int a, int tier = 3, std::uint64_t seed = 42);

/// Milnor number of one slice z1 = c (constant term dropped): μ = ν when
/// convenient and non-degenerate, else the colength oracle.
std::optional<long long> slice_milnor(const PolyFamily& f_t, const Rational& c, int tier = 3,
                                      std::uint64_t seed = 42);

/// Common slice Milnor number over random small nonzero c, or nullopt when
/// the trials disagree or all fail.
std::optional<long long> generic_slice_milnor(const PolyFamily& f_t, int trials = 3, std::uint64_t seed = 42);

nlohmann::ordered_json to_json(const LeNumbers& le);

}   // namespace lecert

#endif
