#ifndef LECERT_RANDOM_HPP
#define LECERT_RANDOM_HPP

#include <complex>
#include <cstdint>
#include <random>

#include "lecert/rational.hpp"

namespace lecert {

/**
 * Seeded generator with platform-independent output. The standard
 * distributions are implementation-defined, so the conversions from the raw
 * 64-bit stream of mt19937_64 are done here.
 */
class Rng
{
    public:
        explicit Rng(std::uint64_t seed) : engine_(seed) {}

        /// Seed derived from a base seed and a stream index (splitmix64 mix).
        static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

        std::uint64_t bits() { return engine_(); }

        /// Uniform on [0, 1).
        double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

        /// Uniform integer in [lo, hi].
        long long integer(long long lo, long long hi);

        /// Standard normal via Box-Muller (one value per call).
        double normal();

        /// Complex number with independent standard normal parts.
        std::complex<double> complex_normal() { return {normal(), normal()}; }

        /// Unit-modulus complex number with uniform argument.
        std::complex<double> unit_complex();

        /// Small nonzero rational p/q with 1 <= |p| <= max_num, 1 <= q <= max_den.
        Rational small_rational(int max_num, int max_den);

    private:
        std::mt19937_64 engine_;
};

}   // namespace lecert

#endif
