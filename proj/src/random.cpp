#include "lecert/random.hpp"

#include <cmath>
#include <numbers>

namespace lecert {

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

long long Rng::integer(long long lo, long long hi)
{
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(engine_() % span);
}

double Rng::normal()
{
    double u1 = uniform();
    while (u1 <= 0.0)
        u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> Rng::unit_complex()
{
    return std::polar(1.0, 2.0 * std::numbers::pi * uniform());
}

Rational Rng::small_rational(int max_num, int max_den)
{
    long long p = integer(1, max_num);
    if (engine_() & 1)
        p = -p;
    return Rational(p, integer(1, max_den));
}

}   // namespace lecert
