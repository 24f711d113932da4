#include "lecert/le.hpp"

#include <algorithm>

#include "lecert/errors.hpp"
#include "lecert/milnor.hpp"
#include "lecert/newton.hpp"
#include "lecert/nondegen.hpp"
#include "lecert/random.hpp"

namespace lecert {

long long milnor_via_nu(const PolyFamily& f, int tier, std::uint64_t seed)
{
    NewtonPolyhedron np = newton_polyhedron(f);
    if (!is_convenient(np))
        throw DomainError("equality mu = nu not certified: the germ is not convenient");
    NondegeneracyVerdict v = is_newton_nondegenerate(f, tier, seed);
    if (v.status != NondegStatus::Nondegenerate)
        throw DomainError("equality mu = nu not certified: non-degeneracy is " + to_string(v.status));
    return newton_number(np);
}

std::optional<long long> certified_nu_with_power(const PolyFamily& f, int a, int tier, std::uint64_t seed)
{
    try
    {
        return milnor_via_nu(add_pure_power(f, 0, a), tier, seed);
    }
    catch (const DomainError&)
    {
        return std::nullopt;
    }
}

namespace {

bool window_is_affine(const PolyFamily& f_t, int a, int tier, std::uint64_t seed)
{
    std::optional<long long> v[3];
    for (int i = 0; i < 3; ++i)
    {
        v[i] = certified_nu_with_power(f_t, a + i, tier, seed);
        if (!v[i])
            return false;
    }
    return *v[2] - 2 * *v[1] + *v[0] == 0;
}

}   // namespace

int choose_exponent_a(const PolyFamily& family, const std::vector<Rational>& t_samples, int tier,
                      std::uint64_t seed)
{
    int M = 0;
    for (const auto& [b, c] : family.terms())
        M = std::max(M, b[0]);
    std::vector<PolyFamily> specialized;
    for (const auto& t : t_samples)
        specialized.push_back(specialize_t(family, t));

    for (int a = std::max(M + 2, 3); a <= M + 64; ++a)
    {
        bool ok = std::all_of(specialized.begin(), specialized.end(),
                              [&](const PolyFamily& f_t) { return !f_t.empty() && window_is_affine(f_t, a, tier, seed); });
        if (ok)
            return a;
    }
    throw DomainError("stabilization not reached");
}

LeNumbers le_numbers(const PolyFamily& f_t, int a, int tier, std::uint64_t seed)
{
    if (!f_t.is_t_free())
        throw DomainError("Le numbers require a t-free germ; specialize t first");
    if (a < 2)
        throw DomainError("ILM extraction failed: exponent a must be at least 2");
    LeNumbers le;
    le.exponent_a = a;
    for (int ap = a; ap <= a + 2; ++ap)
    {
        std::optional<long long> nu = certified_nu_with_power(f_t, ap, tier, seed);
        if (!nu)
            throw DomainError("ILM extraction failed: f_t + z1^" + std::to_string(ap) +
                              " is not certified convenient and non-degenerate");
        le.nu_values[ap] = *nu;
    }
    le.lambda1 = le.nu_values[a + 1] - le.nu_values[a];
    le.lambda0 = le.nu_values[a] - (a - 1) * le.lambda1;
    if (le.lambda0 < 0 || le.lambda1 < 0)
        throw DomainError("ILM extraction failed: negative Le number");
    for (const auto& [ap, nu] : le.nu_values)
    {
        if (nu != le.lambda0 + (ap - 1) * le.lambda1)
            throw DomainError("ILM extraction failed: Newton numbers not affine in a");
    }
    return le;
}

std::optional<long long> slice_milnor(const PolyFamily& f_t, const Rational& c, int tier, std::uint64_t seed)
{
    PolyFamily slice = substitute_z1(f_t, c);
    PolyFamily::TermMap terms = slice.terms();
    terms.erase(Exponent(slice.nvars(), 0));
    slice = PolyFamily(slice.nvars(), std::move(terms), slice.name());
    if (slice.empty())
        return std::nullopt;

    NewtonPolyhedron np = newton_polyhedron(slice);
    if (is_convenient(np) && is_newton_nondegenerate(slice, tier, seed).status == NondegStatus::Nondegenerate)
        return newton_number(np);
    return milnor_number_colength(slice);
}

std::optional<long long> generic_slice_milnor(const PolyFamily& f_t, int trials, std::uint64_t seed)
{
    Rng rng(Rng::derive(seed, 0x51ce));
    std::optional<long long> common;
    for (int i = 0; i < trials; ++i)
    {
        Rational c(rng.integer(1, 3), rng.integer(5, 13));
        if (rng.bits() & 1)
            c = -c;
        std::optional<long long> mu = slice_milnor(f_t, c, 3, seed);
        if (!mu)
            continue;
        if (common && *common != *mu)
            return std::nullopt;
        common = mu;
    }
    return common;
}

nlohmann::ordered_json to_json(const LeNumbers& le)
{
    nlohmann::ordered_json j;
    j["lambda0"] = le.lambda0;
    j["lambda1"] = le.lambda1;
    j["exponent_a"] = le.exponent_a;
    nlohmann::ordered_json nu = nlohmann::ordered_json::object();
    for (const auto& [a, v] : le.nu_values)
        nu[std::to_string(a)] = v;
    j["nu_values"] = nu;
    j["slice_mu"] = le.slice_mu ? nlohmann::ordered_json(*le.slice_mu) : nlohmann::ordered_json(nullptr);
    return j;
}

}   // namespace lecert
