#include "lecert/certifier.hpp"

#include <algorithm>
#include <cstdio>

#include <openssl/evp.h>

#include "lecert/errors.hpp"
#include "lecert/newton.hpp"
#include "lecert/random.hpp"
#include "lecert/version.hpp"

namespace lecert {

namespace {

constexpr const char* kBasisEquisingular =
    "Sufficient conditions verified: f is an admissible family of line singularities along the z1-axis and "
    "its Le numbers (lambda0, lambda1) are constant over the t-samples. Under these hypotheses the "
    "stratification (V(f) \\ Sigma f) + Sigma f is Bekka (c)-regular, and the family {V(f_t)} is "
    "topologically equisingular.";

constexpr const char* kBasisInconclusive =
    "The sufficient conditions for Bekka (c)-regularity and topological equisingularity (admissibility "
    "and constant Le numbers) were not all verified. This is not a proof of non-equisingularity.";

constexpr const char* kAssumption =
    "Constancy for all small t is tested at the listed t-samples only; the Newton boundary guard compares "
    "all nonzero samples exactly.";

}   // namespace

std::string to_string(Verdict v)
{
    return v == Verdict::Equisingular ? "EQUISINGULAR" : "INCONCLUSIVE";
}

std::string sha256_hex(const std::string& text)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 computation failed");
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i)
    {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

BoundaryGuard boundary_guard(const PolyFamily& f, const std::vector<Rational>& t_samples)
{
    BoundaryGuard guard;
    std::optional<NewtonPolyhedron> reference;
    for (const auto& t : t_samples)
    {
        if (t == 0)
            continue;
        for (const auto& [b, c] : f.terms())
        {
            if (c(t) == 0)
                guard.vanishing.emplace_back(t, b);
        }
        PolyFamily f_t = specialize_t(f, t);
        if (f_t.empty())
        {
            guard.boundary_constant = false;
            continue;
        }
        NewtonPolyhedron np = newton_polyhedron(f_t);
        if (!reference)
            reference = std::move(np);
        else if (!reference->same_boundary(np))
            guard.boundary_constant = false;
    }
    return guard;
}

std::vector<std::vector<Rational>> random_deformations(std::size_t m, int count, std::uint64_t seed)
{
    Rng rng(Rng::derive(seed, 0xdef0));
    std::vector<std::vector<Rational>> out;
    for (int k = 0; k < count; ++k)
    {
        std::vector<Rational> s;
        for (std::size_t i = 0; i < m; ++i)
            s.push_back(Rational(rng.small_rational(3, 1)) / rng.integer(8, 31));
        out.push_back(std::move(s));
    }
    return out;
}

DeformationReport deformation_invariance_check(const PolyFamily& f, const std::vector<std::vector<Rational>>& s,
                                               int a, const std::vector<Rational>& t_samples)
{
    DeformationReport report;
    report.exponent_a = a;
    report.alphas = z1zero_vertex_data(newton_polyhedron(f)).alphas;
    for (const auto& t : t_samples)
    {
        if (t == 0)
            continue;
        PolyFamily f_t = specialize_t(f, t);
        const long long nu_f = newton_number(newton_polyhedron(add_pure_power(f_t, 0, a)));
        for (const auto& sv : s)
        {
            if (sv.size() != report.alphas.size())
                throw DomainError("deformation vector length does not match the number of z1-free vertices");
            PolyFamily g = f_t;
            bool cancels = false;
            for (std::size_t i = 0; i < sv.size(); ++i)
            {
                cancels = cancels || f_t.constant_coefficient(report.alphas[i]) + sv[i] == 0;
                g = add_monomial(g, report.alphas[i], sv[i]);
            }
            if (cancels)
            {
                // A vertex coefficient cancelled: s is not small for this t.
                ++report.skipped;
                continue;
            }
            DeformationCheck check{t, sv, nu_f, 0};
            check.nu_g = newton_number(newton_polyhedron(add_pure_power(g, 0, a)));
            report.ok = report.ok && check.nu_g == check.nu_f;
            report.checks.push_back(std::move(check));
        }
    }
    return report;
}

Certificate certify_family(const PolyFamily& f, const CertifyOptions& options)
{
    Certificate cert;
    cert.input = unparse(f);
    cert.input_digest = sha256_hex(cert.input);
    cert.seed = options.admissibility.seed;
    cert.tier = options.admissibility.tier;
    cert.t_samples = options.admissibility.t_samples;
    cert.mode = options.admissibility.mode;
    const auto& samples = options.admissibility.t_samples;

    try
    {
        cert.admissibility = check_admissible(f, options.admissibility);
    }
    catch (const Error& e)
    {
        cert.admissibility.overall = Overall::Unknown;
        cert.admissibility.reason = e.what();
    }
    if (cert.admissibility.overall != Overall::Admissible)
        cert.reasons.push_back("admissibility: " + to_string(cert.admissibility.overall) +
                               (cert.admissibility.reason.empty() ? "" : " (" + cert.admissibility.reason + ")"));

    try
    {
        cert.boundary = boundary_guard(f, samples);
    }
    catch (const Error& e)
    {
        cert.boundary.boundary_constant = false;
        cert.reasons.push_back(std::string("boundary guard failed: ") + e.what());
    }

    try
    {
        cert.exponent_a = choose_exponent_a(f, samples, options.admissibility.tier, options.admissibility.seed);
    }
    catch (const Error& e)
    {
        cert.reasons.push_back(std::string("exponent a: ") + e.what());
    }

    if (cert.exponent_a)
    {
        bool all = true;
        for (const auto& t : samples)
        {
            LeRow row;
            row.t = t;
            try
            {
                PolyFamily f_t = specialize_t(f, t);
                row.le = le_numbers(f_t, *cert.exponent_a, options.admissibility.tier, options.admissibility.seed);
                if (options.slice_cross_check)
                {
                    row.le->slice_mu = generic_slice_milnor(f_t, 3, options.admissibility.seed);
                    if (row.le->slice_mu && *row.le->slice_mu != row.le->lambda1)
                        cert.reasons.push_back("slice Milnor number differs from lambda1 at t = " + to_string(t));
                }
            }
            catch (const Error& e)
            {
                row.error = e.what();
                all = false;
                cert.reasons.push_back("Le numbers at t = " + to_string(t) + ": " + e.what());
            }
            cert.le_table.push_back(std::move(row));
        }
        if (all && !cert.le_table.empty())
        {
            const LeNumbers& first = *cert.le_table.front().le;
            cert.constancy = std::all_of(cert.le_table.begin(), cert.le_table.end(), [&](const LeRow& r) {
                return r.le->lambda0 == first.lambda0 && r.le->lambda1 == first.lambda1;
            });
            if (!cert.constancy)
                cert.reasons.push_back("Lê numbers not constant");
        }

        if (cert.admissibility.overall == Overall::Admissible)
        {
            try
            {
                std::size_t m = z1zero_vertex_data(newton_polyhedron(f)).alphas.size();
                cert.deformation = deformation_invariance_check(
                    f, random_deformations(m, options.deformation_samples, options.admissibility.seed),
                    *cert.exponent_a, samples);
                if (!cert.deformation->ok)
                    cert.reasons.push_back("deformation invariance of the Newton number violated");
            }
            catch (const Error& e)
            {
                cert.reasons.push_back(std::string("deformation check: ") + e.what());
            }
        }
    }

    const bool ok = cert.admissibility.overall == Overall::Admissible && cert.constancy && cert.reasons.empty();
    cert.verdict = ok ? Verdict::Equisingular : Verdict::Inconclusive;
    return cert;
}

nlohmann::ordered_json to_json(const DeformationReport& r)
{
    using json = nlohmann::ordered_json;
    json checks = json::array();
    for (const auto& c : r.checks)
    {
        json s = json::array();
        for (const auto& x : c.s)
            s.push_back(to_string(x));
        checks.push_back({{"t", to_string(c.t)}, {"s", s}, {"nu_f", c.nu_f}, {"nu_g", c.nu_g}});
    }
    return {{"exponent_a", r.exponent_a}, {"alphas", r.alphas}, {"checks", checks}, {"skipped", r.skipped}, {"ok", r.ok}};
}

nlohmann::ordered_json to_json(const Certificate& c)
{
    using json = nlohmann::ordered_json;
    json j;
    j["input_digest"] = c.input_digest;
    j["input"] = c.input;
    j["admissibility"] = to_json(c.admissibility);

    json vanishing = json::array();
    for (const auto& [t, b] : c.boundary.vanishing)
        vanishing.push_back({{"t", to_string(t)}, {"exponent", b}});
    j["boundary_guard"] = {{"boundary_constant", c.boundary.boundary_constant}, {"vanishing_coefficients", vanishing}};

    j["exponent_a"] = c.exponent_a ? json(*c.exponent_a) : json(nullptr);
    json table = json::array();
    for (const auto& row : c.le_table)
    {
        json r;
        r["t"] = to_string(row.t);
        r["le"] = row.le ? to_json(*row.le) : json(nullptr);
        r["error"] = row.error.empty() ? json(nullptr) : json(row.error);
        table.push_back(r);
    }
    j["le_table"] = table;
    j["constancy"] = c.constancy;
    j["deformation_invariance"] = c.deformation ? to_json(*c.deformation) : json(nullptr);
    j["verdict"] = to_string(c.verdict);
    j["reasons"] = c.reasons;
    j["verdict_basis"] = c.verdict == Verdict::Equisingular ? kBasisEquisingular : kBasisInconclusive;
    j["assumptions"] = json::array({kAssumption});

    json samples = json::array();
    for (const auto& t : c.t_samples)
        samples.push_back(to_string(t));
    j["config"] = {{"mode", to_string(c.mode)}, {"t_samples", samples}, {"nondegen_tier", c.tier}};
    j["seed"] = c.seed;
    j["version"] = kVersion;
    return j;
}

}   // namespace lecert
