#ifndef LECERT_CERTIFIER_HPP
#define LECERT_CERTIFIER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lecert/admissibility.hpp"
#include "lecert/le.hpp"

/**
 * Certificates for families of line singularities: admissibility plus
 * constancy of (λ⁰, λ¹) over the t-samples gives Bekka (c)-regularity of
 * (V(f) \ Σf, Σf) and topological equisingularity of {V(f_t)}. The
 * conditions are sufficient only, so the negative outcome is INCONCLUSIVE.
 */

namespace lecert {

enum class Verdict { Equisingular, Inconclusive };

std::string to_string(Verdict v);

struct CertifyOptions
{
    AdmissibilityOptions admissibility;
    /// Number of random deformation vectors s for the invariance check.
    int deformation_samples = 5;
    /// Cross-check λ¹ against generic slices.
    bool slice_cross_check = true;
};

/// Vanishing coefficients and boundary agreement across nonzero samples.
struct BoundaryGuard
{
    bool boundary_constant = true;
    /// (t, exponent) pairs where a coefficient c_β(t) vanishes at a nonzero sample.
    std::vector<std::pair<Rational, Exponent>> vanishing;
};

struct DeformationCheck
{
    Rational t;
    std::vector<Rational> s;
    long long nu_f = 0;
    long long nu_g = 0;
};

struct DeformationReport
{
    int exponent_a = 0;
    std::vector<Exponent> alphas;
    std::vector<DeformationCheck> checks;
    /// Vectors skipped because s_i cancelled a vertex coefficient.
    int skipped = 0;
    bool ok = true;
};

struct LeRow
{
    Rational t;
    std::optional<LeNumbers> le;
    std::string error;
};

struct Certificate
{
    std::string input;
    std::string input_digest;
    AdmissibilityReport admissibility;
    BoundaryGuard boundary;
    std::optional<int> exponent_a;
    std::vector<LeRow> le_table;
    bool constancy = false;
    std::optional<DeformationReport> deformation;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> reasons;
    std::vector<Rational> t_samples;
    ConditionIiiMode mode = ConditionIiiMode::PerVertex;
    std::uint64_t seed = 42;
    int tier = 3;
};

/// Lowercase hex SHA-256 of text.
std::string sha256_hex(const std::string& text);

BoundaryGuard boundary_guard(const PolyFamily& f, const std::vector<Rational>& t_samples);

/// count random vectors of small nonzero rationals, one entry per alpha.
std::vector<std::vector<Rational>> random_deformations(std::size_t m, int count, std::uint64_t seed);

/**
 * For each nonzero t-sample and each s, compares ν(g_{s,t} + z1^a) with
 * ν(f_t + z1^a), where g_{s,t} = f_t + Σ s_i z^{α_i} and α_i are the
 * z1-free vertices of the generic Newton polyhedron.
 */
DeformationReport deformation_invariance_check(const PolyFamily& f, const std::vector<std::vector<Rational>>& s,
                                               int a, const std::vector<Rational>& t_samples);

/// Never throws on mathematical failures; they downgrade the verdict.
Certificate certify_family(const PolyFamily& f, const CertifyOptions& options = {});

nlohmann::ordered_json to_json(const Certificate& c);
nlohmann::ordered_json to_json(const DeformationReport& r);

}   // namespace lecert

#endif
