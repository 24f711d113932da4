#ifndef LECERT_ADMISSIBILITY_HPP
#define LECERT_ADMISSIBILITY_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lecert/newton.hpp"
#include "lecert/nondegen.hpp"
#include "lecert/poly.hpp"

/**
 * Hypothesis checks for admissible families of line singularities along the
 * z1-axis: the line-singularity conditions, non-degeneracy (i),
 * quasi-convenience (ii) and the monomial condition (iii).
 *
 * Everything t-dependent is checked at a finite list of t-samples.
 */

namespace lecert {

enum class ConditionIiiMode { PerVertex, Strict };
enum class ConditionIiiStatus { PassStrict, PassPerVertex, Fail };
enum class Overall { Admissible, NotAdmissible, Unknown };

std::string to_string(ConditionIiiMode m);
std::string to_string(ConditionIiiStatus s);
std::string to_string(Overall o);

/// "per-vertex" / "strict"; throws Error otherwise.
ConditionIiiMode parse_mode(const std::string& text);

struct RestrictionCheck
{
    Rational t;
    /// "Yes", "No" or "Unknown".
    std::string status;
    std::optional<long long> mu;
    /// "newton", "colength", "zero", "axis" or "cap".
    std::string method;
};

struct SliceProbeWitness
{
    Rational t;
    Rational z1;
    std::vector<std::complex<double>> point;
    double gradient_norm = 0.0;
};

struct LineSingularityReport
{
    bool axis_contained = false;
    std::vector<RestrictionCheck> restriction;
    /// Aggregate over samples: "Yes", "No" or "Unknown".
    std::string restriction_isolated;
    /// "Pass", "Fail" or "Skipped".
    std::string slice_probe = "Skipped";
    std::optional<SliceProbeWitness> slice_witness;
};

struct ConditionIiiReport
{
    ConditionIiiStatus status = ConditionIiiStatus::Fail;
    std::optional<Exponent> offender;
    Z1ZeroVertexData vertex_data;
};

struct SampleReport
{
    Rational t;
    bool quasi_convenient = false;
    NondegeneracyVerdict nondegeneracy;
};

struct AdmissibilityOptions
{
    std::vector<Rational> t_samples{Rational(0), Rational(1), Rational(1, 2), Rational(-2)};
    ConditionIiiMode mode = ConditionIiiMode::PerVertex;
    int tier = 3;
    std::uint64_t seed = 42;
};

struct AdmissibilityReport
{
    LineSingularityReport line_singularity;
    bool pure_z1_power = false;
    std::vector<SampleReport> samples;
    ConditionIiiReport condition_iii;
    ConditionIiiMode mode = ConditionIiiMode::PerVertex;
    Overall overall = Overall::Unknown;
    std::string reason;
};

/// f and every ∂f/∂z_j vanish identically on z2 = ... = zn = 0.
bool axis_contained(const PolyFamily& f);

/// Isolatedness of f_t|_{z1=0} at the origin for one t.
RestrictionCheck check_restriction(const PolyFamily& f, const Rational& t, int tier, std::uint64_t seed);

/**
 * Numeric search for critical points of the slices f_t|_{z1=c} with
 * 1e-3 <= max|z_j| <= 0.1, for 3 random small c per sample. Returns the
 * first verified critical point, if any.
 */
std::optional<SliceProbeWitness> slice_probe(const PolyFamily& f, const std::vector<Rational>& t_samples,
                                             std::uint64_t seed);

LineSingularityReport check_line_singularity(const PolyFamily& f, const std::vector<Rational>& t_samples,
                                             int tier = 3, std::uint64_t seed = 42);

/// Condition (iii) on the monomials of f with b1 != 0, against the z1-free
/// vertices of the generic Newton polyhedron.
ConditionIiiReport check_condition_iii(const PolyFamily& f, ConditionIiiMode mode);

/// Throws DomainError unless the samples contain 0 and two nonzero values.
AdmissibilityReport check_admissible(const PolyFamily& f, const AdmissibilityOptions& options = {});

nlohmann::ordered_json to_json(const AdmissibilityReport& r);

}   // namespace lecert

#endif
