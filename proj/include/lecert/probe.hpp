#ifndef LECERT_PROBE_HPP
#define LECERT_PROBE_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "lecert/poly.hpp"

/**
 * Numerical probe of the gradient inequalities behind (c)-regularity along
 * arcs on V(f) \ Σf that approach the origin.
 *
 * Gradients use the conjugated convention ∂f = (conj ∂f/∂t, conj ∂f/∂z_j)
 * for f and for ρ alike, with the Hermitian inner product
 * <u, v> = Σ conj(u_j) v_j. Monitored ratios at each arc point:
 *
 *     R1 = (|∂_t f| + Σ_i |z^{α_i}|) / |∂_z f|
 *     R2 = |∂_{t,z1} f| |∂ρ| / |∂ρ ∧ ∂f|
 *     C1 = |A| |∂_{t,z1} f| / (|∂ρ ∧ ∂f| / |∂f|),   A = <∂f, ∂ρ> / |∂f|²
 *     C2 = |∂_{t,z1} f| / |∂_{z~} f|
 *
 * A ratio passes on an arc when its final value is below 0.2 times its
 * initial value and its least-squares log-log slope against s exceeds 0.1.
 */

namespace lecert {

/// Line: singular stratum is the (t, z1)-plane. Isolated: the t-axis only,
/// every z-coordinate is transverse and ρ uses all boundary vertices.
enum class AxisMode { Line, Isolated };

std::string to_string(AxisMode m);
AxisMode parse_axis_mode(const std::string& text);

struct ControlFunction
{
    std::vector<Exponent> alphas;

    /// Σ_i |z^{α_i}|².
    double value(const std::vector<std::complex<double>>& z) const;
    /// Σ_i |z^{α_i}|.
    double monomial_sum(const std::vector<std::complex<double>>& z) const;
    /// Conjugated gradient in (t, z1, ..., zn); the t-entry is zero.
    std::vector<std::complex<double>> gradient(const std::vector<std::complex<double>>& z) const;
};

/// α_i for the mode: z1-free vertices (line) or all vertices (isolated) of
/// the generic Newton polyhedron.
ControlFunction control_function(const PolyFamily& f, AxisMode mode);

struct ProbeConfig
{
    int arcs = 20;
    std::uint64_t seed = 42;
    double s0 = 0.1;
    double ratio = 0.5;
    int steps = 14;
    AxisMode axis = AxisMode::Line;
    double pass_ratio = 0.2;
    double pass_slope = 0.1;
};

struct Arc
{
    int id = 0;
    std::complex<double> tau, zeta;
    std::vector<std::complex<double>> direction;
    int projection_coordinate = 0;
    int redraws = 0;
    std::vector<double> s;
    std::vector<ComplexPoint> points;
    std::vector<double> residuals;
};

/// Arcs on V(f); each grid point is projected by Newton in one z~
/// coordinate. Throws Error("arc generation failed") when more than half of
/// the arcs exhaust their redraws.
std::vector<Arc> make_arcs(const PolyFamily& f, const ProbeConfig& config);

struct GradientData
{
    std::vector<std::complex<double>> df;     // (t, z1..zn), conjugated
    std::vector<std::complex<double>> drho;   // (t, z1..zn), conjugated
    double norm_df = 0, norm_drho = 0;
    double norm_dtz1 = 0;       // stratum directions
    double norm_dtransverse = 0;
    double norm_dt = 0, norm_dz = 0;
    std::complex<double> inner;  // <∂f, ∂ρ>
    std::complex<double> A;
    double wedge = 0;
    /// Relative error of (wedge/|∂f|)² + |A|²|∂f|² = |∂ρ|².
    double identity_error = 0;
};

/// Throws DomainError("on singular locus") when |∂f| is below 1e-14 times
/// the sum of the absolute term contributions to the partials.
GradientData gradients_at(const std::vector<PolyFamily>& partials_f, const ControlFunction& rho,
                          const ComplexPoint& p, AxisMode mode);

struct RatioSample
{
    int k = 0;
    double s = 0;
    double R1 = 0, R2 = 0, C1 = 0, C2 = 0;
    double identity_error = 0;
};

struct RatioFit
{
    double initial = 0, final_value = 0, slope = 0;
    bool pass = false;
};

struct ArcResult
{
    int arc_id = 0;
    std::vector<RatioSample> samples;
    int skipped = 0;
    RatioFit R1, R2, C1, C2;
};

struct ArcProbeReport
{
    ProbeConfig config;
    std::vector<Exponent> alphas;
    std::vector<ArcResult> arcs;
    int pass_R1 = 0, pass_R2 = 0, pass_C1 = 0, pass_C2 = 0;
    double max_identity_error = 0;
    std::vector<std::string> log;
};

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

RatioFit fit_ratio(const std::vector<double>& s, const std::vector<double>& values, double pass_ratio,
                   double pass_slope);

/// Builds the arcs and evaluates all four ratios.
ArcProbeReport run_probe(const PolyFamily& f, const ProbeConfig& config);

nlohmann::ordered_json to_json(const ArcProbeReport& r);

/// Rows "arc_id,k,s,R1,R2,C1,C2" with a header line.
std::string to_csv(const ArcProbeReport& r);

}   // namespace lecert

#endif
