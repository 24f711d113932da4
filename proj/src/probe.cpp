#include "lecert/probe.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>

#include "lecert/errors.hpp"
#include "lecert/newton.hpp"
#include "lecert/random.hpp"

namespace lecert {

std::string to_string(AxisMode m)
{
    return m == AxisMode::Line ? "line" : "isolated";
}

AxisMode parse_axis_mode(const std::string& text)
{
    if (text == "line")
        return AxisMode::Line;
    if (text == "isolated")
        return AxisMode::Isolated;
    throw Error("unknown axis mode '" + text + "' (expected line or isolated)");
}

namespace {

std::complex<double> monomial(const Exponent& a, const std::vector<std::complex<double>>& z)
{
    std::complex<double> m = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j)
    {
        for (int e = 0; e < a[j]; ++e)
            m *= z[j];
    }
    return m;
}

double norm(const std::vector<std::complex<double>>& v, std::size_t from = 0, std::size_t to = SIZE_MAX)
{
    double s = 0.0;
    for (std::size_t i = from; i < std::min(to, v.size()); ++i)
        s += std::norm(v[i]);
    return std::sqrt(s);
}

}   // namespace

double ControlFunction::value(const std::vector<std::complex<double>>& z) const
{
    double s = 0.0;
    for (const auto& a : alphas)
        s += std::norm(monomial(a, z));
    return s;
}

double ControlFunction::monomial_sum(const std::vector<std::complex<double>>& z) const
{
    double s = 0.0;
    for (const auto& a : alphas)
        s += std::abs(monomial(a, z));
    return s;
}

std::vector<std::complex<double>> ControlFunction::gradient(const std::vector<std::complex<double>>& z) const
{
    // ∂/∂z_j of z^α conj(z^α) is conj(z^α) ∂_j z^α; then conjugate.
    std::vector<std::complex<double>> g(z.size() + 1, 0.0);
    for (const auto& a : alphas)
    {
        const std::complex<double> m = monomial(a, z);
        for (std::size_t j = 0; j < z.size(); ++j)
        {
            if (a[j] == 0)
                continue;
            Exponent lowered = a;
            --lowered[j];
            g[j + 1] += std::conj(m) * static_cast<double>(a[j]) * monomial(lowered, z);
        }
    }
    for (auto& x : g)
        x = std::conj(x);
    return g;
}

ControlFunction control_function(const PolyFamily& f, AxisMode mode)
{
    NewtonPolyhedron np = newton_polyhedron(f);
    ControlFunction rho;
    rho.alphas = mode == AxisMode::Line ? z1zero_vertex_data(np).alphas : np.vertices();
    return rho;
}

GradientData gradients_at(const std::vector<PolyFamily>& partials_f, const ControlFunction& rho,
                          const ComplexPoint& p, AxisMode mode)
{
    GradientData g;
    double scale = 0.0;
    for (const auto& d : partials_f)
    {
        g.df.push_back(std::conj(evaluate(d, p)));
        scale += term_magnitude(d, p);
    }
    g.drho = rho.gradient(p.z);

    g.norm_df = norm(g.df);
    if (g.norm_df < 1e-14 * scale || g.norm_df == 0.0)
        throw DomainError("on singular locus");
    g.norm_drho = norm(g.drho);
    const std::size_t stratum = mode == AxisMode::Line ? 2 : 1;
    g.norm_dt = std::abs(g.df[0]);
    g.norm_dz = norm(g.df, 1);
    g.norm_dtz1 = norm(g.df, 0, stratum);
    g.norm_dtransverse = norm(g.df, stratum);

    g.inner = 0.0;
    for (std::size_t i = 0; i < g.df.size(); ++i)
        g.inner += std::conj(g.df[i]) * g.drho[i];
    g.A = g.inner / (g.norm_df * g.norm_df);

    // Lagrange identity: no cancellation for nearly parallel gradients.
    double w2 = 0.0;
    for (std::size_t i = 0; i < g.df.size(); ++i)
        for (std::size_t j = i + 1; j < g.df.size(); ++j)
            w2 += std::norm(g.drho[i] * g.df[j] - g.drho[j] * g.df[i]);
    g.wedge = std::sqrt(w2);

    const double lhs = std::pow(g.wedge / g.norm_df, 2) + std::norm(g.A) * g.norm_df * g.norm_df;
    const double rhs = g.norm_drho * g.norm_drho;
    g.identity_error = rhs > 0.0 ? std::abs(lhs - rhs) / rhs : std::abs(lhs);
    return g;
}

namespace {

constexpr int kMaxRedraws = 5;

/// Newton in z[j] only; returns false if the point is not accepted.
bool project(const PolyFamily& f, const PolyFamily& df_j, const std::vector<PolyFamily>& partials_f,
             ComplexPoint& p, int j, double& residual)
{
    try
    {
        for (int it = 0; it < 200; ++it)
        {
            const std::complex<double> d = evaluate(df_j, p);
            if (d == 0.0)
                return false;
            const std::complex<double> step = evaluate(f, p) / d;
            p.z[j] -= step;
            if (std::abs(step) <= 1e-15 * std::abs(p.z[j]))
                break;
        }
        residual = std::abs(evaluate(f, p));
        double grad = 0.0;
        for (const auto& d : partials_f)
            grad += std::norm(evaluate(d, p));
        grad = std::sqrt(grad);
        return std::isfinite(residual) && residual <= 1e-12 * (1.0 + grad) &&
               residual <= 1e-10 * term_magnitude(f, p);
    }
    catch (const EvaluationError&)
    {
        return false;
    }
}

}   // namespace

std::vector<Arc> make_arcs(const PolyFamily& f, const ProbeConfig& config)
{
    const int n = f.nvars();
    if (n < 2)
        throw DomainError("probe needs at least two z-variables");
    const std::vector<PolyFamily> partials_f = partials(f);
    std::vector<Arc> arcs;
    int failed = 0;
    for (int id = 0; id < config.arcs; ++id)
    {
        Rng rng(Rng::derive(config.seed, static_cast<std::uint64_t>(id)));
        bool done = false;
        for (int attempt = 0; attempt <= kMaxRedraws && !done; ++attempt)
        {
            Arc arc;
            arc.id = id;
            arc.redraws = attempt;
            arc.tau = rng.complex_normal();
            arc.zeta = rng.complex_normal();
            double len = 0.0;
            do
            {
                arc.direction.clear();
                for (int j = 1; j < n; ++j)
                    arc.direction.push_back(rng.complex_normal());
                len = norm(arc.direction);
            } while (std::any_of(arc.direction.begin(), arc.direction.end(),
                                 [&](auto u) { return std::abs(u) < 1e-3 * len; }));
            for (auto& u : arc.direction)
                u /= len;
            arc.projection_coordinate = static_cast<int>(rng.integer(1, n - 1));
            const PolyFamily df_j = derivative_z(f, arc.projection_coordinate);

            bool ok = true;
            for (int k = 0; k <= config.steps && ok; ++k)
            {
                const double s = config.s0 * std::pow(config.ratio, k);
                ComplexPoint p;
                p.t = arc.tau * s;
                p.z.push_back(arc.zeta * std::sqrt(s));
                for (const auto& u : arc.direction)
                    p.z.push_back(u * s);
                double residual = 0.0;
                ok = project(f, df_j, partials_f, p, arc.projection_coordinate, residual);
                bool off_axis = false;
                for (int j = 1; j < n; ++j)
                    off_axis = off_axis || p.z[j] != 0.0;
                ok = ok && off_axis;
                arc.s.push_back(s);
                arc.points.push_back(std::move(p));
                arc.residuals.push_back(residual);
            }
            if (ok)
            {
                arcs.push_back(std::move(arc));
                done = true;
            }
        }
        if (!done)
            ++failed;
    }
    if (2 * failed > config.arcs)
        throw Error("arc generation failed");
    return arcs;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t m = std::min(x.size(), y.size());
    if (m < 2)
        return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i)
    {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = m * sxx - sx * sx;
    return denom == 0.0 ? 0.0 : (m * sxy - sx * sy) / denom;
}

RatioFit fit_ratio(const std::vector<double>& s, const std::vector<double>& values, double pass_ratio,
                   double pass_slope)
{
    RatioFit fit;
    if (values.empty())
        return fit;
    fit.initial = values.front();
    fit.final_value = values.back();
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        if (values[i] > 0.0 && std::isfinite(values[i]))
        {
            xs.push_back(s[i]);
            ys.push_back(values[i]);
        }
    }
    fit.slope = loglog_slope(xs, ys);
    fit.pass = fit.initial > 0.0 && fit.final_value < pass_ratio * fit.initial && fit.slope > pass_slope;
    return fit;
}

ArcProbeReport run_probe(const PolyFamily& f, const ProbeConfig& config)
{
    ArcProbeReport report;
    report.config = config;
    const ControlFunction rho = control_function(f, config.axis);
    report.alphas = rho.alphas;
    const std::vector<PolyFamily> partials_f = partials(f);

    for (const Arc& arc : make_arcs(f, config))
    {
        ArcResult result;
        result.arc_id = arc.id;
        std::vector<double> s, r1, r2, c1, c2;
        for (std::size_t k = 0; k < arc.points.size(); ++k)
        {
            const ComplexPoint& p = arc.points[k];
            GradientData g;
            try
            {
                g = gradients_at(partials_f, rho, p, config.axis);
            }
            catch (const DomainError& e)
            {
                ++result.skipped;
                report.log.push_back("arc " + std::to_string(arc.id) + " point " + std::to_string(k) + ": " + e.what());
                continue;
            }
            if (g.wedge < 1e-300)
            {
                ++result.skipped;
                report.log.push_back("arc " + std::to_string(arc.id) + " point " + std::to_string(k) +
                                     ": vanishing wedge");
                continue;
            }
            RatioSample rs;
            rs.k = static_cast<int>(k);
            rs.s = arc.s[k];
            rs.R1 = (g.norm_dt + rho.monomial_sum(p.z)) / g.norm_dz;
            rs.R2 = g.norm_dtz1 * g.norm_drho / g.wedge;
            rs.C1 = std::abs(g.A) * g.norm_dtz1 / (g.wedge / g.norm_df);
            rs.C2 = g.norm_dtz1 / g.norm_dtransverse;
            rs.identity_error = g.identity_error;
            report.max_identity_error = std::max(report.max_identity_error, g.identity_error);
            s.push_back(rs.s);
            r1.push_back(rs.R1);
            r2.push_back(rs.R2);
            c1.push_back(rs.C1);
            c2.push_back(rs.C2);
            result.samples.push_back(rs);
        }
        result.R1 = fit_ratio(s, r1, config.pass_ratio, config.pass_slope);
        result.R2 = fit_ratio(s, r2, config.pass_ratio, config.pass_slope);
        result.C1 = fit_ratio(s, c1, config.pass_ratio, config.pass_slope);
        result.C2 = fit_ratio(s, c2, config.pass_ratio, config.pass_slope);
        report.pass_R1 += result.R1.pass;
        report.pass_R2 += result.R2.pass;
        report.pass_C1 += result.C1.pass;
        report.pass_C2 += result.C2.pass;
        report.arcs.push_back(std::move(result));
    }
    return report;
}

namespace {

nlohmann::ordered_json fit_json(const RatioFit& fit)
{
    return {{"initial", fit.initial}, {"final", fit.final_value}, {"slope", fit.slope}, {"pass", fit.pass}};
}

}   // namespace

nlohmann::ordered_json to_json(const ArcProbeReport& r)
{
    using json = nlohmann::ordered_json;
    json j;
    j["config"] = {{"arcs", r.config.arcs},       {"seed", r.config.seed},
                   {"s0", r.config.s0},           {"ratio", r.config.ratio},
                   {"steps", r.config.steps},     {"axis", to_string(r.config.axis)},
                   {"pass_ratio", r.config.pass_ratio}, {"pass_slope", r.config.pass_slope}};
    j["alphas"] = r.alphas;
    const double count = r.arcs.empty() ? 1.0 : static_cast<double>(r.arcs.size());
    j["summary"] = {{"arcs", r.arcs.size()},
                    {"pass_R1", r.pass_R1},
                    {"pass_R2", r.pass_R2},
                    {"pass_C1", r.pass_C1},
                    {"pass_C2", r.pass_C2},
                    {"fraction_R1", r.pass_R1 / count},
                    {"fraction_R2", r.pass_R2 / count},
                    {"fraction_C1", r.pass_C1 / count},
                    {"fraction_C2", r.pass_C2 / count},
                    {"max_identity_error", r.max_identity_error}};
    json arcs = json::array();
    for (const auto& a : r.arcs)
    {
        json samples = json::array();
        for (const auto& s : a.samples)
        {
            samples.push_back({{"k", s.k}, {"s", s.s}, {"R1", s.R1}, {"R2", s.R2}, {"C1", s.C1}, {"C2", s.C2},
                               {"identity_error", s.identity_error}});
        }
        arcs.push_back({{"arc_id", a.arc_id},
                        {"skipped", a.skipped},
                        {"R1", fit_json(a.R1)},
                        {"R2", fit_json(a.R2)},
                        {"C1", fit_json(a.C1)},
                        {"C2", fit_json(a.C2)},
                        {"samples", samples}});
    }
    j["arcs"] = arcs;
    j["log"] = r.log;
    return j;
}

std::string to_csv(const ArcProbeReport& r)
{
    std::string out = "arc_id,k,s,R1,R2,C1,C2\n";
    char buf[256];
    for (const auto& a : r.arcs)
    {
        for (const auto& s : a.samples)
        {
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", a.arc_id, s.k, s.s, s.R1, s.R2,
                          s.C1, s.C2);
            out += buf;
        }
    }
    return out;
}

}   // namespace lecert
