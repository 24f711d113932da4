#include "lecert/admissibility.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "lecert/errors.hpp"
#include "lecert/milnor.hpp"
#include "lecert/random.hpp"

namespace lecert {

std::string to_string(ConditionIiiMode m)
{
    return m == ConditionIiiMode::Strict ? "strict" : "per-vertex";
}

std::string to_string(ConditionIiiStatus s)
{
    switch (s)
    {
        case ConditionIiiStatus::PassStrict: return "PassStrict";
        case ConditionIiiStatus::PassPerVertex: return "PassPerVertex";
        case ConditionIiiStatus::Fail: return "Fail";
    }
    return "Fail";
}

std::string to_string(Overall o)
{
    switch (o)
    {
        case Overall::Admissible: return "Admissible";
        case Overall::NotAdmissible: return "NotAdmissible";
        case Overall::Unknown: return "Unknown";
    }
    return "Unknown";
}

ConditionIiiMode parse_mode(const std::string& text)
{
    if (text == "per-vertex")
        return ConditionIiiMode::PerVertex;
    if (text == "strict")
        return ConditionIiiMode::Strict;
    throw Error("unknown condition-(iii) mode '" + text + "' (expected per-vertex or strict)");
}

bool axis_contained(const PolyFamily& f)
{
    // On z~ = 0 only monomials without z~ survive in f, and in ∂f/∂z_j
    // only those whose z~-part is exactly z_j.
    for (const auto& [b, c] : f.terms())
    {
        int degree = 0;
        for (std::size_t j = 1; j < b.size(); ++j)
            degree += b[j];
        if (degree <= 1)
            return false;
    }
    return true;
}

namespace {

PolyFamily drop_constant(const PolyFamily& g)
{
    PolyFamily::TermMap terms = g.terms();
    terms.erase(Exponent(g.nvars(), 0));
    return PolyFamily(g.nvars(), std::move(terms), g.name());
}

/// Some coordinate axis lies in the singular locus of g: every monomial has
/// degree >= 2 in the variables other than that axis.
bool contains_coordinate_axis(const PolyFamily& g)
{
    for (int axis = 0; axis < g.nvars(); ++axis)
    {
        bool all = true;
        for (const auto& [b, c] : g.terms())
        {
            int other = 0;
            for (int j = 0; j < g.nvars(); ++j)
            {
                if (j != axis)
                    other += b[j];
            }
            if (other <= 1)
            {
                all = false;
                break;
            }
        }
        if (all)
            return true;
    }
    return false;
}

constexpr int kRestrictionDegreeCap = 24;

}   // namespace

RestrictionCheck check_restriction(const PolyFamily& f, const Rational& t, int tier, std::uint64_t seed)
{
    RestrictionCheck rc;
    rc.t = t;
    PolyFamily h = drop_constant(restrict_to_z1_zero(specialize_t(f, t)));
    if (h.empty())
    {
        rc.status = "No";
        rc.method = "zero";
        return rc;
    }
    if (contains_coordinate_axis(h))
    {
        rc.status = "No";
        rc.method = "axis";
        return rc;
    }
    NewtonPolyhedron np = newton_polyhedron(h);
    if (is_convenient(np) && is_newton_nondegenerate(h, tier, seed).status == NondegStatus::Nondegenerate)
    {
        rc.status = "Yes";
        rc.mu = newton_number(np);
        rc.method = "newton";
        return rc;
    }
    if (auto mu = milnor_number_colength(h, kRestrictionDegreeCap))
    {
        rc.status = "Yes";
        rc.mu = mu;
        rc.method = "colength";
        return rc;
    }
    rc.status = "Unknown";
    rc.method = "cap";
    return rc;
}

namespace {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

struct SliceSystem
{
    std::vector<PolyFamily> grad;
    std::vector<std::vector<PolyFamily>> hess;

    explicit SliceSystem(const PolyFamily& g)
    {
        const int m = g.nvars();
        for (int j = 0; j < m; ++j)
        {
            grad.push_back(derivative_z(g, j));
            hess.emplace_back();
            for (int l = 0; l < m; ++l)
                hess.back().push_back(derivative_z(grad.back(), l));
        }
    }

    CVec gradient(const CVec& z) const
    {
        ComplexPoint p{0.0, {z.data(), z.data() + z.size()}};
        CVec r(z.size());
        for (Eigen::Index j = 0; j < z.size(); ++j)
            r[j] = evaluate(grad[j], p);
        return r;
    }

    CMat hessian(const CVec& z) const
    {
        ComplexPoint p{0.0, {z.data(), z.data() + z.size()}};
        CMat H(z.size(), z.size());
        for (Eigen::Index j = 0; j < z.size(); ++j)
            for (Eigen::Index l = 0; l < z.size(); ++l)
                H(j, l) = evaluate(hess[j][l], p);
        return H;
    }
};

}   // namespace

std::optional<SliceProbeWitness> slice_probe(const PolyFamily& f, const std::vector<Rational>& t_samples,
                                             std::uint64_t seed)
{
    constexpr int slices = 3;
    constexpr int starts = 24;
    constexpr int iterations = 80;
    constexpr double box = 0.1;
    constexpr double inner = 1e-3;

    std::uint64_t stream = 0;
    for (const auto& t : t_samples)
    {
        PolyFamily f_t = specialize_t(f, t);
        for (int s = 0; s < slices; ++s)
        {
            Rng rng(Rng::derive(seed, 0xad00 + stream++));
            Rational c(rng.integer(1, 3), rng.integer(60, 120));
            if (rng.bits() & 1)
                c = -c;
            PolyFamily g = drop_constant(substitute_z1(f_t, c));
            if (g.empty())
                continue;
            const int m = g.nvars();
            SliceSystem sys(g);
            double scale = 1.0;
            for (const auto& [b, coeff] : g.terms())
                scale = std::max(scale, 1.0 + std::abs(to_double(coeff.constant_term())));

            for (int k = 0; k < starts; ++k)
            {
                CVec z(m);
                for (int j = 0; j < m; ++j)
                    z[j] = std::polar(rng.uniform(0.0, box), rng.uniform(-M_PI, M_PI));
                try
                {
                    CVec r = sys.gradient(z);
                    for (int it = 0; it < iterations; ++it)
                    {
                        CVec step = sys.hessian(z).fullPivLu().solve(-r);
                        double lambda = 1.0;
                        bool moved = false;
                        for (int half = 0; half < 30; ++half, lambda *= 0.5)
                        {
                            CVec trial = z + lambda * step;
                            CVec tr = sys.gradient(trial);
                            if (tr.norm() < r.norm())
                            {
                                z = trial;
                                r = tr;
                                moved = true;
                                break;
                            }
                        }
                        if (!moved || z.cwiseAbs().maxCoeff() > 10 * box)
                            break;
                    }
                }
                catch (const EvaluationError&)
                {
                    continue;
                }
                const double radius = z.cwiseAbs().maxCoeff();
                const double gnorm = sys.gradient(z).norm();
                if (gnorm < 1e-12 * scale && radius >= inner && radius <= box)
                    return SliceProbeWitness{t, c, {z.data(), z.data() + m}, gnorm};
            }
        }
    }
    return std::nullopt;
}

LineSingularityReport check_line_singularity(const PolyFamily& f, const std::vector<Rational>& t_samples, int tier,
                                             std::uint64_t seed)
{
    LineSingularityReport report;
    report.axis_contained = axis_contained(f);
    report.restriction_isolated = "Yes";
    for (const auto& t : t_samples)
    {
        RestrictionCheck rc = check_restriction(f, t, tier, seed);
        if (rc.status == "No")
            report.restriction_isolated = "No";
        else if (rc.status == "Unknown" && report.restriction_isolated == "Yes")
            report.restriction_isolated = "Unknown";
        report.restriction.push_back(std::move(rc));
    }
    if (report.axis_contained)
    {
        report.slice_witness = slice_probe(f, t_samples, seed);
        report.slice_probe = report.slice_witness ? "Fail" : "Pass";
    }
    return report;
}

ConditionIiiReport check_condition_iii(const PolyFamily& f, ConditionIiiMode mode)
{
    ConditionIiiReport report;
    NewtonPolyhedron np = newton_polyhedron(f);
    try
    {
        report.vertex_data = z1zero_vertex_data(np);
    }
    catch (const DomainError&)
    {
        report.status = ConditionIiiStatus::Fail;
        return report;
    }
    const auto& alphas = report.vertex_data.alphas;
    const auto& a_sup = report.vertex_data.a_sup;

    std::optional<Exponent> strict_offender, vertex_offender;
    for (const auto& [b, c] : f.terms())
    {
        if (b[0] == 0)
            continue;
        bool strict_ok = true;
        for (std::size_t j = 1; j < b.size(); ++j)
            strict_ok = strict_ok && b[j] >= a_sup[j - 1];
        bool dominated = std::any_of(alphas.begin(), alphas.end(), [&](const Exponent& alpha) {
            for (std::size_t j = 1; j < b.size(); ++j)
            {
                if (b[j] < alpha[j])
                    return false;
            }
            return true;
        });
        if (!strict_ok && !strict_offender)
            strict_offender = b;
        if (!dominated && !vertex_offender)
            vertex_offender = b;
    }

    if (!strict_offender)
        report.status = ConditionIiiStatus::PassStrict;
    else if (mode == ConditionIiiMode::PerVertex && !vertex_offender)
        report.status = ConditionIiiStatus::PassPerVertex;
    else
    {
        report.status = ConditionIiiStatus::Fail;
        report.offender = mode == ConditionIiiMode::Strict ? strict_offender : vertex_offender;
    }
    return report;
}

namespace {

std::string exponent_text(const Exponent& b)
{
    std::string s = "(";
    for (std::size_t j = 0; j < b.size(); ++j)
        s += (j ? "," : "") + std::to_string(b[j]);
    return s + ")";
}

}   // namespace

AdmissibilityReport check_admissible(const PolyFamily& f, const AdmissibilityOptions& options)
{
    const auto& samples = options.t_samples;
    const bool has_zero = std::any_of(samples.begin(), samples.end(), [](const Rational& t) { return t == 0; });
    const auto nonzero = std::count_if(samples.begin(), samples.end(), [](const Rational& t) { return t != 0; });
    if (!has_zero || nonzero < 2)
        throw DomainError("t-samples must contain 0 and at least two nonzero values");
    if (f.empty())
        throw DomainError("the zero family is not a line singularity");

    AdmissibilityReport report;
    report.mode = options.mode;
    report.pure_z1_power = std::any_of(f.terms().begin(), f.terms().end(),
                                       [](const auto& kv) { return is_pure_power_of(kv.first, 0); });
    report.line_singularity = check_line_singularity(f, samples, options.tier, options.seed);

    std::uint64_t stream = 0;
    for (const auto& t : samples)
    {
        SampleReport sr;
        sr.t = t;
        PolyFamily f_t = specialize_t(f, t);
        if (f_t.empty())
        {
            sr.nondegeneracy.status = NondegStatus::Unknown;
        }
        else
        {
            sr.quasi_convenient = is_quasi_convenient(newton_polyhedron(f_t));
            sr.nondegeneracy = is_newton_nondegenerate(f_t, options.tier, Rng::derive(options.seed, stream));
        }
        ++stream;
        report.samples.push_back(std::move(sr));
    }
    report.condition_iii = check_condition_iii(f, options.mode);

    // Definite failures first, in a fixed order, then undecided checks.
    auto fail = [&](std::string reason) {
        report.overall = Overall::NotAdmissible;
        report.reason = std::move(reason);
        return report;
    };
    const auto& line = report.line_singularity;
    if (report.pure_z1_power)
        return fail("pure z1-power present");
    if (!line.axis_contained)
        return fail("z1-axis not contained in the singular locus");
    if (line.restriction_isolated == "No")
        return fail("restriction to z1 = 0 has a non-isolated critical point");
    if (line.slice_probe == "Fail")
        return fail("slice probe found a critical point off the z1-axis");
    for (const auto& sr : report.samples)
    {
        if (sr.t != 0 && !sr.quasi_convenient)
            return fail("not quasi-convenient at t = " + to_string(sr.t));
    }
    for (const auto& sr : report.samples)
    {
        if (sr.nondegeneracy.status == NondegStatus::Degenerate)
            return fail("Newton degenerate at t = " + to_string(sr.t));
    }
    if (report.condition_iii.status == ConditionIiiStatus::Fail)
    {
        return fail(report.condition_iii.offender
                        ? "condition (iii) fails at monomial " + exponent_text(*report.condition_iii.offender)
                        : std::string("condition (iii) undefined: no z1-free vertex"));
    }
    if (line.restriction_isolated == "Unknown")
    {
        report.overall = Overall::Unknown;
        report.reason = "isolatedness of the restriction to z1 = 0 undecided";
        return report;
    }
    for (const auto& sr : report.samples)
    {
        if (sr.nondegeneracy.status == NondegStatus::Unknown)
        {
            report.overall = Overall::Unknown;
            report.reason = "non-degeneracy undecided at t = " + to_string(sr.t);
            return report;
        }
    }
    report.overall = Overall::Admissible;
    return report;
}

nlohmann::ordered_json to_json(const AdmissibilityReport& r)
{
    using json = nlohmann::ordered_json;
    json line;
    line["axis_contained"] = r.line_singularity.axis_contained;
    json restr = json::array();
    for (const auto& rc : r.line_singularity.restriction)
    {
        restr.push_back({{"t", to_string(rc.t)},
                         {"status", rc.status},
                         {"mu", rc.mu ? json(*rc.mu) : json(nullptr)},
                         {"method", rc.method}});
    }
    line["restriction_isolated"] = r.line_singularity.restriction_isolated;
    line["restriction"] = restr;
    line["slice_probe"] = r.line_singularity.slice_probe;
    line["slice_probe_heuristic"] = true;
    if (const auto& w = r.line_singularity.slice_witness)
    {
        json point = json::array();
        for (const auto& z : w->point)
            point.push_back({z.real(), z.imag()});
        line["slice_witness"] = {{"t", to_string(w->t)},
                                 {"z1", to_string(w->z1)},
                                 {"point", point},
                                 {"gradient_norm", w->gradient_norm}};
    }
    else
    {
        line["slice_witness"] = nullptr;
    }

    json samples = json::array();
    for (const auto& sr : r.samples)
    {
        samples.push_back({{"t", to_string(sr.t)},
                           {"quasi_convenient", sr.quasi_convenient},
                           {"nondegeneracy", to_json(sr.nondegeneracy)}});
    }

    json iii;
    iii["status"] = to_string(r.condition_iii.status);
    iii["offender"] = r.condition_iii.offender ? json(*r.condition_iii.offender) : json(nullptr);
    iii["vertex_data"] = to_json(r.condition_iii.vertex_data);

    json j;
    j["line_singularity"] = line;
    j["pure_z1_power"] = r.pure_z1_power;
    j["samples"] = samples;
    j["condition_iii"] = iii;
    j["mode"] = to_string(r.mode);
    j["overall"] = to_string(r.overall);
    j["reason"] = r.reason;
    return j;
}

}   // namespace lecert
