// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "lecert/certifier.hpp"
#include "lecert/le.hpp"
#include "lecert/milnor.hpp"
#include "lecert/newton.hpp"
#include "lecert/nondegen.hpp"
#include "lecert/poly.hpp"
#include "lecert/probe.hpp"
#include "modp_oracle.hpp"

using namespace lecert;

namespace {

constexpr double kLimitExamples = 5.0;    // seconds, criteria 1 and 2
constexpr double kLimitClosedForms = 30.0;
constexpr double kLimitProbe = 60.0;
constexpr double kWitnessTolerance = 1e-8;   // times coefficient scale
constexpr double kIdentityTolerance = 1e-9;
constexpr double kArcPassFraction = 0.9;
constexpr std::uint64_t kSeed = 42;
constexpr int kArcs = 20;

const char* kEx1 = "z2^4 + z3^3 + t*z1^2*z2^4*z3^3";
const char* kEx2 = "z2^2 + z3^2 + z1*z2^2*z3^2 + t*z1*z2^2";
const char* kEx3 = "z2^2 + z3^2 + t*z1^2*z2^2*z3^2";
const char* kJump = "z2^2 + z3^4 + t*z3^2";
const char* kBrianconSpeder = "z3^5 + t*z2^6*z3 + z2^7*z1 + z1^15";

const std::vector<Rational> kSamples{0, 1, Rational(1, 2), -2};

PolyFamily P(const std::string& expr, int n = 3)
{
    std::string header = "vars t";
    for (int i = 1; i <= n; ++i)
        header += ", z" + std::to_string(i);
    return parse_family(header + "\n" + expr);
}

struct Outcome
{
    bool pass = true;
    std::string detail;
};

// Artifacts of one criterion run, compared byte for byte by criterion 10.
using Artifacts = std::vector<std::string>;

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool table_constant(const Certificate& c, long long l0, long long l1)
{
    if (c.le_table.size() != kSamples.size())
        return false;
    for (const auto& row : c.le_table)
        if (!row.le || row.le->lambda0 != l0 || row.le->lambda1 != l1)
            return false;
    return true;
}

Outcome criterion1(Artifacts& art)
{
    auto start = std::chrono::steady_clock::now();
    CertifyOptions opt;
    opt.admissibility.mode = ConditionIiiMode::Strict;
    opt.admissibility.seed = kSeed;
    auto c = certify_family(P(kEx1), opt);
    double dt = seconds_since(start);
    art.push_back(to_json(c).dump(2));
    Outcome o;
    o.pass = c.admissibility.overall == Overall::Admissible && table_constant(c, 0, 6) &&
             c.verdict == Verdict::Equisingular && dt < kLimitExamples;
    o.detail = "strict mode, verdict " + to_string(c.verdict) + ", (0,6) at all samples: " +
               (table_constant(c, 0, 6) ? "yes" : "no") + ", " + std::to_string(dt) + " s";
    return o;
}

Outcome criterion2(Artifacts& art)
{
    auto start = std::chrono::steady_clock::now();
    CertifyOptions opt;
    opt.admissibility.seed = kSeed;
    auto c = certify_family(P(kEx2), opt);
    opt.admissibility.mode = ConditionIiiMode::Strict;
    auto s = certify_family(P(kEx2), opt);
    double dt = seconds_since(start);
    art.push_back(to_json(c).dump(2));
    art.push_back(to_json(s).dump(2));
    const bool offender = s.admissibility.condition_iii.offender &&
                          *s.admissibility.condition_iii.offender == Exponent{1, 2, 0};
    Outcome o;
    o.pass = table_constant(c, 0, 1) && c.verdict == Verdict::Equisingular && offender && dt < kLimitExamples;
    o.detail = "per-vertex verdict " + to_string(c.verdict) + ", strict offender (1,2,0): " +
               (offender ? "yes" : "no") + ", " + std::to_string(dt) + " s";
    return o;
}

Outcome criterion3(Artifacts& art)
{
    CertifyOptions opt;
    opt.admissibility.seed = kSeed;
    auto c = certify_family(P(kEx3), opt);
    art.push_back(to_json(c).dump(2));
    Outcome o;
    o.pass = c.admissibility.overall == Overall::Admissible && table_constant(c, 0, 1) &&
             c.verdict == Verdict::Equisingular;
    o.detail = "admissibility " + to_string(c.admissibility.overall) + ", verdict " + to_string(c.verdict);
    return o;
}

Outcome criterion4(Artifacts& art)
{
    auto start = std::chrono::steady_clock::now();
    int checked = 0, failed = 0;
    std::ostringstream log;
    auto check = [&](const PolyFamily& f, long long expected) {
        long long nu = newton_number(newton_polyhedron(f));
        auto mu = oracle::milnor_mod_p(f, 40);
        ++checked;
        if (nu != expected || !mu || *mu != nu)
            ++failed;
        log << expression_string(f) << " nu=" << nu << " mu=" << (mu ? std::to_string(*mu) : "none") << "\n";
    };
    for (int a = 2; a <= 6; ++a)
        for (int b = 2; b <= 6; ++b)
            check(P("z1^" + std::to_string(a) + " + z2^" + std::to_string(b), 2), (a - 1) * (b - 1));
    for (int a = 5; a <= 10; ++a)
        check(P("z1^" + std::to_string(a) + " + z2^4 + z3^3"), 6 * (a - 1));
    double dt = seconds_since(start);
    art.push_back(log.str());
    Outcome o;
    o.pass = failed == 0 && dt < kLimitClosedForms;
    o.detail = std::to_string(checked - failed) + "/" + std::to_string(checked) +
               " closed forms equal the colength Milnor number, " + std::to_string(dt) + " s";
    return o;
}

Outcome criterion5(Artifacts& art)
{
    int checked = 0, failed = 0;
    std::ostringstream log;
    for (const char* expr : {kEx1, kEx2, kEx3, kJump})
    {
        PolyFamily f = P(expr);
        const int a = choose_exponent_a(f, kSamples, 3, kSeed);
        for (const auto& t : kSamples)
        {
            PolyFamily ft = specialize_t(f, t);
            LeNumbers le = le_numbers(ft, a, 3, kSeed);
            for (int ap = a; ap <= a + 5; ++ap)
            {
                auto nu = certified_nu_with_power(ft, ap, 3, kSeed);
                ++checked;
                if (!nu || *nu != le.lambda0 + (ap - 1) * le.lambda1)
                    ++failed;
            }
            auto slice = generic_slice_milnor(ft, 3, kSeed);
            ++checked;
            if (!slice || *slice != le.lambda1)
                ++failed;
            log << expr << " t=" << to_string(t) << " " << to_json(le).dump() << "\n";
        }
    }
    art.push_back(log.str());
    return {failed == 0, std::to_string(checked - failed) + "/" + std::to_string(checked) +
                             " affinity and slice identities hold exactly"};
}

Outcome criterion6(Artifacts& art)
{
    int checks = 0, skipped = 0;
    bool ok = true;
    for (const char* expr : {kEx1, kEx2, kEx3, kJump})
    {
        PolyFamily f = P(expr);
        const int a = choose_exponent_a(f, kSamples, 3, kSeed);
        const std::size_t m = z1zero_vertex_data(newton_polyhedron(f)).alphas.size();
        auto r = deformation_invariance_check(f, random_deformations(m, 5, kSeed), a, kSamples);
        art.push_back(to_json(r).dump());
        ok = ok && r.ok && !r.checks.empty();
        checks += static_cast<int>(r.checks.size());
        skipped += r.skipped;
    }
    return {ok, std::to_string(checks) + " deformations equal, " + std::to_string(skipped) + " skipped"};
}

Outcome criterion7(Artifacts& art)
{
    PolyFamily f = P(kJump);
    CertifyOptions opt;
    opt.admissibility.seed = kSeed;
    auto c = certify_family(f, opt);
    art.push_back(to_json(c).dump(2));
    // Colength oracle on the transverse slices z1 = const.
    auto mu0 = oracle::milnor_mod_p(P("z1^2 + z2^4", 2));
    auto mu1 = oracle::milnor_mod_p(P("z1^2 + z2^4 + z2^2", 2));
    bool jump = c.le_table.size() == kSamples.size() && c.le_table[0].le && c.le_table[0].le->lambda1 == 3;
    for (std::size_t i = 1; jump && i < c.le_table.size(); ++i)
        jump = c.le_table[i].le && c.le_table[i].le->lambda1 == 1;
    const bool reason =
        std::find(c.reasons.begin(), c.reasons.end(), "Lê numbers not constant") != c.reasons.end();
    Outcome o;
    o.pass = jump && mu0 == 3 && mu1 == 1 && c.verdict == Verdict::Inconclusive && reason;
    o.detail = "lambda1 3 -> 1: " + std::string(jump ? "yes" : "no") + ", oracle (" +
               (mu0 ? std::to_string(*mu0) : "none") + ", " + (mu1 ? std::to_string(*mu1) : "none") +
               "), verdict " + to_string(c.verdict);
    return o;
}

Outcome criterion8(Artifacts& art)
{
    bool ok = true;
    std::ostringstream detail;

    PolyFamily g = P("z2^2 + 2*z2*z3 + z3^2");
    auto v = is_newton_nondegenerate(g, 3, kSeed);
    art.push_back(to_json(v).dump());
    bool witness = false;
    if (v.status == NondegStatus::Degenerate && v.witness)
    {
        PolyFamily fp = face_polynomial(g, v.witness->face);
        auto d = partials(fp);
        ComplexPoint p{0.0, v.witness->point};
        witness = true;
        for (const auto& z : p.z)
            witness = witness && z != std::complex<double>(0.0);
        for (int j = 1; j <= fp.nvars(); ++j)
            witness = witness && std::abs(evaluate(d[j], p)) < kWitnessTolerance * coefficient_scale(fp);
    }
    ok = ok && witness;
    detail << "witness verified: " << (witness ? "yes" : "no");

    bool corpus = is_newton_nondegenerate(P("z2^2 + z3^2"), 3, kSeed).status == NondegStatus::Nondegenerate;
    for (const char* expr : {kEx1, kEx2, kEx3})
        for (const auto& t : kSamples)
        {
            auto r = is_newton_nondegenerate(specialize_t(P(expr), t), 3, kSeed);
            corpus = corpus && r.status == NondegStatus::Nondegenerate;
        }
    ok = ok && corpus;
    detail << ", corpus nondegenerate: " << (corpus ? "yes" : "no");

    // Every face of degree <= 6 in two variables: segments with positive
    // normal and all coefficient choices from a fixed set.
    const std::vector<Rational> coeffs{1, -1, 2, -3, Rational(1, 2)};
    int decided = 0, mismatches = 0, resolved = 0;
    auto compare = [&](const std::vector<std::pair<Exponent, Rational>>& terms, long long w1, long long w2) {
        PolyFamily::TermMap m;
        for (const auto& [e, c] : terms)
            m[e] += UniPoly(c);
        PolyFamily fp(2, m);
        auto exact = exact_face_degenerate(fp, 2);
        if (!exact)
            return;
        ++decided;
        if (*exact != oracle::torus_critical_point_mod_p(fp, {w1, w2}))
        {
            ++mismatches;
            // Diagnostic only: does the face agree over 10009 = 1 mod 4?
            if (*exact == oracle::torus_critical_point_mod_p(fp, {w1, w2}, 10009))
                ++resolved;
        }
    };
    for (int a0 = 0; a0 <= 6; ++a0)
        for (int b0 = 0; b0 <= 6 - a0; ++b0)
        {
            for (const auto& c : coeffs)
                if (a0 + b0 > 0)
                    compare({{{a0, b0}, c}}, 1, 1);
            for (int a1 = a0 + 1; a1 <= 6; ++a1)
                for (int b1 = 0; b1 < b0 && a1 + b1 <= 6; ++b1)
                {
                    const int gcd = std::gcd(a1 - a0, b0 - b1);
                    const int dx = (a1 - a0) / gcd, dy = (b0 - b1) / gcd;
                    auto pt = [&](int k) { return Exponent{a0 + k * dx, b0 - k * dy}; };
                    for (const auto& c0 : coeffs)
                        for (const auto& c1 : coeffs)
                        {
                            compare({{pt(0), c0}, {pt(gcd), c1}}, dy, dx);
                            for (int k = 1; k < gcd; ++k)
                                compare({{pt(0), c0}, {pt(k), c1}, {pt(gcd), Rational(1)}}, dy, dx);
                        }
                    if (gcd >= 2)
                        for (const auto& A : coeffs)
                            for (const auto& B : coeffs)
                                compare({{pt(0), A * A}, {pt(1), 2 * A * B}, {pt(2), B * B}}, dy, dx);
                }
        }
    ok = ok && mismatches == 0 && decided > 0;
    detail << ", finite-field oracle (p = 10007) agrees on " << decided - mismatches << "/" << decided << " faces";
    if (mismatches > 0)
        detail << " (" << resolved << " of the disagreements agree over p = 10009; their critical points need "
               << "sqrt(-1), absent from F_10007)";
    art.push_back(detail.str());
    return {ok, detail.str()};
}

Outcome criterion9(Artifacts& art)
{
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream detail;
    auto fraction = [](int k) { return static_cast<double>(k) / kArcs; };
    for (const auto& [name, expr] : {std::pair{"ex1", kEx1}, std::pair{"ex2", kEx2}, std::pair{"ex3", kEx3}})
    {
        ProbeConfig cfg;
        cfg.arcs = kArcs;
        cfg.seed = kSeed;
        auto r = run_probe(P(expr), cfg);
        art.push_back(to_json(r).dump());
        art.push_back(to_csv(r));
        const bool pass = fraction(r.pass_R1) >= kArcPassFraction && fraction(r.pass_R2) >= kArcPassFraction &&
                          fraction(r.pass_C1) >= kArcPassFraction && fraction(r.pass_C2) >= kArcPassFraction &&
                          r.max_identity_error < kIdentityTolerance;
        ok = ok && pass;
        detail << name << " " << r.pass_R1 << "/" << r.pass_R2 << "/" << r.pass_C1 << "/" << r.pass_C2
               << " id " << r.max_identity_error << "; ";
    }
    ProbeConfig bs;
    bs.arcs = kArcs;
    bs.seed = kSeed;
    bs.axis = AxisMode::Isolated;
    auto r = run_probe(P(kBrianconSpeder), bs);
    art.push_back(to_json(r).dump());
    art.push_back(to_csv(r));
    const bool bs_pass = fraction(r.pass_R2) >= kArcPassFraction && r.max_identity_error < kIdentityTolerance;
    ok = ok && bs_pass;
    double dt = seconds_since(start);
    ok = ok && dt < kLimitProbe;
    detail << "Briancon-Speder (c)-ratio " << r.pass_R2 << "/" << kArcs << "; " << dt << " s";
    return {ok, detail.str()};
}

}   // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome(Artifacts&)>>> criteria{
        {"Example 1 certificate", criterion1},
        {"Example 2 certificate and strict offender", criterion2},
        {"Section 3 example certificate", criterion3},
        {"Newton number closed forms vs colength", criterion4},
        {"ILM affinity and slice Milnor numbers", criterion5},
        {"deformation invariance", criterion6},
        {"non-constant control family", criterion7},
        {"non-degeneracy and finite-field oracle", criterion8},
        {"arc probe suite", criterion9},
    };

    int failures = 0;
    std::vector<Artifacts> first(criteria.size());
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        Outcome o;
        try
        {
            o = criteria[i].second(first[i]);
        }
        catch (const std::exception& e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }

    // Criterion 10: a second run must reproduce every artifact.
    std::size_t identical = 0, total = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        Artifacts again;
        try
        {
            criteria[i].second(again);
        }
        catch (const std::exception&)
        {
        }
        // Timing text differs between runs; criteria 1-9 artifacts carry none.
        ++total;
        identical += again == first[i];
    }
    const bool det = identical == total;
    failures += !det;
    std::printf("%s criterion 10 (determinism): %zu/%zu criteria reproduce byte-identical artifacts\n",
                det ? "PASS" : "FAIL", identical, total);
    return failures;
}
