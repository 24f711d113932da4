#include "doctest.h"

#include <cmath>

#include "lecert/errors.hpp"
#include "lecert/poly.hpp"
#include "lecert/probe.hpp"

using namespace lecert;

namespace {

PolyFamily P(const std::string& expr)
{
    return parse_family("vars t, z1, z2, z3\n" + expr);
}

const char* kEx1 = "z2^4 + z3^3 + t*z1^2*z2^4*z3^3";
const char* kEx2 = "z2^2 + z3^2 + z1*z2^2*z3^2 + t*z1*z2^2";
const char* kEx3 = "z2^2 + z3^2 + t*z1^2*z2^2*z3^2";

ProbeConfig small_config(int arcs = 6)
{
    ProbeConfig c;
    c.arcs = arcs;
    return c;
}

}   // namespace

TEST_CASE("control function")
{
    auto rho = control_function(P(kEx1), AxisMode::Line);
    REQUIRE(rho.alphas.size() == 2);
    for (double x : {0.5, -0.3, 0.01})
    {
        std::vector<std::complex<double>> z{0.7, x, 0.0};
        CHECK(rho.value(z) == doctest::Approx(std::pow(x, 8)).epsilon(1e-12));
        auto g = rho.gradient(z);
        REQUIRE(g.size() == 4);
        CHECK(std::abs(g[2]) == doctest::Approx(4 * std::pow(std::abs(x), 7)).epsilon(1e-12));
    }
    std::vector<std::complex<double>> axis{1.3, 0.0, 0.0};
    CHECK(rho.value(axis) == 0.0);
    for (const auto& v : rho.gradient(axis))
        CHECK(v == std::complex<double>(0.0));
}

TEST_CASE("gradient data on the singular locus is rejected")
{
    PolyFamily f = P(kEx1);
    auto d = partials(f);
    auto rho = control_function(f, AxisMode::Line);
    CHECK_THROWS_AS(gradients_at(d, rho, {0.5, {0.2, 0.0, 0.0}}, AxisMode::Line), DomainError);
}

TEST_CASE("log-log slope and ratio fit")
{
    std::vector<double> s{1, 0.5, 0.25, 0.125}, y;
    for (double x : s)
        y.push_back(3 * x * x);
    CHECK(loglog_slope(s, y) == doctest::Approx(2.0));
    auto fit = fit_ratio(s, y, 0.2, 0.1);
    CHECK(fit.pass);
    auto flat = fit_ratio(s, {1, 1, 1, 1}, 0.2, 0.1);
    CHECK_FALSE(flat.pass);
}

TEST_CASE("arcs satisfy their invariants")
{
    PolyFamily f = P(kEx1);
    auto arcs = make_arcs(f, small_config(20));
    CHECK(arcs.size() == 20);
    for (const auto& arc : arcs)
    {
        REQUIRE(arc.s.size() == 15);
        for (std::size_t k = 1; k < arc.s.size(); ++k)
            CHECK(arc.s[k] < arc.s[k - 1]);
        for (std::size_t k = 0; k < arc.points.size(); ++k)
        {
            const auto& p = arc.points[k];
            double grad = 0;
            for (const auto& d : partials(f))
                grad += std::norm(evaluate(d, p));
            CHECK(std::abs(evaluate(f, p)) <= 1e-12 * (1 + std::sqrt(grad)));
            CHECK(std::abs(p.z[1]) + std::abs(p.z[2]) > 0);
        }
    }
}

TEST_CASE("wedge identity and pass implications")
{
    for (const char* expr : {kEx1, kEx2, kEx3})
    {
        auto r = run_probe(P(expr), small_config(8));
        CHECK(r.max_identity_error < 1e-9);
        CHECK(r.pass_R1 >= 7);
        CHECK(r.pass_R2 >= 7);
        for (const auto& a : r.arcs)
        {
            for (const auto& s : a.samples)
            {
                CHECK(std::isfinite(s.R1));
                CHECK(std::isfinite(s.R2));
                CHECK(s.identity_error < 1e-9);
            }
            if (a.R2.pass)
            {
                CHECK(a.C1.pass);
                CHECK(a.C2.pass);
            }
        }
    }
}

TEST_CASE("isolated mode on the Briancon-Speder family")
{
    ProbeConfig c = small_config(6);
    c.axis = AxisMode::Isolated;
    auto r = run_probe(P("z3^5 + t*z2^6*z3 + z2^7*z1 + z1^15"), c);
    CHECK(r.pass_R2 >= 5);
    CHECK(r.max_identity_error < 1e-9);
}

TEST_CASE("probe output is deterministic")
{
    auto a = run_probe(P(kEx2), small_config(4));
    auto b = run_probe(P(kEx2), small_config(4));
    CHECK(to_csv(a) == to_csv(b));
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK(to_csv(a).rfind("arc_id,k,s,R1,R2,C1,C2\n", 0) == 0);
}
