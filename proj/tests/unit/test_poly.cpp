#include "doctest.h"

#include <complex>

#include "finite_diff.hpp"
#include "lecert/errors.hpp"
#include "lecert/poly.hpp"
#include "lecert/random.hpp"

using namespace lecert;

namespace {

const char* kSection3 = "vars t, z1, z2, z3\nf = z2^2 + z3^2 + t*z1^2*z2^2*z3^2";

PolyFamily random_family(Rng& rng, int n)
{
    PolyFamily::TermMap terms;
    const int count = static_cast<int>(rng.integer(1, 5));
    for (int k = 0; k < count; ++k)
    {
        Exponent e(n);
        int deg = 0;
        for (auto& x : e)
        {
            x = static_cast<int>(rng.integer(0, 3));
            deg += x;
        }
        if (deg == 0)
            e[n - 1] = 1;
        UniPoly c = UniPoly::monomial(rng.small_rational(5, 4), 0) +
                    UniPoly::monomial(rng.small_rational(3, 2), static_cast<int>(rng.integer(1, 2)));
        terms[e] += c;
    }
    return PolyFamily(n, terms);
}

}   // namespace

TEST_CASE("parse section 3 family")
{
    PolyFamily f = parse_family(kSection3);
    CHECK(f.nvars() == 3);
    REQUIRE(f.size() == 3);
    CHECK(f.terms().at({0, 2, 0}) == UniPoly(1));
    CHECK(f.terms().at({0, 0, 2}) == UniPoly(1));
    CHECK(f.terms().at({2, 2, 2}) == UniPoly::monomial(1, 1));
}

TEST_CASE("parse cancellation and errors")
{
    CHECK(parse_family("vars t, z1, z2, z3\nz2^2 - z2^2 + z3^3").size() == 1);
    CHECK_THROWS_AS(parse_family("vars t, z1, z2\n1 + z2^2"), ParseError);
    CHECK_THROWS_AS(parse_family("vars t, z1, z2\nz2^-1"), ParseError);
    CHECK_THROWS_AS(parse_family("vars t, z1\nz1^2"), ParseError);
    CHECK_THROWS_AS(parse_family("vars t, z1, z2\nz2^2 +"), ParseError);
    try
    {
        parse_family("vars t, z1, z2\nf = z2^2 + * z1");
        FAIL("expected a parse error");
    }
    catch (const ParseError& e)
    {
        CHECK(e.line() == 2);
        CHECK(e.column() > 1);
    }
}

TEST_CASE("parse headerless input infers n")
{
    PolyFamily f = parse_family("z1^3 + z2^4");
    CHECK(f.nvars() == 2);
    CHECK(f.size() == 2);
}

TEST_CASE("rationals are canonical")
{
    Rational q = parse_rational("-6/4");
    CHECK(to_string(q) == "-3/2");
    CHECK(boost::multiprecision::denominator(parse_rational("10/5")) == 1);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
}

TEST_CASE("unparse round-trips")
{
    Rng rng(7);
    for (int k = 0; k < 200; ++k)
    {
        PolyFamily f = random_family(rng, static_cast<int>(rng.integer(2, 4)));
        if (f.empty())
            continue;
        CHECK(parse_family(unparse(f)) == f);
    }
}

TEST_CASE("specialize_t")
{
    PolyFamily f = parse_family(kSection3);
    CHECK(specialize_t(f, 0) == parse_family("vars t, z1, z2, z3\nz2^2 + z3^2"));
    CHECK(specialize_t(f, 1) == parse_family("vars t, z1, z2, z3\nz2^2 + z3^2 + z1^2*z2^2*z3^2"));
    PolyFamily g = parse_family("vars t, z1, z2, z3\nz2^4 + z3^3 + t*z1^2*z2^4*z3^3");
    CHECK(specialize_t(g, Rational(1, 2)).constant_coefficient({2, 4, 3}) == Rational(1, 2));
}

TEST_CASE("add_pure_power")
{
    CHECK(add_pure_power(parse_family("vars t, z1, z2, z3\nz2^4 + z3^3"), 0, 5) ==
          parse_family("vars t, z1, z2, z3\nz1^5 + z2^4 + z3^3"));
    CHECK(add_pure_power(parse_family("vars t, z1, z2\nz1^5 + z2^2"), 0, 5) ==
          parse_family("vars t, z1, z2\n2*z1^5 + z2^2"));
    CHECK(add_pure_power(parse_family("vars t, z1, z2, z3\nz2^2 + z3^2"), 1, 2) ==
          parse_family("vars t, z1, z2, z3\n2*z2^2 + z3^2"));
}

TEST_CASE("partials")
{
    auto d = partials(parse_family("vars t, z1, z2, z3\nt*z1^2*z2^2*z3^2"));
    REQUIRE(d.size() == 4);
    CHECK(d[1] == parse_family("vars t, z1, z2, z3\n2*t*z1*z2^2*z3^2"));
    auto e = partials(parse_family("vars t, z1, z2, z3\nz2^2 + z3^2 + t*z1*z2^2"));
    CHECK(e[0] == parse_family("vars t, z1, z2, z3\nz1*z2^2"));
}

TEST_CASE("evaluate")
{
    using C = std::complex<double>;
    PolyFamily g = parse_family("vars t, z1, z2, z3\nz2^2 + z3^2");
    CHECK(std::abs(evaluate(g, {C(0.3), {C(5, 1), C(0, 1), C(1)}})) < 1e-15);
    PolyFamily h = parse_family("vars t, z1, z2, z3\nt*z1*z2^2");
    CHECK(std::abs(evaluate(h, {C(2), {C(1), C(3), C(0)}}) - C(18)) < 1e-12);
    PolyFamily f = parse_family(kSection3);
    CHECK(evaluate(f, {C(0.7, -0.2), {C(1.5, 2.0), C(0), C(0)}}) == C(0));
    CHECK_THROWS_AS(evaluate(parse_family("vars t, z1, z2\nz2^300"), {C(0), {C(1), C(1e300)}}), EvaluationError);
}

TEST_CASE("partials agree with central differences")
{
    Rng rng(11);
    for (int k = 0; k < 20; ++k)
    {
        PolyFamily f = random_family(rng, 3);
        if (f.empty())
            continue;
        ComplexPoint p{rng.complex_normal() * 0.5, {}};
        for (int j = 0; j < 3; ++j)
            p.z.push_back(rng.complex_normal() * 0.5);
        auto d = partials(f);
        for (int v = 0; v <= 3; ++v)
        {
            auto exact = evaluate(d[v], p);
            auto approx = oracle::central_difference(f, p, v);
            CHECK(std::abs(exact - approx) <= 1e-6 * (1.0 + std::abs(exact)));
        }
    }
}

TEST_CASE("specialization commutes with z-partials")
{
    Rng rng(13);
    for (int k = 0; k < 50; ++k)
    {
        PolyFamily f = random_family(rng, 3);
        if (f.empty())
            continue;
        Rational t0 = rng.small_rational(4, 3);
        auto d = partials(f);
        PolyFamily ft = specialize_t(f, t0);
        for (int j = 0; j < 3; ++j)
        {
            PolyFamily lhs = specialize_t(d[j + 1], t0);
            PolyFamily rhs = ft.empty() ? PolyFamily(3, {}) : derivative_z(ft, j);
            CHECK(lhs == rhs);
        }
    }
}
