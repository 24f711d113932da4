#include "doctest.h"

#include "lecert/errors.hpp"
#include "lecert/le.hpp"
#include "lecert/milnor.hpp"
#include "lecert/newton.hpp"
#include "lecert/poly.hpp"
#include "modp_oracle.hpp"

using namespace lecert;

namespace {

PolyFamily P(const std::string& expr)
{
    return parse_family("vars t, z1, z2, z3\n" + expr);
}

const char* kEx1 = "z2^4 + z3^3 + t*z1^2*z2^4*z3^3";
const char* kEx2 = "z2^2 + z3^2 + z1*z2^2*z3^2 + t*z1*z2^2";
const char* kEx3 = "z2^2 + z3^2 + t*z1^2*z2^2*z3^2";
const char* kJump = "z2^2 + z3^4 + t*z3^2";

const std::vector<Rational> kSamples{0, 1, Rational(1, 2), -2};

}   // namespace

TEST_CASE("milnor_via_nu")
{
    CHECK(milnor_via_nu(P("z1^5 + z2^4 + z3^3")) == 24);
    CHECK(milnor_via_nu(parse_family("vars t, z1, z2\nz1^2 + z2^2")) == 1);
    CHECK_THROWS_AS(milnor_via_nu(P("z2^2 + z3^2")), DomainError);
    CHECK_THROWS_AS(milnor_via_nu(P("z1^2 + z2^2 + 2*z2*z3 + z3^2")), DomainError);
}

TEST_CASE("exponent choice")
{
    // M = 2 gives the starting value 4, where 6(a - 1) is already affine.
    CHECK(choose_exponent_a(P(kEx1), kSamples) == 4);
    CHECK(choose_exponent_a(P(kEx2), kSamples) >= 3);
    CHECK(choose_exponent_a(P(kEx3), kSamples) >= 3);
    for (int a = 5; a <= 9; ++a)
        CHECK(certified_nu_with_power(specialize_t(P(kEx1), 1), a) == 6 * (a - 1));
    for (int a = 3; a <= 7; ++a)
        CHECK(certified_nu_with_power(specialize_t(P(kEx3), 1), a) == a - 1);
}

TEST_CASE("Le numbers of the examples")
{
    auto e1 = le_numbers(specialize_t(P(kEx1), 1), choose_exponent_a(P(kEx1), kSamples));
    CHECK(e1.lambda0 == 0);
    CHECK(e1.lambda1 == 6);
    auto e2 = le_numbers(specialize_t(P(kEx2), Rational(1, 2)), choose_exponent_a(P(kEx2), kSamples));
    CHECK(e2.lambda0 == 0);
    CHECK(e2.lambda1 == 1);
    auto e3 = le_numbers(specialize_t(P(kEx3), 0), choose_exponent_a(P(kEx3), kSamples));
    CHECK(e3.lambda0 == 0);
    CHECK(e3.lambda1 == 1);
}

TEST_CASE("jump family: lambda1 matches the colength oracle on the slice")
{
    PolyFamily f = P(kJump);
    int a = choose_exponent_a(f, kSamples);
    CHECK(le_numbers(specialize_t(f, 0), a).lambda1 == 3);
    CHECK(le_numbers(specialize_t(f, 1), a).lambda1 == 1);
    CHECK(oracle::milnor_mod_p(parse_family("vars t, z1, z2\nz1^2 + z2^4")) == 3);
    CHECK(oracle::milnor_mod_p(parse_family("vars t, z1, z2\nz1^2 + z2^4 + z2^2")) == 1);
}

TEST_CASE("slice Milnor numbers")
{
    CHECK(slice_milnor(specialize_t(P(kEx1), 1), Rational(1, 3)) == 6);
    CHECK(slice_milnor(specialize_t(P(kEx2), 1), Rational(1, 3)) == 1);
    // z1-free germs: the slice is the germ itself.
    CHECK(slice_milnor(P("z2^3 + z3^5"), Rational(1, 7)) == 8);
    CHECK(generic_slice_milnor(specialize_t(P(kEx1), -2)) == 6);
}

TEST_CASE("ILM formula is affine over a wider window")
{
    for (const char* expr : {kEx1, kEx2, kEx3, kJump})
    {
        PolyFamily f = P(expr);
        const int a = choose_exponent_a(f, kSamples);
        for (const auto& t : kSamples)
        {
            PolyFamily ft = specialize_t(f, t);
            LeNumbers le = le_numbers(ft, a);
            for (const auto& [ap, nu] : le.nu_values)
                CHECK(nu == le.lambda0 + (ap - 1) * le.lambda1);
            for (int ap = a; ap <= a + 5; ++ap)
            {
                auto nu = certified_nu_with_power(ft, ap);
                REQUIRE(nu);
                CHECK(*nu == le.lambda0 + (ap - 1) * le.lambda1);
            }
            CHECK(generic_slice_milnor(ft, 3, 42) == le.lambda1);
        }
    }
}

TEST_CASE("nu(f_t + z1^a) matches the colength oracle")
{
    for (const char* expr : {kEx2, kEx3, kJump})
    {
        PolyFamily ft = specialize_t(P(expr), 1);
        for (int a = 3; a <= 5; ++a)
        {
            auto nu = certified_nu_with_power(ft, a);
            REQUIRE(nu);
            CHECK(oracle::milnor_mod_p(add_pure_power(ft, 0, a)) == *nu);
        }
    }
}
