#ifndef LECERT_POLY_HPP
#define LECERT_POLY_HPP

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lecert/rational.hpp"

/**
 * Exact polynomial families f(t, z1, ..., zn).
 *
 * A family is a finite sum of terms c(t) * z^b where c(t) is a univariate
 * polynomial in the deformation parameter t with rational coefficients.
 * Terms are kept in a map ordered lexicographically by exponent vector so
 * that every traversal (printing, hashing, face enumeration) is
 * deterministic.
 *
 * Variables are indexed from 0 in code: exponent entry j belongs to z_{j+1}.
 */

namespace lecert {

/// Exponent vector (b1, ..., bn), one non-negative entry per z-variable.
using Exponent = std::vector<int>;

/// Univariate polynomial in t over the rationals, coefficients stored from
/// t^0 upwards with no trailing zeros.
class UniPoly
{
    public:
        UniPoly() = default;
        explicit UniPoly(const Rational& c);

        static UniPoly monomial(const Rational& c, int power);

        const std::vector<Rational>& coefficients() const { return coeffs_; }
        int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
        bool is_zero() const { return coeffs_.empty(); }
        bool is_constant() const { return coeffs_.size() <= 1; }
        Rational constant_term() const;

        Rational operator()(const Rational& t) const;
        std::complex<double> operator()(std::complex<double> t) const;

        UniPoly derivative() const;

        UniPoly& operator+=(const UniPoly& other);
        UniPoly& operator*=(const Rational& c);

        friend bool operator==(const UniPoly&, const UniPoly&) = default;

    private:
        void trim();

        std::vector<Rational> coeffs_;
};

UniPoly operator+(UniPoly a, const UniPoly& b);
UniPoly operator*(UniPoly a, const Rational& c);

/// Evaluation point for numeric work: (t, z1, ..., zn).
struct ComplexPoint
{
    std::complex<double> t;
    std::vector<std::complex<double>> z;
};

class PolyFamily
{
    public:
        using TermMap = std::map<Exponent, UniPoly>;

        PolyFamily() = default;

        /// Terms whose coefficient is identically zero are dropped. Every
        /// exponent must have length n with non-negative entries.
        PolyFamily(int n, TermMap terms, std::string name = "f");

        int nvars() const { return n_; }
        const TermMap& terms() const { return terms_; }
        const std::string& name() const { return name_; }
        bool empty() const { return terms_.empty(); }
        std::size_t size() const { return terms_.size(); }

        /// True when no coefficient depends on t.
        bool is_t_free() const;

        /// Exponents of all terms, in lexicographic order.
        std::vector<Exponent> support() const;

        /// Coefficient of z^b at t^0; zero when absent. Meant for t-free families.
        Rational constant_coefficient(const Exponent& b) const;

        /// Merges c(t) * z^b into the family, dropping the term if it cancels.
        void add_term(const Exponent& b, const UniPoly& c);

        PolyFamily with_name(std::string name) const;

        friend bool operator==(const PolyFamily& a, const PolyFamily& b)
        {
            return a.n_ == b.n_ && a.terms_ == b.terms_;
        }

    private:
        int n_ = 0;
        TermMap terms_;
        std::string name_ = "f";
};

/**
 * Parses the polynomial input language:
 *
 *     # comment
 *     vars t, z1, z2, z3
 *     f = z2^4 + z3^3 + t*z1^2*z2^4*z3^3
 *
 * The header and the "f =" prefix are optional. Without a header, n is the
 * largest z-index used. Throws ParseError on syntax errors, a variable count
 * below 2, a nonzero constant term (f(t, 0) must vanish), or a negative
 * exponent.
 */
PolyFamily parse_family(std::string_view source);

/// Canonical source text ("vars" header plus "name = expr"); parsing it back
/// yields the same term map.
std::string unparse(const PolyFamily& f);

/// The expression part of unparse(), e.g. "z3^3 + z2^4 + t*z1^2*z2^4*z3^3".
std::string expression_string(const PolyFamily& f);

/// f_{t0}: every coefficient evaluated at t = t0. Zero results are dropped.
PolyFamily specialize_t(const PolyFamily& f, const Rational& t0);

/// f + z_{var+1}^a (coefficient 1, merged if present).
PolyFamily add_pure_power(const PolyFamily& f, int var, int a);

/// f + c * z^b.
PolyFamily add_monomial(const PolyFamily& f, const Exponent& b, const Rational& c);

PolyFamily derivative_t(const PolyFamily& f);
PolyFamily derivative_z(const PolyFamily& f, int var);

/// Exact partials (d/dt, d/dz1, ..., d/dzn), in that order.
std::vector<PolyFamily> partials(const PolyFamily& f);

/// Restriction to the hyperplane z1 = 0, as a family in (z2, ..., zn).
PolyFamily restrict_to_z1_zero(const PolyFamily& f);

/// Substitution z1 = c, as a family in (z2, ..., zn). Terms that become
/// constant in z are kept (they carry f(t, c, 0)).
PolyFamily substitute_z1(const PolyFamily& f, const Rational& c);

/// True when z^b = z_{var+1}^k for some k >= 1.
bool is_pure_power_of(const Exponent& b, int var);

/// Double-precision complex evaluation. Throws EvaluationError if any
/// intermediate or the result is not finite; throws lecert::Error on a
/// dimension mismatch.
std::complex<double> evaluate(const PolyFamily& f, const ComplexPoint& p);

/// Sum over terms of |c(t) z^b|, the magnitude scale of an evaluation.
double term_magnitude(const PolyFamily& f, const ComplexPoint& p);

}   // namespace lecert

#endif
