#include "lecert/rational.hpp"

#include <cctype>

#include "lecert/errors.hpp"

namespace lecert {

namespace {

bool is_integer_literal(std::string_view s)
{
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-'))
        ++i;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
    {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    }
    return true;
}

}   // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
        throw Error("malformed rational literal '" + std::string(text) + "'");

    std::string n(num);
    if (n.front() == '+')
        n.erase(0, 1);
    Integer p(n);
    Integer q{std::string(den)};
    if (q == 0)
        throw Error("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
}

std::string to_string(const Rational& q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational& q)
{
    return q.convert_to<double>();
}

}   // namespace lecert
