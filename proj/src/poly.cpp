#include "lecert/poly.hpp"

#include <cctype>
#include <cmath>
#include <optional>
#include <sstream>

#include "lecert/errors.hpp"

namespace lecert {

// ---------------------------------------------------------------------------
// UniPoly
// ---------------------------------------------------------------------------

UniPoly::UniPoly(const Rational& c)
{
    if (c != 0)
        coeffs_.push_back(c);
}

UniPoly UniPoly::monomial(const Rational& c, int power)
{
    UniPoly p;
    if (c != 0)
    {
        p.coeffs_.assign(power + 1, Rational(0));
        p.coeffs_[power] = c;
    }
    return p;
}

Rational UniPoly::constant_term() const
{
    return coeffs_.empty() ? Rational(0) : coeffs_.front();
}

Rational UniPoly::operator()(const Rational& t) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * t + *it;
    return acc;
}

std::complex<double> UniPoly::operator()(std::complex<double> t) const
{
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * t + to_double(*it);
    return acc;
}

UniPoly UniPoly::derivative() const
{
    UniPoly d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        d.coeffs_.push_back(coeffs_[k] * static_cast<long>(k));
    d.trim();
    return d;
}

UniPoly& UniPoly::operator+=(const UniPoly& other)
{
    if (other.coeffs_.size() > coeffs_.size())
        coeffs_.resize(other.coeffs_.size(), Rational(0));
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k)
        coeffs_[k] += other.coeffs_[k];
    trim();
    return *this;
}

UniPoly& UniPoly::operator*=(const Rational& c)
{
    for (auto& x : coeffs_)
        x *= c;
    trim();
    return *this;
}

void UniPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

UniPoly operator+(UniPoly a, const UniPoly& b)
{
    a += b;
    return a;
}

UniPoly operator*(UniPoly a, const Rational& c)
{
    a *= c;
    return a;
}

// ---------------------------------------------------------------------------
// PolyFamily
// ---------------------------------------------------------------------------

PolyFamily::PolyFamily(int n, TermMap terms, std::string name) : n_(n), name_(std::move(name))
{
    if (n < 0)
        throw Error("negative variable count");
    for (auto& [b, c] : terms)
        add_term(b, c);
}

bool PolyFamily::is_t_free() const
{
    for (const auto& [b, c] : terms_)
    {
        if (!c.is_constant())
            return false;
    }
    return true;
}

std::vector<Exponent> PolyFamily::support() const
{
    std::vector<Exponent> out;
    out.reserve(terms_.size());
    for (const auto& [b, c] : terms_)
        out.push_back(b);
    return out;
}

Rational PolyFamily::constant_coefficient(const Exponent& b) const
{
    auto it = terms_.find(b);
    return it == terms_.end() ? Rational(0) : it->second.constant_term();
}

void PolyFamily::add_term(const Exponent& b, const UniPoly& c)
{
    if (static_cast<int>(b.size()) != n_)
        throw Error("exponent length " + std::to_string(b.size()) + " does not match variable count " +
                    std::to_string(n_));
    for (int e : b)
    {
        if (e < 0)
            throw Error("negative exponent");
    }
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted)
    {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

PolyFamily PolyFamily::with_name(std::string name) const
{
    PolyFamily g = *this;
    g.name_ = std::move(name);
    return g;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

enum class Tok
{
    Number,
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Equals,
    Comma,
    End
};

struct Token
{
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j, ++i)
        {
            if (src[i] == '\n')
            {
                ++line;
                col = 1;
            }
            else
            {
                ++col;
            }
        }
    };
    while (i < src.size())
    {
        char ch = src[i];
        if (ch == '#')
        {
            while (i < src.size() && src[i] != '\n')
                advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch)))
        {
            advance(1);
            continue;
        }
        Token tok{Tok::End, std::string(1, ch), line, col};
        if (std::isdigit(static_cast<unsigned char>(ch)))
        {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
                ++j;
            tok.kind = Tok::Number;
            tok.text = std::string(src.substr(i, j - i));
            advance(j - i);
            if (i < src.size() && (src[i] == '.' || src[i] == 'e' || src[i] == 'E'))
                throw ParseError("floating-point literals are not supported", line, col);
            out.push_back(tok);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_')
        {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            tok.kind = Tok::Ident;
            tok.text = std::string(src.substr(i, j - i));
            advance(j - i);
            out.push_back(tok);
            continue;
        }
        switch (ch)
        {
            case '+': tok.kind = Tok::Plus; break;
            case '-': tok.kind = Tok::Minus; break;
            case '*': tok.kind = Tok::Star; break;
            case '/': tok.kind = Tok::Slash; break;
            case '^': tok.kind = Tok::Caret; break;
            case '=': tok.kind = Tok::Equals; break;
            case ',': tok.kind = Tok::Comma; break;
            default:
                throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
        }
        advance(1);
        out.push_back(tok);
    }
    out.push_back(Token{Tok::End, "<end of input>", line, col});
    return out;
}

/// Index of a z-variable name ("z3" -> 3), or nullopt.
std::optional<int> z_index(const std::string& name)
{
    if (name.size() < 2 || name[0] != 'z')
        return std::nullopt;
    for (std::size_t k = 1; k < name.size(); ++k)
    {
        if (!std::isdigit(static_cast<unsigned char>(name[k])))
            return std::nullopt;
    }
    if (name[1] == '0' || name.size() > 4)
        return std::nullopt;
    return std::stoi(name.substr(1));
}

struct RawTerm
{
    Rational coeff;
    int t_power;
    std::map<int, int> z_powers;    // 1-based index -> exponent
    Token where;
};

class Parser
{
    public:
        explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

        PolyFamily run()
        {
            std::optional<int> declared;
            if (peek().kind == Tok::Ident && peek().text == "vars")
                declared = header();

            std::string name = "f";
            if (peek().kind == Tok::Ident && toks_[pos_ + 1].kind == Tok::Equals)
            {
                name = next().text;
                if (name == "t" || z_index(name))
                    fail("a variable cannot be used as the polynomial name", toks_[pos_ - 1]);
                next();
            }

            std::vector<RawTerm> terms = expression();
            if (peek().kind != Tok::End)
                fail("unexpected '" + peek().text + "'", peek());

            int max_index = 0;
            for (const auto& term : terms)
            {
                for (const auto& [idx, e] : term.z_powers)
                {
                    if (declared && idx > *declared)
                        fail("variable z" + std::to_string(idx) + " is not declared", term.where);
                    max_index = std::max(max_index, idx);
                }
            }
            int n = declared ? *declared : max_index;
            if (n < 2)
                throw ParseError("at least two z-variables are required (found " + std::to_string(n) + ")", 1, 1);

            PolyFamily f(n, {}, name);
            for (const auto& term : terms)
            {
                Exponent b(n, 0);
                for (const auto& [idx, e] : term.z_powers)
                    b[idx - 1] = e;
                f.add_term(b, UniPoly::monomial(term.coeff, term.t_power));
            }
            auto it = f.terms().find(Exponent(n, 0));
            if (it != f.terms().end())
            {
                // Locate the first contributing term for the diagnostic.
                for (const auto& term : terms)
                {
                    if (term.z_powers.empty())
                        fail("constant term present: f(t, 0) must vanish", term.where);
                }
            }
            return f;
        }

    private:
        int header()
        {
            next();     // "vars"
            int count = 0;
            bool seen_t = false;
            while (true)
            {
                Token tok = next();
                if (tok.kind != Tok::Ident)
                    fail("expected a variable name", tok);
                if (tok.text == "t")
                {
                    if (seen_t || count > 0)
                        fail("'t' must be declared once, before the z-variables", tok);
                    seen_t = true;
                }
                else
                {
                    auto idx = z_index(tok.text);
                    if (!idx || *idx != count + 1)
                        fail("expected z" + std::to_string(count + 1) + ", got '" + tok.text + "'", tok);
                    ++count;
                }
                if (peek().kind != Tok::Comma)
                    break;
                next();
            }
            if (count < 2)
                fail("declared variable count " + std::to_string(count) + " is below 2", toks_[pos_ - 1]);
            return count;
        }

        std::vector<RawTerm> expression()
        {
            std::vector<RawTerm> out;
            bool first = true;
            while (true)
            {
                Rational sign = 1;
                if (peek().kind == Tok::Plus || peek().kind == Tok::Minus)
                {
                    if (next().kind == Tok::Minus)
                        sign = -1;
                }
                else if (!first)
                {
                    break;
                }
                RawTerm term = product();
                term.coeff *= sign;
                out.push_back(std::move(term));
                first = false;
                if (peek().kind != Tok::Plus && peek().kind != Tok::Minus)
                    break;
            }
            return out;
        }

        RawTerm product()
        {
            RawTerm term{Rational(1), 0, {}, peek()};
            factor(term);
            while (peek().kind == Tok::Star)
            {
                next();
                factor(term);
            }
            return term;
        }

        void factor(RawTerm& term)
        {
            Token tok = next();
            if (tok.kind == Tok::Number)
            {
                Rational c = parse_rational(tok.text);
                if (peek().kind == Tok::Slash)
                {
                    next();
                    Token den = next();
                    if (den.kind != Tok::Number)
                        fail("expected a denominator", den);
                    if (den.text.find_first_not_of('0') == std::string::npos)
                        fail("zero denominator", den);
                    c = parse_rational(tok.text + "/" + den.text);
                }
                term.coeff *= c;
                return;
            }
            if (tok.kind != Tok::Ident)
                fail("expected a number or a variable, got '" + tok.text + "'", tok);

            int power = 1;
            if (peek().kind == Tok::Caret)
            {
                next();
                if (peek().kind == Tok::Minus)
                    fail("negative exponent", peek());
                Token e = next();
                if (e.kind != Tok::Number)
                    fail("expected an exponent", e);
                if (e.text.size() > 6)
                    fail("exponent too large", e);
                power = std::stoi(e.text);
            }
            if (tok.text == "t")
            {
                term.t_power += power;
                return;
            }
            auto idx = z_index(tok.text);
            if (!idx)
                fail("unknown variable '" + tok.text + "'", tok);
            term.z_powers[*idx] += power;
            if (term.z_powers[*idx] == 0)
                term.z_powers.erase(*idx);
        }

        const Token& peek() const { return toks_[pos_]; }

        Token next()
        {
            Token t = toks_[pos_];
            if (t.kind != Tok::End)
                ++pos_;
            return t;
        }

        [[noreturn]] static void fail(const std::string& msg, const Token& at)
        {
            throw ParseError(msg, at.line, at.column);
        }

        std::vector<Token> toks_;
        std::size_t pos_ = 0;
};

}   // namespace

PolyFamily parse_family(std::string_view source)
{
    try
    {
        return Parser(tokenize(source)).run();
    }
    catch (const ParseError&)
    {
        throw;
    }
    catch (const Error& e)
    {
        throw ParseError(e.what(), 1, 1);
    }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string monomial_text(const Rational& c, int t_power, const Exponent& b, bool leading)
{
    std::string vars;
    auto append = [&](const std::string& v, int e) {
        if (e == 0)
            return;
        if (!vars.empty())
            vars += "*";
        vars += v;
        if (e != 1)
            vars += "^" + std::to_string(e);
    };
    append("t", t_power);
    for (std::size_t j = 0; j < b.size(); ++j)
        append("z" + std::to_string(j + 1), b[j]);

    Rational mag = abs(c);
    std::string body;
    if (vars.empty())
        body = to_string(mag);
    else if (mag == 1)
        body = vars;
    else
        body = to_string(mag) + "*" + vars;

    if (leading)
        return (c < 0 ? "-" : "") + body;
    return (c < 0 ? " - " : " + ") + body;
}

}   // namespace

std::string expression_string(const PolyFamily& f)
{
    std::string out;
    for (const auto& [b, c] : f.terms())
    {
        const auto& cs = c.coefficients();
        for (std::size_t k = 0; k < cs.size(); ++k)
        {
            if (cs[k] == 0)
                continue;
            out += monomial_text(cs[k], static_cast<int>(k), b, out.empty());
        }
    }
    return out.empty() ? "0" : out;
}

std::string unparse(const PolyFamily& f)
{
    std::ostringstream os;
    os << "vars t";
    for (int j = 1; j <= f.nvars(); ++j)
        os << ", z" << j;
    os << "\n" << f.name() << " = " << expression_string(f) << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Algebra
// ---------------------------------------------------------------------------

PolyFamily specialize_t(const PolyFamily& f, const Rational& t0)
{
    PolyFamily g(f.nvars(), {}, f.name());
    for (const auto& [b, c] : f.terms())
        g.add_term(b, UniPoly(c(t0)));
    return g;
}

PolyFamily add_monomial(const PolyFamily& f, const Exponent& b, const Rational& c)
{
    PolyFamily g = f;
    g.add_term(b, UniPoly(c));
    return g;
}

PolyFamily add_pure_power(const PolyFamily& f, int var, int a)
{
    if (a < 1)
        throw Error("pure power exponent must be at least 1");
    if (var < 0 || var >= f.nvars())
        throw Error("variable index out of range");
    Exponent b(f.nvars(), 0);
    b[var] = a;
    return add_monomial(f, b, Rational(1));
}

PolyFamily derivative_t(const PolyFamily& f)
{
    PolyFamily g(f.nvars(), {}, f.name() + "_t");
    for (const auto& [b, c] : f.terms())
        g.add_term(b, c.derivative());
    return g;
}

PolyFamily derivative_z(const PolyFamily& f, int var)
{
    if (var < 0 || var >= f.nvars())
        throw Error("variable index out of range");
    PolyFamily g(f.nvars(), {}, f.name() + "_z" + std::to_string(var + 1));
    for (const auto& [b, c] : f.terms())
    {
        if (b[var] == 0)
            continue;
        Exponent d = b;
        --d[var];
        g.add_term(d, c * Rational(b[var]));
    }
    return g;
}

std::vector<PolyFamily> partials(const PolyFamily& f)
{
    std::vector<PolyFamily> out;
    out.push_back(derivative_t(f));
    for (int j = 0; j < f.nvars(); ++j)
        out.push_back(derivative_z(f, j));
    return out;
}

PolyFamily restrict_to_z1_zero(const PolyFamily& f)
{
    PolyFamily g(f.nvars() - 1, {}, f.name());
    for (const auto& [b, c] : f.terms())
    {
        if (b[0] != 0)
            continue;
        g.add_term(Exponent(b.begin() + 1, b.end()), c);
    }
    return g;
}

PolyFamily substitute_z1(const PolyFamily& f, const Rational& c1)
{
    PolyFamily g(f.nvars() - 1, {}, f.name());
    for (const auto& [b, c] : f.terms())
    {
        Rational factor = 1;
        for (int k = 0; k < b[0]; ++k)
            factor *= c1;
        g.add_term(Exponent(b.begin() + 1, b.end()), c * factor);
    }
    return g;
}

bool is_pure_power_of(const Exponent& b, int var)
{
    for (std::size_t j = 0; j < b.size(); ++j)
    {
        if (static_cast<int>(j) == var ? b[j] == 0 : b[j] != 0)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Numeric evaluation
// ---------------------------------------------------------------------------

namespace {

std::complex<double> monomial_value(const Exponent& b, const std::vector<std::complex<double>>& z)
{
    std::complex<double> m = 1.0;
    for (std::size_t j = 0; j < b.size(); ++j)
    {
        // Square-and-multiply keeps the rounding error logarithmic in b[j].
        std::complex<double> base = z[j], acc = 1.0;
        for (int e = b[j]; e > 0; e >>= 1)
        {
            if (e & 1)
                acc *= base;
            base *= base;
        }
        m *= acc;
    }
    return m;
}

void check_dimension(const PolyFamily& f, const ComplexPoint& p)
{
    if (static_cast<int>(p.z.size()) != f.nvars())
        throw Error("point dimension " + std::to_string(p.z.size()) + " does not match variable count " +
                    std::to_string(f.nvars()));
}

}   // namespace

std::complex<double> evaluate(const PolyFamily& f, const ComplexPoint& p)
{
    check_dimension(f, p);
    std::complex<double> acc = 0.0;
    for (const auto& [b, c] : f.terms())
    {
        std::complex<double> term = c(p.t) * monomial_value(b, p.z);
        if (!std::isfinite(term.real()) || !std::isfinite(term.imag()))
            throw EvaluationError("overflow while evaluating " + f.name());
        acc += term;
    }
    if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag()))
        throw EvaluationError("overflow while evaluating " + f.name());
    return acc;
}

double term_magnitude(const PolyFamily& f, const ComplexPoint& p)
{
    check_dimension(f, p);
    double acc = 0.0;
    for (const auto& [b, c] : f.terms())
        acc += std::abs(c(p.t) * monomial_value(b, p.z));
    return acc;
}

}   // namespace lecert
