#include "lecert/nondegen.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include <Eigen/Dense>

#include "lecert/errors.hpp"
#include "lecert/linalg.hpp"
#include "lecert/random.hpp"

namespace lecert {

std::string to_string(NondegStatus s)
{
    switch (s)
    {
        case NondegStatus::Nondegenerate: return "Nondegenerate";
        case NondegStatus::Degenerate: return "Degenerate";
        case NondegStatus::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::string to_string(FaceMethod m)
{
    switch (m)
    {
        case FaceMethod::Vertex: return "vertex";
        case FaceMethod::Binomial: return "binomial";
        case FaceMethod::Kernel: return "kernel";
        case FaceMethod::Numeric: return "numeric";
        case FaceMethod::Undecided: return "undecided";
    }
    return "undecided";
}

PolyFamily face_polynomial(const PolyFamily& f, const Face& face)
{
    if (!f.is_t_free())
        throw DomainError("face polynomial requires t-free coefficients");
    PolyFamily::TermMap terms;
    for (const auto& b : face.support_points)
    {
        auto it = f.terms().find(b);
        if (it != f.terms().end())
            terms.emplace(b, it->second);
    }
    return PolyFamily(f.nvars(), std::move(terms), f.name());
}

double coefficient_scale(const PolyFamily& face_poly)
{
    double m = 0.0;
    for (const auto& [b, c] : face_poly.terms())
        m = std::max(m, std::abs(to_double(c.constant_term())));
    return 1.0 + m;
}

namespace {

std::optional<bool> exact_decision(const PolyFamily& face_poly, int max_tier, FaceMethod* method,
                                   std::vector<Integer>* kernel_out)
{
    auto set_method = [&](FaceMethod m) {
        if (method)
            *method = m;
    };
    const int n = face_poly.nvars();
    const int N = static_cast<int>(face_poly.size());
    if (N == 0)
        throw DomainError("empty face polynomial");
    if (N == 1)
    {
        set_method(FaceMethod::Vertex);
        return false;
    }

    // Exponent matrix B (n x N); torus critical points correspond to
    // kernel vectors u of B with no zero entry.
    linalg::RatMatrix B(n, std::vector<Rational>(N));
    std::vector<Rational> c;
    int k = 0;
    for (const auto& [b, coeff] : face_poly.terms())
    {
        for (int j = 0; j < n; ++j)
            B[j][k] = b[j];
        c.push_back(coeff.constant_term());
        ++k;
    }

    if (N == 2)
    {
        // Two exponents on a positive-weight level set are independent
        // unless equal, so the kernel is trivial; kept general regardless.
        set_method(FaceMethod::Binomial);
        if (linalg::rank(B) == 2)
            return false;
    }
    else if (max_tier < 2)
    {
        set_method(FaceMethod::Undecided);
        return std::nullopt;
    }
    else
    {
        set_method(FaceMethod::Kernel);
    }

    linalg::RatMatrix K = linalg::kernel(B, N);
    if (K.empty())
        return false;
    if (K.size() > 1)
    {
        set_method(FaceMethod::Undecided);
        return std::nullopt;
    }

    // One-dimensional kernel spanned by an integer vector m. Every u in it
    // is λm, so a zero entry rules out torus points; otherwise z exists iff
    // Π (λ m_k / c_k)^{m_k} = 1, and Σ m_k = 0 removes λ.
    std::vector<Rational> kv = K.front();
    Integer lcm = 1;
    for (const auto& x : kv)
        lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(x));
    std::vector<Integer> m;
    Integer g = 0;
    for (const auto& x : kv)
    {
        Integer v = boost::multiprecision::numerator(x) * (lcm / boost::multiprecision::denominator(x));
        m.push_back(v);
        g = boost::multiprecision::gcd(g, v);
    }
    for (auto& v : m)
        v /= g;
    if (kernel_out)
        *kernel_out = m;
    if (std::any_of(m.begin(), m.end(), [](const Integer& v) { return v == 0; }))
        return false;

    Integer sum = 0;
    for (const auto& v : m)
        sum += v;
    if (sum != 0)
    {
        // Only possible off a compact face; λ^{Σm} can then absorb any value.
        return true;
    }

    Rational product = 1;
    for (int i = 0; i < N; ++i)
    {
        Rational base = Rational(m[i]) / c[i];
        long long e = static_cast<long long>(m[i]);
        Rational p = 1;
        Rational b = e >= 0 ? base : Rational(1) / base;
        for (long long r = (e >= 0 ? e : -e); r > 0; --r)
            p *= b;
        product *= p;
    }
    return product == 1;
}

}   // namespace

std::optional<bool> exact_face_degenerate(const PolyFamily& face_poly, int max_tier, FaceMethod* method)
{
    return exact_decision(face_poly, max_tier, method, nullptr);
}

namespace {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

struct FaceSystem
{
    int n = 0;
    std::vector<std::vector<double>> beta;
    std::vector<std::complex<double>> coeff;
    std::vector<double> weight;
    double level = 1.0;

    std::vector<std::complex<double>> terms(const CVec& w) const
    {
        std::vector<std::complex<double>> u(beta.size());
        for (std::size_t k = 0; k < beta.size(); ++k)
        {
            std::complex<double> e = 0.0;
            for (int j = 0; j < n; ++j)
                e += beta[k][j] * w[j];
            u[k] = coeff[k] * std::exp(e);
        }
        return u;
    }

    CVec residual(const std::vector<std::complex<double>>& u) const
    {
        CVec r = CVec::Zero(n);
        for (std::size_t k = 0; k < beta.size(); ++k)
            for (int j = 0; j < n; ++j)
                r[j] += beta[k][j] * u[k];
        return r;
    }

    CMat jacobian(const std::vector<std::complex<double>>& u) const
    {
        CMat J = CMat::Zero(n, n);
        for (std::size_t k = 0; k < beta.size(); ++k)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l)
                    J(j, l) += beta[k][j] * beta[k][l] * u[k];
        return J;
    }

    /// Moves w along the weight action so that Σ|u_k|² = 1.
    void normalize(CVec& w) const
    {
        double s = 0.0;
        for (const auto& u : terms(w))
            s += std::norm(u);
        if (!(s > 0.0) || !std::isfinite(s))
            return;
        const double shift = -std::log(s) / (2.0 * level);
        for (int j = 0; j < n; ++j)
            w[j] += weight[j] * shift;
    }
};

bool finite(const CVec& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i)
    {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()))
            return false;
    }
    return true;
}

/// Independent re-check of a candidate point on the original coordinates.
std::optional<DegeneracyWitness> verified_witness(const PolyFamily& face_poly, const Face& face,
                                                  const std::vector<std::complex<double>>& z)
{
    if (std::any_of(z.begin(), z.end(), [](auto x) { return !(std::abs(x) > 0.0) || !std::isfinite(std::abs(x)); }))
        return std::nullopt;
    const double scale = coefficient_scale(face_poly);
    ComplexPoint p{0.0, z};
    double worst = 0.0;
    try
    {
        for (int j = 0; j < face_poly.nvars(); ++j)
            worst = std::max(worst, std::abs(evaluate(derivative_z(face_poly, j), p)));
    }
    catch (const EvaluationError&)
    {
        return std::nullopt;
    }
    if (worst < 1e-8 * scale)
        return DegeneracyWitness{face, z, worst, scale};
    return std::nullopt;
}

/**
 * Closed-form critical point for a face decided degenerate through a
 * one-dimensional kernel m: solve c_k z^{β_k} = m_k in log coordinates,
 * β_k · w = log|m_k/c_k| + i (arg(m_k/c_k) + 2π n_k). The integers n_k are
 * a Bezout combination making Σ m_k (arg_k + 2π n_k) vanish.
 */
std::optional<DegeneracyWitness> kernel_witness(const PolyFamily& face_poly, const Face& face,
                                                const std::vector<Integer>& m)
{
    const int n = face_poly.nvars();
    const int N = static_cast<int>(face_poly.size());
    Eigen::MatrixXd Bt(N, n);
    Eigen::VectorXd re(N), im(N);
    std::vector<long long> mm;
    long long half_turns = 0;   // Σ m_k [m_k / c_k < 0]
    int k = 0;
    for (const auto& [b, coeff] : face_poly.terms())
    {
        for (int j = 0; j < n; ++j)
            Bt(k, j) = b[j];
        const Rational ratio = Rational(m[k]) / coeff.constant_term();
        re[k] = std::log(std::abs(to_double(ratio)));
        const bool negative = ratio < 0;
        im[k] = negative ? M_PI : 0.0;
        mm.push_back(static_cast<long long>(m[k]));
        if (negative)
            half_turns += mm.back();
        ++k;
    }
    if (half_turns % 2 != 0)
        return std::nullopt;
    // Bezout coefficients x with Σ m_k x_k = gcd = 1, then n = -E x.
    const long long E = half_turns / 2;
    std::vector<long long> x(N, 0);
    long long g = 0;
    for (int i = 0; i < N; ++i)
    {
        // Extended Euclid on (g, m_i), folding the running combination.
        long long a = g, b = mm[i], x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (b != 0)
        {
            long long q = a / b;
            std::tie(a, b) = std::pair{b, a - q * b};
            std::tie(x0, x1) = std::pair{x1, x0 - q * x1};
            std::tie(y0, y1) = std::pair{y1, y0 - q * y1};
        }
        if (a < 0)
        {
            a = -a;
            x0 = -x0;
            y0 = -y0;
        }
        for (int j = 0; j < i; ++j)
            x[j] *= x0;
        x[i] = y0;
        g = a;
    }
    if (g != 1)
        return std::nullopt;
    for (int i = 0; i < N; ++i)
        im[i] += 2.0 * M_PI * static_cast<double>(-E * x[i]);

    auto solver = Bt.completeOrthogonalDecomposition();
    Eigen::VectorXd wr = solver.solve(re), wi = solver.solve(im);
    std::vector<std::complex<double>> z;
    for (int j = 0; j < n; ++j)
        z.push_back(std::exp(std::complex<double>(wr[j], wi[j])));
    return verified_witness(face_poly, face, z);
}

}   // namespace

std::optional<DegeneracyWitness> search_torus_critical_point(const PolyFamily& face_poly, const Face& face,
                                                             std::uint64_t seed)
{
    const int n = face_poly.nvars();
    FaceSystem sys;
    sys.n = n;
    for (const auto& [b, c] : face_poly.terms())
    {
        sys.beta.emplace_back(b.begin(), b.end());
        sys.coeff.emplace_back(to_double(c.constant_term()), 0.0);
    }
    sys.weight.assign(face.normal.begin(), face.normal.end());
    {
        long long lvl = 0;
        const auto& b0 = face_poly.terms().begin()->first;
        for (int j = 0; j < n; ++j)
            lvl += face.normal[j] * b0[j];
        sys.level = static_cast<double>(lvl);
    }
    const double scale = coefficient_scale(face_poly);
    const double tol = 1e-10 * scale;

    Rng rng(seed);
    constexpr int starts = 30;
    constexpr int iterations = 300;
    for (int s = 0; s < starts; ++s)
    {
        CVec w(n);
        for (int j = 0; j < n; ++j)
            w[j] = {0.5 * rng.normal(), rng.uniform(-M_PI, M_PI)};
        sys.normalize(w);

        double mu = 1e-3;
        auto u = sys.terms(w);
        CVec r = sys.residual(u);
        double err = r.norm();
        int polish = 0;
        for (int it = 0; it < iterations && finite(w); ++it)
        {
            CMat J = sys.jacobian(u);
            CMat A = J.adjoint() * J;
            A.diagonal().array() += mu * (1.0 + A.diagonal().real().maxCoeff());
            CVec step = A.ldlt().solve(-(J.adjoint() * r));
            CVec trial = w + step;
            for (int j = 0; j < n; ++j)
                trial[j] = {std::clamp(trial[j].real(), -50.0, 50.0), trial[j].imag()};
            sys.normalize(trial);
            auto tu = sys.terms(trial);
            CVec tr = sys.residual(tu);
            double terr = tr.norm();
            if (std::isfinite(terr) && terr < err)
            {
                w = trial;
                u = std::move(tu);
                r = tr;
                err = terr;
                mu = std::max(mu / 3.0, 1e-15);
            }
            else
            {
                mu *= 4.0;
                if (mu > 1e8)
                    break;
            }
            if (err < tol && ++polish > 5)
                break;
        }
        if (!(err < tol))
            continue;

        std::vector<std::complex<double>> z;
        for (int j = 0; j < n; ++j)
            z.push_back(std::exp(w[j]));
        if (auto witness = verified_witness(face_poly, face, z))
            return witness;
    }
    return std::nullopt;
}

NondegeneracyVerdict is_newton_nondegenerate(const PolyFamily& f, int tier, std::uint64_t seed)
{
    if (tier < 1 || tier > 3)
        throw Error("non-degeneracy tier must be 1, 2 or 3");
    if (!f.is_t_free())
        throw DomainError("non-degeneracy check requires t-free coefficients");
    if (f.empty())
        throw DomainError("non-degeneracy of the zero polynomial");

    NewtonPolyhedron np = newton_polyhedron(f);
    NondegeneracyVerdict verdict;
    std::uint64_t face_index = 0;
    for (const auto& face : np.compact_faces())
    {
        FaceVerdict fv;
        fv.face = face;
        PolyFamily fp = face_polynomial(f, face);
        FaceMethod method = FaceMethod::Undecided;
        std::vector<Integer> kernel;
        std::optional<bool> exact = exact_decision(fp, tier, &method, &kernel);
        fv.method = method;
        if (exact)
        {
            fv.status = *exact ? NondegStatus::Degenerate : NondegStatus::Nondegenerate;
        }
        if ((!exact || *exact) && tier >= 3)
        {
            // Exact degeneracy still gets a witness: closed form first, then
            // the numeric search.
            if (exact && method == FaceMethod::Kernel && !kernel.empty())
                fv.witness = kernel_witness(fp, face, kernel);
            if (!fv.witness)
                fv.witness = search_torus_critical_point(fp, face, Rng::derive(seed, face_index));
            if (!exact)
            {
                fv.method = FaceMethod::Numeric;
                fv.status = fv.witness ? NondegStatus::Degenerate : NondegStatus::Unknown;
            }
        }
        else if (!exact)
        {
            fv.status = NondegStatus::Unknown;
        }
        ++face_index;
        verdict.faces.push_back(std::move(fv));
    }

    for (const auto& fv : verdict.faces)
    {
        if (fv.status == NondegStatus::Degenerate)
        {
            if (verdict.status != NondegStatus::Degenerate)
            {
                verdict.status = NondegStatus::Degenerate;
                verdict.witness = fv.witness;
            }
            else if (!verdict.witness && fv.witness)
            {
                verdict.witness = fv.witness;
            }
        }
        else if (fv.status == NondegStatus::Unknown)
        {
            verdict.undecided_faces.push_back(fv.face);
            if (verdict.status == NondegStatus::Nondegenerate)
                verdict.status = NondegStatus::Unknown;
        }
    }
    return verdict;
}

nlohmann::ordered_json to_json(const DegeneracyWitness& w)
{
    nlohmann::ordered_json point = nlohmann::ordered_json::array();
    for (const auto& z : w.point)
        point.push_back({z.real(), z.imag()});
    return {{"face", to_json(w.face)}, {"point", point}, {"residual", w.residual}, {"scale", w.scale}};
}

nlohmann::ordered_json to_json(const NondegeneracyVerdict& v)
{
    nlohmann::ordered_json j;
    j["status"] = to_string(v.status);
    j["witness"] = v.witness ? to_json(*v.witness) : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json undecided = nlohmann::ordered_json::array();
    for (const auto& f : v.undecided_faces)
        undecided.push_back(f.vertices);
    j["undecided_faces"] = undecided;
    nlohmann::ordered_json faces = nlohmann::ordered_json::array();
    for (const auto& fv : v.faces)
    {
        faces.push_back({{"vertices", fv.face.vertices},
                         {"status", to_string(fv.status)},
                         {"method", to_string(fv.method)}});
    }
    j["faces"] = faces;
    return j;
}

}   // namespace lecert
