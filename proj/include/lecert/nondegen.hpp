#ifndef LECERT_NONDEGEN_HPP
#define LECERT_NONDEGEN_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lecert/newton.hpp"
#include "lecert/poly.hpp"

/**
 * Newton non-degeneracy: no compact face polynomial f_Δ has a critical point
 * on the torus (ℂ*)ⁿ.
 *
 * Writing f_Δ = Σ_k c_k z^{β_k} and u_k = c_k z^{β_k}, a torus critical point
 * is a solution of Σ_k β_k u_k = 0 with every u_k ≠ 0 and u realizable as
 * (c_k z^{β_k})_k. The exact tiers work on the kernel of the exponent
 * matrix; faces with a larger kernel are left to a numeric search.
 */

namespace lecert {

enum class NondegStatus { Nondegenerate, Degenerate, Unknown };

std::string to_string(NondegStatus s);

/// How a single face was decided.
enum class FaceMethod { Vertex, Binomial, Kernel, Numeric, Undecided };

std::string to_string(FaceMethod m);

struct DegeneracyWitness
{
    Face face;
    std::vector<std::complex<double>> point;
    /// max_j |∂f_Δ/∂z_j| at the point.
    double residual = 0.0;
    double scale = 1.0;
};

struct FaceVerdict
{
    Face face;
    NondegStatus status = NondegStatus::Unknown;
    FaceMethod method = FaceMethod::Undecided;
    std::optional<DegeneracyWitness> witness;
};

struct NondegeneracyVerdict
{
    NondegStatus status = NondegStatus::Nondegenerate;
    std::optional<DegeneracyWitness> witness;
    std::vector<Face> undecided_faces;
    std::vector<FaceVerdict> faces;
};

/// Terms of f whose exponents lie on the face. f must be t-free.
PolyFamily face_polynomial(const PolyFamily& f, const Face& face);

/**
 * Exact decision for a face polynomial when the kernel of its exponent
 * matrix has dimension at most one. Returns true for degenerate, false for
 * nondegenerate, nullopt when beyond the exact criteria. The method used is
 * written to *method when given. max_tier 1 restricts to vertices and
 * binomials.
 */
std::optional<bool> exact_face_degenerate(const PolyFamily& face_poly, int max_tier = 2,
                                          FaceMethod* method = nullptr);

/**
 * Numeric search for a torus critical point of a face polynomial. The face
 * normal fixes the quasi-homogeneous rescaling. Returns a witness that has
 * been re-verified against the residual bound, or nullopt.
 */
std::optional<DegeneracyWitness> search_torus_critical_point(const PolyFamily& face_poly, const Face& face,
                                                             std::uint64_t seed);

/// 1 + the largest coefficient magnitude.
double coefficient_scale(const PolyFamily& face_poly);

/// Checks every compact face of Γ₊(f) with tiers 1..tier. f must be t-free.
NondegeneracyVerdict is_newton_nondegenerate(const PolyFamily& f, int tier = 3, std::uint64_t seed = 42);

nlohmann::ordered_json to_json(const DegeneracyWitness& w);
nlohmann::ordered_json to_json(const NondegeneracyVerdict& v);

}   // namespace lecert

#endif
