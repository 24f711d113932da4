#ifndef LECERT_NEWTON_HPP
#define LECERT_NEWTON_HPP

#include <vector>

#include "json.hpp"
#include "lecert/poly.hpp"

/**
 * Newton polyhedra Γ₊(f) = conv(supp f) + ℝⁿ₊ in exact integer arithmetic.
 *
 * Facets are found by enumerating supporting hyperplanes spanned by support
 * points together with coordinate directions; a candidate is kept when its
 * normal is non-negative and no support point lies strictly below it. The
 * compact faces are those exposed by a strictly positive normal. All output
 * containers are sorted, so two polyhedra built from the same support are
 * identical member by member.
 */

namespace lecert {

using IntVector = std::vector<long long>;

/// Γ₊ ⊆ {x : <normal, x> >= offset}. Normals are primitive and non-negative.
struct Facet
{
    IntVector normal;
    long long offset = 0;

    friend bool operator==(const Facet&, const Facet&) = default;
};

struct Face
{
    int dim = 0;
    std::vector<Exponent> vertices;
    /// Strictly positive primitive normal minimized exactly on this face.
    IntVector normal;
    std::vector<Exponent> support_points;

    friend bool operator==(const Face&, const Face&) = default;
};

class NewtonPolyhedron
{
    public:
        NewtonPolyhedron() = default;

        int dim() const { return n_; }
        const std::vector<Exponent>& support() const { return support_; }
        const std::vector<Exponent>& vertices() const { return vertices_; }
        const std::vector<Facet>& facets() const { return facets_; }

        /// Compact faces ordered by dimension, then by vertex list.
        const std::vector<Face>& compact_faces() const { return compact_faces_; }

        /// True when x >= 0 satisfies every facet inequality.
        bool contains(const Exponent& x) const;

        /// Same vertices and compact faces (the Newton boundary).
        bool same_boundary(const NewtonPolyhedron& other) const;

    private:
        friend NewtonPolyhedron newton_polyhedron(std::vector<Exponent> support, int n);

        int n_ = 0;
        std::vector<Exponent> support_;
        std::vector<Exponent> vertices_;
        std::vector<Facet> facets_;
        std::vector<Face> compact_faces_;
};

/// Throws DomainError on an empty support.
NewtonPolyhedron newton_polyhedron(std::vector<Exponent> support, int n);

/// Polyhedron of the support of f. For a family depending on t this is the
/// support for generic t.
NewtonPolyhedron newton_polyhedron(const PolyFamily& f);

/// The vertices α_1..α_m with first coordinate zero and a_j = max_i α_{ij}.
struct Z1ZeroVertexData
{
    std::vector<Exponent> alphas;
    /// (a_2, ..., a_n); entry k belongs to z_{k+2}.
    std::vector<int> a_sup;
};

/// Throws DomainError when no vertex has first coordinate zero.
Z1ZeroVertexData z1zero_vertex_data(const NewtonPolyhedron& np);

/// Some support point is a pure power of every variable.
bool is_convenient(const NewtonPolyhedron& np);

/// Some support point is a pure power of every variable except z1.
bool is_quasi_convenient(const NewtonPolyhedron& np);

/**
 * Kouchnirenko's Newton number
 *
 *     ν = Σ_{k=0..n} (-1)^{n-k} k! V_k,
 *
 * where V_k sums the k-volumes of Γ₋ ∩ ℝ^I over coordinate subspaces of
 * dimension k and V_0 = 1. Each k! V_k is computed as a sum of |det| over a
 * star triangulation from the origin, so the whole computation stays in
 * the integers. Throws DomainError unless np is convenient.
 */
long long newton_number(const NewtonPolyhedron& np);

/// k! V_k for every k = 0..n (index k), as used by newton_number.
std::vector<long long> normalized_covolumes(const NewtonPolyhedron& np);

nlohmann::ordered_json to_json(const NewtonPolyhedron& np);
nlohmann::ordered_json to_json(const Face& face);
nlohmann::ordered_json to_json(const Z1ZeroVertexData& data);

}   // namespace lecert

#endif
