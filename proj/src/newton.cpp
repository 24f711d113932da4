#include "lecert/newton.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lecert/errors.hpp"
#include "lecert/linalg.hpp"

namespace lecert {

namespace {

long long dot(const IntVector& a, const Exponent& x)
{
    long long s = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
        s += a[j] * x[j];
    return s;
}

bool dominates(const Exponent& p, const Exponent& q)
{
    for (std::size_t j = 0; j < p.size(); ++j)
    {
        if (p[j] < q[j])
            return false;
    }
    return true;
}

/// Points not coordinatewise above another point. Only these can be vertices
/// or span facets.
std::vector<Exponent> minimal_points(const std::vector<Exponent>& pts)
{
    std::vector<Exponent> out;
    for (const auto& p : pts)
    {
        bool dominated = false;
        for (const auto& q : pts)
        {
            if (q != p && dominates(p, q))
            {
                dominated = true;
                break;
            }
        }
        if (!dominated)
            out.push_back(p);
    }
    return out;
}

/// Calls visit(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename Visit>
void for_each_subset(int n, int k, Visit&& visit)
{
    if (k > n || k < 0)
        return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i)
        idx[i] = i;
    while (true)
    {
        visit(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i)
            --i;
        if (i < 0)
            return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

std::vector<Facet> enumerate_facets(const std::vector<Exponent>& cand, int n)
{
    std::map<IntVector, long long> found;
    const int npts = static_cast<int>(cand.size());

    // Fixed zero pattern J of the normal (directions e_j, j in J, lie in the
    // facet); the remaining m coordinates are spanned by m support points.
    for (unsigned mask = 0; mask < (1u << n); ++mask)
    {
        std::vector<int> free_coords;
        for (int j = 0; j < n; ++j)
        {
            if (!(mask & (1u << j)))
                free_coords.push_back(j);
        }
        const int m = static_cast<int>(free_coords.size());
        if (m == 0)
            continue;

        for_each_subset(npts, m, [&](const std::vector<int>& idx) {
            linalg::IntMatrix rows;
            const Exponent& p0 = cand[idx[0]];
            for (int r = 1; r < m; ++r)
            {
                std::vector<long long> row(m);
                for (int c = 0; c < m; ++c)
                    row[c] = cand[idx[r]][free_coords[c]] - p0[free_coords[c]];
                rows.push_back(std::move(row));
            }
            IntVector partial = linalg::cross(rows, m);
            bool pos = false, neg = false;
            for (long long v : partial)
            {
                pos |= v > 0;
                neg |= v < 0;
            }
            if (pos == neg)     // zero vector or mixed signs
                return;
            IntVector normal(n, 0);
            for (int c = 0; c < m; ++c)
                normal[free_coords[c]] = neg ? -partial[c] : partial[c];
            linalg::make_primitive(normal);
            if (found.count(normal))
                return;
            long long offset = dot(normal, p0);
            for (const auto& q : cand)
            {
                if (dot(normal, q) < offset)
                    return;
            }
            found.emplace(normal, offset);
        });
    }

    std::vector<Facet> out;
    for (auto& [normal, offset] : found)
        out.push_back(Facet{normal, offset});
    return out;
}

int affine_dimension(const std::vector<Exponent>& pts)
{
    if (pts.size() <= 1)
        return 0;
    linalg::IntMatrix rows;
    for (std::size_t i = 1; i < pts.size(); ++i)
    {
        std::vector<long long> row(pts[i].size());
        for (std::size_t j = 0; j < row.size(); ++j)
            row[j] = pts[i][j] - pts[0][j];
        rows.push_back(std::move(row));
    }
    return linalg::rank(std::move(rows));
}

}   // namespace

bool NewtonPolyhedron::contains(const Exponent& x) const
{
    for (int v : x)
    {
        if (v < 0)
            return false;
    }
    for (const auto& f : facets_)
    {
        if (dot(f.normal, x) < f.offset)
            return false;
    }
    return true;
}

bool NewtonPolyhedron::same_boundary(const NewtonPolyhedron& other) const
{
    if (n_ != other.n_ || vertices_ != other.vertices_ || compact_faces_.size() != other.compact_faces_.size())
        return false;
    for (std::size_t i = 0; i < compact_faces_.size(); ++i)
    {
        if (compact_faces_[i].vertices != other.compact_faces_[i].vertices)
            return false;
    }
    return true;
}

NewtonPolyhedron newton_polyhedron(std::vector<Exponent> support, int n)
{
    if (support.empty())
        throw DomainError("Newton polyhedron of the zero polynomial");
    if (n < 1 || n > 16)
        throw DomainError("unsupported dimension " + std::to_string(n));
    for (const auto& p : support)
    {
        if (static_cast<int>(p.size()) != n)
            throw DomainError("support point has the wrong dimension");
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    NewtonPolyhedron np;
    np.n_ = n;
    np.support_ = support;

    std::vector<Exponent> cand = minimal_points(support);
    np.facets_ = enumerate_facets(cand, n);

    // A minimal point is a vertex iff the normals of the facets through it
    // have full rank.
    std::vector<std::vector<int>> facet_vertices(np.facets_.size());
    for (const auto& p : cand)
    {
        linalg::IntMatrix tight;
        for (const auto& f : np.facets_)
        {
            if (dot(f.normal, p) == f.offset)
                tight.push_back(f.normal);
        }
        if (linalg::rank(std::move(tight)) == n)
            np.vertices_.push_back(p);
    }
    for (std::size_t fi = 0; fi < np.facets_.size(); ++fi)
    {
        for (std::size_t vi = 0; vi < np.vertices_.size(); ++vi)
        {
            if (dot(np.facets_[fi].normal, np.vertices_[vi]) == np.facets_[fi].offset)
                facet_vertices[fi].push_back(static_cast<int>(vi));
        }
    }

    // Every face's vertex set is an intersection of facet vertex sets.
    std::set<std::vector<int>> vertex_sets;
    std::vector<std::vector<int>> queue;
    for (const auto& vs : facet_vertices)
    {
        if (!vs.empty() && vertex_sets.insert(vs).second)
            queue.push_back(vs);
    }
    while (!queue.empty())
    {
        std::vector<int> cur = std::move(queue.back());
        queue.pop_back();
        for (const auto& vs : facet_vertices)
        {
            std::vector<int> meet;
            std::set_intersection(cur.begin(), cur.end(), vs.begin(), vs.end(), std::back_inserter(meet));
            if (!meet.empty() && vertex_sets.insert(meet).second)
                queue.push_back(std::move(meet));
        }
    }

    for (const auto& vs : vertex_sets)
    {
        IntVector sum(n, 0);
        for (std::size_t fi = 0; fi < np.facets_.size(); ++fi)
        {
            if (std::includes(facet_vertices[fi].begin(), facet_vertices[fi].end(), vs.begin(), vs.end()))
            {
                for (int j = 0; j < n; ++j)
                    sum[j] += np.facets_[fi].normal[j];
            }
        }
        if (std::any_of(sum.begin(), sum.end(), [](long long v) { return v <= 0; }))
            continue;
        linalg::make_primitive(sum);

        Face face;
        for (int vi : vs)
            face.vertices.push_back(np.vertices_[vi]);
        face.dim = affine_dimension(face.vertices);
        face.normal = sum;
        long long level = dot(sum, face.vertices.front());
        for (const auto& p : support)
        {
            if (dot(sum, p) == level)
                face.support_points.push_back(p);
        }
        np.compact_faces_.push_back(std::move(face));
    }
    std::sort(np.compact_faces_.begin(), np.compact_faces_.end(), [](const Face& a, const Face& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
    });
    return np;
}

NewtonPolyhedron newton_polyhedron(const PolyFamily& f)
{
    return newton_polyhedron(f.support(), f.nvars());
}

Z1ZeroVertexData z1zero_vertex_data(const NewtonPolyhedron& np)
{
    Z1ZeroVertexData data;
    data.a_sup.assign(np.dim() - 1, 0);
    for (const auto& v : np.vertices())
    {
        if (v[0] != 0)
            continue;
        data.alphas.push_back(v);
        for (int j = 1; j < np.dim(); ++j)
            data.a_sup[j - 1] = std::max(data.a_sup[j - 1], v[j]);
    }
    if (data.alphas.empty())
        throw DomainError("no z1-free vertex: the polynomial is not quasi-convenient");
    return data;
}

namespace {

bool has_pure_power(const NewtonPolyhedron& np, int var)
{
    return std::any_of(np.support().begin(), np.support().end(),
                       [var](const Exponent& b) { return is_pure_power_of(b, var); });
}

}   // namespace

bool is_convenient(const NewtonPolyhedron& np)
{
    for (int j = 0; j < np.dim(); ++j)
    {
        if (!has_pure_power(np, j))
            return false;
    }
    return true;
}

bool is_quasi_convenient(const NewtonPolyhedron& np)
{
    for (int j = 1; j < np.dim(); ++j)
    {
        if (!has_pure_power(np, j))
            return false;
    }
    return true;
}

namespace {

/// Fan triangulation of a compact face over its lexicographically smallest
/// vertex, recursing into the facets of the face that avoid that vertex.
class Triangulator
{
    public:
        explicit Triangulator(const NewtonPolyhedron& np) : np_(np) {}

        std::vector<std::vector<Exponent>> simplices(std::size_t face_index)
        {
            auto memo = cache_.find(face_index);
            if (memo != cache_.end())
                return memo->second;

            const Face& face = np_.compact_faces()[face_index];
            std::vector<std::vector<Exponent>> out;
            if (face.dim == 0)
            {
                out.push_back({face.vertices.front()});
            }
            else
            {
                const Exponent& apex = face.vertices.front();
                const auto& faces = np_.compact_faces();
                for (std::size_t g = 0; g < faces.size(); ++g)
                {
                    if (faces[g].dim != face.dim - 1)
                        continue;
                    const auto& gv = faces[g].vertices;
                    if (std::binary_search(gv.begin(), gv.end(), apex))
                        continue;
                    if (!std::includes(face.vertices.begin(), face.vertices.end(), gv.begin(), gv.end()))
                        continue;
                    for (auto s : simplices(g))
                    {
                        s.push_back(apex);
                        out.push_back(std::move(s));
                    }
                }
            }
            cache_.emplace(face_index, out);
            return out;
        }

    private:
        const NewtonPolyhedron& np_;
        std::map<std::size_t, std::vector<std::vector<Exponent>>> cache_;
};

/// n! times the volume of the region between the origin and the compact
/// facets of a convenient polyhedron of dimension n.
long long normalized_volume_under(const NewtonPolyhedron& np)
{
    const int n = np.dim();
    Triangulator tri(np);
    long long total = 0;
    for (std::size_t fi = 0; fi < np.compact_faces().size(); ++fi)
    {
        if (np.compact_faces()[fi].dim != n - 1)
            continue;
        for (const auto& simplex : tri.simplices(fi))
        {
            linalg::IntMatrix m;
            for (const auto& v : simplex)
                m.emplace_back(v.begin(), v.end());
            long long d = linalg::determinant(std::move(m));
            total += d < 0 ? -d : d;
        }
    }
    return total;
}

}   // namespace

std::vector<long long> normalized_covolumes(const NewtonPolyhedron& np)
{
    if (!is_convenient(np))
        throw DomainError("Newton number undefined: the polynomial is not convenient");
    const int n = np.dim();
    std::vector<long long> vol(n + 1, 0);
    vol[0] = 1;
    for (unsigned mask = 1; mask < (1u << n); ++mask)
    {
        std::vector<int> coords;
        for (int j = 0; j < n; ++j)
        {
            if (mask & (1u << j))
                coords.push_back(j);
        }
        std::vector<Exponent> restricted;
        for (const auto& p : np.support())
        {
            bool inside = true;
            for (int j = 0; j < n && inside; ++j)
                inside = (mask & (1u << j)) || p[j] == 0;
            if (!inside)
                continue;
            Exponent q;
            for (int j : coords)
                q.push_back(p[j]);
            restricted.push_back(std::move(q));
        }
        const int k = static_cast<int>(coords.size());
        vol[k] += normalized_volume_under(newton_polyhedron(std::move(restricted), k));
    }
    return vol;
}

long long newton_number(const NewtonPolyhedron& np)
{
    std::vector<long long> vol = normalized_covolumes(np);
    const int n = np.dim();
    long long nu = 0;
    for (int k = 0; k <= n; ++k)
        nu += ((n - k) % 2 == 0 ? 1 : -1) * vol[k];
    return nu;
}

nlohmann::ordered_json to_json(const Face& face)
{
    nlohmann::ordered_json j;
    j["dim"] = face.dim;
    j["vertices"] = face.vertices;
    j["normal"] = face.normal;
    j["support_points"] = face.support_points;
    return j;
}

nlohmann::ordered_json to_json(const NewtonPolyhedron& np)
{
    nlohmann::ordered_json j;
    j["n"] = np.dim();
    j["vertices"] = np.vertices();
    nlohmann::ordered_json facets = nlohmann::ordered_json::array();
    for (const auto& f : np.facets())
        facets.push_back({{"normal", f.normal}, {"offset", f.offset}});
    j["facets"] = facets;
    nlohmann::ordered_json faces = nlohmann::ordered_json::array();
    for (const auto& f : np.compact_faces())
        faces.push_back(to_json(f));
    j["compact_faces"] = faces;
    j["convenient"] = is_convenient(np);
    j["quasi_convenient"] = is_quasi_convenient(np);
    return j;
}

nlohmann::ordered_json to_json(const Z1ZeroVertexData& data)
{
    return {{"alphas", data.alphas}, {"a_sup", data.a_sup}};
}

}   // namespace lecert
