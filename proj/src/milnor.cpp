#include "lecert/milnor.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "lecert/errors.hpp"

namespace lecert {

namespace {

using SparseRow = std::map<int, Rational>;

/// All exponents of total degree <= D in n variables, graded.
std::vector<Exponent> monomials_up_to(int n, int D)
{
    std::vector<Exponent> out;
    Exponent e(n, 0);
    // Odometer over the simplex, then sort by degree for a graded order.
    std::function<void(int, int)> rec = [&](int j, int left) {
        if (j == n)
        {
            out.push_back(e);
            return;
        }
        for (int v = 0; v <= left; ++v)
        {
            e[j] = v;
            rec(j + 1, left - v);
        }
        e[j] = 0;
    };
    rec(0, D);
    std::stable_sort(out.begin(), out.end(), [](const Exponent& a, const Exponent& b) {
        int da = 0, db = 0;
        for (int x : a)
            da += x;
        for (int x : b)
            db += x;
        return da < db;
    });
    return out;
}

/// Incremental row echelon form; rows are stored with leading coefficient 1.
class Echelon
{
    public:
        void insert(SparseRow row)
        {
            while (!row.empty())
            {
                auto lead = row.begin();
                auto p = pivots_.find(lead->first);
                if (p == pivots_.end())
                {
                    Rational inv = 1 / lead->second;
                    for (auto& [c, v] : row)
                        v *= inv;
                    const int col = lead->first;
                    pivots_.emplace(col, std::move(row));
                    return;
                }
                Rational factor = lead->second;
                for (const auto& [c, v] : p->second)
                {
                    auto it = row.find(c);
                    if (it == row.end())
                    {
                        row.emplace(c, -factor * v);
                    }
                    else
                    {
                        it->second -= factor * v;
                        if (it->second == 0)
                            row.erase(it);
                    }
                }
            }
        }

        long long rank() const { return static_cast<long long>(pivots_.size()); }

    private:
        std::map<int, SparseRow> pivots_;
};

}   // namespace

long long truncated_colength(const PolyFamily& f, int D)
{
    if (!f.is_t_free())
        throw DomainError("Milnor number requires t-free coefficients");
    if (D < 0)
        throw Error("negative truncation degree");
    const int n = f.nvars();
    std::vector<Exponent> monos = monomials_up_to(n, D);
    std::map<Exponent, int> index;
    for (std::size_t i = 0; i < monos.size(); ++i)
        index.emplace(monos[i], static_cast<int>(i));

    Echelon ech;
    for (int j = 0; j < n; ++j)
    {
        PolyFamily dj = derivative_z(f, j);
        for (const auto& g : monos)
        {
            SparseRow row;
            for (const auto& [b, c] : dj.terms())
            {
                Exponent e(n);
                int deg = 0;
                for (int i = 0; i < n; ++i)
                {
                    e[i] = b[i] + g[i];
                    deg += e[i];
                }
                if (deg > D)
                    continue;
                row[index.at(e)] += c.constant_term();
            }
            std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
            ech.insert(std::move(row));
        }
    }
    return static_cast<long long>(monos.size()) - ech.rank();
}

std::optional<long long> milnor_number_colength(const PolyFamily& f, int degree_cap)
{
    long long prev = truncated_colength(f, 0);
    for (int D = 1; D <= degree_cap; ++D)
    {
        long long cur = truncated_colength(f, D);
        if (cur == prev)
            return cur;
        prev = cur;
    }
    return std::nullopt;
}

}   // namespace lecert
