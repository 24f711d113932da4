#include "lecert/linalg.hpp"

#include <limits>
#include <numeric>
#include <utility>

#include "lecert/errors.hpp"

namespace lecert::linalg {

namespace {

using Wide = __int128;

long long narrow(Wide v)
{
    if (v > static_cast<Wide>(std::numeric_limits<long long>::max()) ||
        v < static_cast<Wide>(std::numeric_limits<long long>::min()))
        throw Error("integer overflow in exact determinant");
    return static_cast<long long>(v);
}

}   // namespace

long long determinant(IntMatrix m)
{
    const std::size_t n = m.size();
    if (n == 0)
        return 1;
    std::vector<std::vector<Wide>> a(n, std::vector<Wide>(n));
    for (std::size_t i = 0; i < n; ++i)
    {
        if (m[i].size() != n)
            throw Error("determinant of a non-square matrix");
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = m[i][j];
    }
    Wide sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k)
    {
        if (a[k][k] == 0)
        {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
        {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        }
        prev = a[k][k];
    }
    return narrow(sign * a[n - 1][n - 1]);
}

int rank(IntMatrix m)
{
    if (m.empty())
        return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::vector<std::vector<Wide>> a(rows, std::vector<Wide>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            a[i][j] = m[i][j];

    int r = 0;
    Wide prev = 1;
    for (std::size_t c = 0; c < cols && r < static_cast<int>(rows); ++c)
    {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[r], a[p]);
        for (std::size_t i = r + 1; i < rows; ++i)
        {
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

namespace {

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(RatMatrix& a, int cols)
{
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < cols && r < a.size(); ++c)
    {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0)
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[r], a[p]);
        Rational inv = 1 / a[r][c];
        for (auto& x : a[r])
            x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            if (i == r || a[i][c] == 0)
                continue;
            Rational f = a[i][c];
            for (int j = 0; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}   // namespace

int rank(RatMatrix m)
{
    if (m.empty())
        return 0;
    return static_cast<int>(rref(m, static_cast<int>(m[0].size())).size());
}

RatMatrix kernel(RatMatrix m, int columns)
{
    std::vector<int> pivots = rref(m, columns);
    std::vector<bool> is_pivot(columns, false);
    for (int c : pivots)
        is_pivot[c] = true;

    RatMatrix basis;
    for (int free = 0; free < columns; ++free)
    {
        if (is_pivot[free])
            continue;
        std::vector<Rational> v(columns, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<long long> cross(const IntMatrix& rows, int k)
{
    std::vector<long long> out(k);
    for (int drop = 0; drop < k; ++drop)
    {
        IntMatrix minor;
        minor.reserve(rows.size());
        for (const auto& row : rows)
        {
            std::vector<long long> r;
            r.reserve(k - 1);
            for (int j = 0; j < k; ++j)
            {
                if (j != drop)
                    r.push_back(row[j]);
            }
            minor.push_back(std::move(r));
        }
        long long d = determinant(std::move(minor));
        out[drop] = (drop % 2 == 0) ? d : -d;
    }
    return out;
}

void make_primitive(std::vector<long long>& v)
{
    long long g = 0;
    for (long long x : v)
        g = std::gcd(g, x < 0 ? -x : x);
    if (g > 1)
    {
        for (auto& x : v)
            x /= g;
    }
}

}   // namespace lecert::linalg
