#include "lp_oracle.hpp"

#include <algorithm>

namespace oracle {

using lecert::Rational;

bool feasible(std::vector<std::vector<Rational>> A, std::vector<Rational> b)
{
    const std::size_t m = A.size();
    const std::size_t n = m ? A[0].size() : 0;
    for (std::size_t i = 0; i < m; ++i)
    {
        if (b[i] < 0)
        {
            for (auto& v : A[i])
                v = -v;
            b[i] = -b[i];
        }
    }
    // Tableau columns: n originals, m artificials, rhs.
    const std::size_t cols = n + m;
    std::vector<std::vector<Rational>> T(m, std::vector<Rational>(cols + 1, Rational(0)));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
            T[i][j] = A[i][j];
        T[i][n + i] = 1;
        T[i][cols] = b[i];
        basis[i] = n + i;
    }
    // Minimize the sum of artificials: reduced costs row.
    std::vector<Rational> cost(cols + 1, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= cols; ++j)
            if (j < n || j == cols)
                cost[j] -= T[i][j];

    while (true)
    {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j)
        {
            if (cost[j] < 0)
            {
                enter = j;
                break;
            }
        }
        if (enter == cols)
            break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i)
        {
            if (T[i][enter] > 0)
            {
                Rational r = T[i][cols] / T[i][enter];
                if (leave == m || r < best || (r == best && basis[i] < basis[leave]))
                {
                    best = r;
                    leave = i;
                }
            }
        }
        if (leave == m)
            break;   // unbounded direction; cannot happen for phase one
        Rational piv = T[leave][enter];
        for (auto& v : T[leave])
            v /= piv;
        for (std::size_t i = 0; i < m; ++i)
        {
            if (i == leave || T[i][enter] == 0)
                continue;
            Rational f = T[i][enter];
            for (std::size_t j = 0; j <= cols; ++j)
                T[i][j] -= f * T[leave][j];
        }
        Rational f = cost[enter];
        for (std::size_t j = 0; j <= cols; ++j)
            cost[j] -= f * T[leave][j];
        basis[leave] = enter;
    }
    return cost[cols] == 0;
}

bool in_newton_polyhedron(const std::vector<lecert::Exponent>& points, const lecert::Exponent& p)
{
    if (points.empty())
        return false;
    const std::size_t n = p.size();
    const std::size_t k = points.size();
    // Variables: lambda_1..lambda_k, slack_1..slack_n.
    std::vector<std::vector<Rational>> A(n + 1, std::vector<Rational>(k + n, Rational(0)));
    std::vector<Rational> b(n + 1);
    for (std::size_t j = 0; j < n; ++j)
    {
        for (std::size_t i = 0; i < k; ++i)
            A[j][i] = points[i][j];
        A[j][k + j] = 1;
        b[j] = p[j];
    }
    for (std::size_t i = 0; i < k; ++i)
        A[n][i] = 1;
    b[n] = 1;
    return feasible(std::move(A), std::move(b));
}

std::vector<lecert::Exponent> lp_vertices(std::vector<lecert::Exponent> support)
{
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    std::vector<lecert::Exponent> out;
    for (std::size_t i = 0; i < support.size(); ++i)
    {
        std::vector<lecert::Exponent> rest;
        for (std::size_t j = 0; j < support.size(); ++j)
            if (j != i)
                rest.push_back(support[j]);
        if (!in_newton_polyhedron(rest, support[i]))
            out.push_back(support[i]);
    }
    return out;
}

}   // namespace oracle
