#pragma once

// Independent reference computations used by the tests only.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "hsi/smith.hpp"

namespace oracle {

using Q = boost::multiprecision::cpp_rational;

// Gaussian elimination over the rationals
inline std::int64_t determinant(const hsi::IntMatrix& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<Q>> a(n, std::vector<Q>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Q(m[i][j]);
    Q det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            Q f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return static_cast<std::int64_t>(boost::multiprecision::numerator(det));
}

// U M V in arbitrary precision, compared entrywise with D
inline bool product_equals(const hsi::IntMatrix& U, const hsi::IntMatrix& M, const hsi::IntMatrix& V,
                           const hsi::IntMatrix& D) {
    using boost::multiprecision::cpp_int;
    const std::size_t r = M.size(), c = hsi::columns(M);
    std::vector<std::vector<cpp_int>> UM(r, std::vector<cpp_int>(c));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            for (std::size_t k = 0; k < r; ++k) UM[i][j] += cpp_int(U[i][k]) * M[k][j];
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            cpp_int x = 0;
            for (std::size_t k = 0; k < c; ++k) x += UM[i][k] * V[k][j];
            if (x != D[i][j]) return false;
        }
    return true;
}

// spanning trees of a multigraph via the reduced Laplacian
inline std::int64_t spanning_trees(int n, const std::vector<std::pair<int, int>>& edges) {
    hsi::IntMatrix L(n, std::vector<std::int64_t>(n, 0));
    for (auto [a, b] : edges) {
        ++L[a][a];
        ++L[b][b];
        --L[a][b];
        --L[b][a];
    }
    hsi::IntMatrix red(n - 1, std::vector<std::int64_t>(n - 1));
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) red[i - 1][j - 1] = L[i][j];
    return n == 1 ? 1 : determinant(red);
}

// three-term recurrence for the tridiagonal chain matrix (weights on the diagonal, 1 off it)
inline std::int64_t continuant(const std::vector<std::int64_t>& a) {
    std::int64_t prev = 1, cur = a.empty() ? 1 : a[0];
    for (std::size_t i = 1; i < a.size(); ++i) {
        std::int64_t next = a[i] * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

// |Z/m tensor Z/n| and |Tor(Z/m, Z/n)| by enumerating Z/n
inline std::uint64_t tensor_order(std::uint64_t m, std::uint64_t n) {
    std::vector<bool> image(n, false);
    for (std::uint64_t x = 0; x < n; ++x) image[(m * x) % n] = true;
    std::uint64_t k = 0;
    for (bool b : image) k += b;
    return n / k;
}

inline std::uint64_t tor_order(std::uint64_t m, std::uint64_t n) {
    std::uint64_t k = 0;
    for (std::uint64_t x = 0; x < n; ++x)
        if ((m * x) % n == 0) ++k;
    return k;
}

}  // namespace oracle
