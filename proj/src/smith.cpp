#include "hsi/smith.hpp"

#include <cstdlib>
#include <string>
#include <utility>

#include "hsi/error.hpp"

namespace hsi {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) fail(Errc::Overflow, "64-bit overflow in integer addition");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) fail(Errc::Overflow, "64-bit overflow in integer product");
    return r;
}

std::vector<std::int64_t> SmithForm::diagonal() const {
    std::vector<std::int64_t> d;
    for (std::size_t i = 0; i < D.size() && i < columns(D); ++i) d.push_back(D[i][i]);
    return d;
}

std::size_t columns(const IntMatrix& m) { return m.empty() ? 0 : m[0].size(); }

IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = columns(b);
    if (columns(a) != k) fail(Errc::InvalidParams, "matrix shapes do not match");
    IntMatrix r(n, std::vector<std::int64_t>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t l = 0; l < k; ++l) r[i][j] = checked_add(r[i][j], checked_mul(a[i][l], b[l][j]));
    return r;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t ra = a.size(), ca = columns(a), rb = b.size(), cb = columns(b);
    IntMatrix r(ra + rb, std::vector<std::int64_t>(ca + cb, 0));
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < ca; ++j) r[i][j] = a[i][j];
    for (std::size_t i = 0; i < rb; ++i)
        for (std::size_t j = 0; j < cb; ++j) r[ra + i][ca + j] = b[i][j];
    return r;
}

namespace {

struct Reducer {
    IntMatrix D, U, V;
    std::size_t rows, cols;

    // row_i += k * row_j, mirrored on U
    void add_row(std::size_t i, std::size_t j, std::int64_t k) {
        if (k == 0) return;
        for (std::size_t c = 0; c < cols; ++c) D[i][c] = checked_add(D[i][c], checked_mul(k, D[j][c]));
        for (std::size_t c = 0; c < rows; ++c) U[i][c] = checked_add(U[i][c], checked_mul(k, U[j][c]));
    }
    void add_col(std::size_t i, std::size_t j, std::int64_t k) {
        if (k == 0) return;
        for (std::size_t r = 0; r < rows; ++r) D[r][i] = checked_add(D[r][i], checked_mul(k, D[r][j]));
        for (std::size_t r = 0; r < cols; ++r) V[r][i] = checked_add(V[r][i], checked_mul(k, V[r][j]));
    }
    void swap_rows(std::size_t i, std::size_t j) {
        std::swap(D[i], D[j]);
        std::swap(U[i], U[j]);
    }
    void swap_cols(std::size_t i, std::size_t j) {
        for (auto& row : D) std::swap(row[i], row[j]);
        for (auto& row : V) std::swap(row[i], row[j]);
    }
    void negate_row(std::size_t i) {
        for (auto& x : D[i]) x = -x;
        for (auto& x : U[i]) x = -x;
    }

    // smallest nonzero |entry| in the lower-right block starting at t
    bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
        std::int64_t best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                std::int64_t a = D[i][j] < 0 ? -D[i][j] : D[i][j];
                if (a != 0 && (best == 0 || a < best)) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        return best != 0;
    }

    void run() {
        for (std::size_t t = 0; t < rows && t < cols; ++t) {
            std::size_t pi = t, pj = t;
            if (!find_pivot(t, pi, pj)) return;
            swap_rows(t, pi);
            swap_cols(t, pj);
            for (;;) {
                bool dirty = false;
                for (std::size_t i = t + 1; i < rows; ++i) {
                    if (D[i][t] == 0) continue;
                    add_row(i, t, -(D[i][t] / D[t][t]));
                    if (D[i][t] != 0) dirty = true;
                }
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (D[t][j] == 0) continue;
                    add_col(j, t, -(D[t][j] / D[t][t]));
                    if (D[t][j] != 0) dirty = true;
                }
                if (dirty) {
                    // a remainder is smaller than the pivot: move it up and repeat
                    find_pivot(t, pi, pj);
                    swap_rows(t, pi);
                    swap_cols(t, pj);
                    continue;
                }
                // divisibility: fold an offending row into row t
                bool fixed = true;
                for (std::size_t i = t + 1; i < rows && fixed; ++i)
                    for (std::size_t j = t + 1; j < cols; ++j)
                        if (D[i][j] % D[t][t] != 0) {
                            add_row(t, i, 1);
                            fixed = false;
                            break;
                        }
                if (fixed) break;
            }
            if (D[t][t] < 0) negate_row(t);
        }
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& M) {
    const std::size_t r = M.size(), c = columns(M);
    for (const auto& row : M)
        if (row.size() != c) fail(Errc::InvalidParams, "ragged integer matrix");
    Reducer red{M, identity_matrix(r), identity_matrix(c), r, c};
    red.run();
    return {std::move(red.D), std::move(red.U), std::move(red.V)};
}

H1Order h1_order(const IntMatrix& M) {
    if (M.size() != columns(M)) fail(Errc::InvalidParams, "presentation matrix must be square");
    auto snf = smith_normal_form(M);
    std::int64_t prod = 1;
    for (auto d : snf.diagonal()) {
        if (d == 0) return {true, 0};
        prod = checked_mul(prod, std::llabs(d));
    }
    return {false, static_cast<std::uint64_t>(prod)};
}

std::uint64_t euler_hsi(const IntMatrix& M) {
    auto h = h1_order(M);
    return h.infinite ? 0 : h.order;
}

}  // namespace hsi
