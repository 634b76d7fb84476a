#pragma once

#include <cstdint>
#include <vector>

namespace hsi {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct SmithForm {
    IntMatrix D, U, V;  // U * M * V = D
    std::vector<std::int64_t> diagonal() const;
};

// checked 64-bit arithmetic; throws Overflow
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

IntMatrix identity_matrix(std::size_t n);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
std::size_t columns(const IntMatrix& m);

SmithForm smith_normal_form(const IntMatrix& M);

struct H1Order {
    bool infinite = false;
    std::uint64_t order = 0;  // meaningful when finite
    bool operator==(const H1Order&) const = default;
};

H1Order h1_order(const IntMatrix& M);
// |H_1| when finite, 0 otherwise
std::uint64_t euler_hsi(const IntMatrix& M);

}  // namespace hsi
