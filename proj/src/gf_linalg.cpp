#include "normbch/gf_linalg.hpp"

#include <stdexcept>
#include <utility>

namespace nbch::gf {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t q) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = q, new_r = a % q;
    if (new_r == 0) throw std::domain_error("inverse of zero");
    while (new_r != 0) {
        const std::int64_t quot = r / new_r;
        t = std::exchange(new_t, t - quot * new_t);
        r = std::exchange(new_r, r - quot * new_r);
    }
    if (t < 0) t += q;
    return static_cast<std::uint32_t>(t);
}

std::vector<std::size_t> rref(Matrix& a, std::uint32_t q) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    const std::size_t rows = a.size();
    const std::size_t cols = a.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && a[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[r], a[sel]);
        const std::uint64_t f = inv_mod(a[r][c], q);
        for (auto& v : a[r]) v = static_cast<std::uint32_t>(v * f % q);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const std::uint64_t m = q - a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] = static_cast<std::uint32_t>((a[i][j] + m * a[r][j]) % q);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(Matrix a, std::uint32_t q) { return rref(a, q).size(); }

Matrix kernel(Matrix a, std::size_t cols, std::uint32_t q) {
    const auto pivots = rref(a, q);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    Matrix basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Row x(cols, 0);
        x[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            x[pivots[i]] = (q - a[i][free]) % q;
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<Row> solve(Matrix a, const Row& b, std::uint32_t q) {
    if (a.size() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
    if (a.empty()) return Row{};
    const std::size_t cols = a.front().size();
    for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i] % q);
    const auto pivots = rref(a, q);
    Row x(cols, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == cols) return std::nullopt;
        x[pivots[i]] = a[i][cols];
    }
    return x;
}

std::optional<Matrix> inverse(const Matrix& a, std::uint32_t q) {
    const std::size_t n = a.size();
    Matrix aug(n, Row(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw std::invalid_argument("inverse: matrix not square");
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j] % q;
        aug[i][n + i] = 1;
    }
    const auto pivots = rref(aug, q);
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, Row(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

}  // namespace nbch::gf
