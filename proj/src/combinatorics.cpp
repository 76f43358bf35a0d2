#include "smatpi/combinatorics.hpp"

#include <stdexcept>
#include <string>

namespace smatpi {

namespace {

using u64 = std::uint64_t;
using i128 = __int128;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::out_of_range(msg);
}

// binom(n,k) exact in 128-bit intermediate; caller guarantees the result fits u64.
u64 binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    i128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;  // exact at each step: r is binom(n-k+i, i)
    }
    return static_cast<u64>(r);
}

void enumerate_rec(int n, int rights, int ups, DyckPath& cur, std::vector<DyckPath>& out) {
    if (rights == n && ups == n) {
        out.push_back(cur);
        return;
    }
    // Right < Up gives lexicographic order.
    if (rights < n) {
        cur.steps.push_back(Step::Right);
        enumerate_rec(n, rights + 1, ups, cur, out);
        cur.steps.pop_back();
    }
    if (ups < rights) {
        cur.steps.push_back(Step::Up);
        enumerate_rec(n, rights, ups + 1, cur, out);
        cur.steps.pop_back();
    }
}

}  // namespace

bool is_valid_dyck_path(const DyckPath& p) {
    if (p.steps.size() % 2 != 0) return false;
    const int n = static_cast<int>(p.steps.size() / 2);
    int rights = 0;
    int ups = 0;
    for (Step s : p.steps) {
        if (s == Step::Right)
            ++rights;
        else
            ++ups;
        if (ups > rights) return false;
    }
    return rights == n && ups == n;
}

std::uint64_t catalan(int n) {
    require(n >= 0 && n <= 30, "catalan: n must be in [0, 30]");
    u64 c = 1;
    for (int i = 1; i <= n; ++i) {
        // C_i = C_{i-1} * (4i - 2) / (i + 1), exact
        c = c * static_cast<u64>(4 * i - 2) / static_cast<u64>(i + 1);
    }
    return c;
}

std::uint64_t catalan_triangle(int n, int k) {
    require(n >= 0 && n <= 30, "catalan_triangle: n must be in [0, 30]");
    require(k >= 0 && k <= n, "catalan_triangle: k must be in [0, n]");
    return binomial(n + k, k) - binomial(n + k, k - 1);
}

std::vector<DyckPath> enumerate_dyck_paths(int n) {
    require(n >= 0 && n <= 14, "enumerate_dyck_paths: n must be in [0, 14]");
    std::vector<DyckPath> out;
    out.reserve(catalan(n));
    DyckPath cur;
    cur.steps.reserve(static_cast<std::size_t>(2 * n));
    enumerate_rec(n, 0, 0, cur, out);
    return out;
}

std::uint64_t area_cost(const DyckPath& p) {
    // Column i contributes (i - h_i) full squares plus the diagonal half-cell,
    // where h_i is the path height while crossing column i.
    u64 cost = 0;
    int height = 0;
    int column = 0;
    for (Step s : p.steps) {
        if (s == Step::Right) {
            cost += static_cast<u64>(column - height) + 1;
            ++column;
        } else {
            ++height;
        }
    }
    return cost;
}

std::uint64_t s_total(int k) {
    require(k >= 1 && k <= 15, "s_total: k must be in [1, 15]");
    u64 total = 0;
    for (const DyckPath& p : enumerate_dyck_paths(k - 1)) total += area_cost(p);
    return total;
}

std::uint64_t s_triangle(int n, int k) {
    require(n >= 0 && n <= 20, "s_triangle: n must be in [0, 20]");
    require(k >= 0 && k <= n, "s_triangle: k must be in [0, n]");
    // Build rows bottom-up; the ((n-k)^2 / n) * binom term is an exact integer,
    // asserted via divisibility instead of rounding through floating point.
    std::vector<u64> prev{0};  // row 0: S(0,0) = 0
    for (int row = 1; row <= n; ++row) {
        std::vector<u64> cur(static_cast<std::size_t>(row) + 1, 0);
        u64 prefix = 0;
        for (int col = 0; col < row; ++col) {
            prefix += prev[static_cast<std::size_t>(col)];
            const i128 num = static_cast<i128>(row - col) * (row - col) * binomial(row - 1 + col, col);
            if (num % row != 0) throw std::logic_error("s_triangle: non-integer recurrence term");
            cur[static_cast<std::size_t>(col)] = prefix + static_cast<u64>(num / row);
        }
        cur[static_cast<std::size_t>(row)] = 0;  // boundary S(n,n) = 0
        prev = std::move(cur);
    }
    return prev[static_cast<std::size_t>(k)];
}

std::uint64_t smatpi_cost_estimate(int dk) {
    require(dk >= 1 && dk <= 15, "smatpi_cost_estimate: dk must be in [1, 15]");
    u64 total = 0;
    for (int k = 1; k <= dk; ++k) {
        total += (u64{1} << (2 * (k + 1))) * s_total(k);
    }
    return total;
}

std::uint64_t tsmatpi_cost_model(int dk) {
    require(dk >= 0 && dk <= 25, "tsmatpi_cost_model: dk must be in [0, 25]");
    u64 sum = 0;
    for (int k = 0; k <= dk; ++k) {
        sum += static_cast<u64>(k) * static_cast<u64>(k) * (u64{1} << (2 * k));
    }
    // Closed form must agree exactly.
    const i128 pow4 = i128{1} << (2 * dk);
    const i128 closed_num = 4 * ((i128{9} * dk * dk - 6 * dk + 5) * pow4 - 5);
    if (closed_num % 27 != 0 || static_cast<u64>(closed_num / 27) != sum)
        throw std::logic_error("tsmatpi_cost_model: closed form disagrees with direct sum");
    return sum;
}

}  // namespace smatpi
