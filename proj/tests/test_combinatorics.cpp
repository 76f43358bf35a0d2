#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "smatpi/combinatorics.hpp"

using namespace smatpi;

namespace {

DyckPath from_string(const char* s) {
    DyckPath p;
    for (const char* c = s; *c; ++c) p.steps.push_back(*c == 'R' ? Step::Right : Step::Up);
    return p;
}

}  // namespace

TEST_CASE("catalan numbers") {
    const std::uint64_t known[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
    for (int n = 0; n <= 10; ++n) CHECK(catalan(n) == known[n]);
    CHECK(catalan(3) == 5);
    CHECK(catalan(4) == 14);
    CHECK(catalan(30) == 3814986502092304ULL);
    CHECK_THROWS_AS(catalan(31), std::out_of_range);
    CHECK_THROWS_AS(catalan(-1), std::out_of_range);
}

TEST_CASE("catalan asymptotic ratio within 10 percent at n = 25") {
    const double n = 25.0;
    const double approx = std::pow(4.0, n) / (std::sqrt(M_PI) * std::pow(n, 1.5));
    const double ratio = static_cast<double>(catalan(25)) / approx;
    CHECK(std::abs(ratio - 1.0) < 0.10);
}

TEST_CASE("catalan triangle values") {
    CHECK(catalan_triangle(4, 2) == 9);
    CHECK(catalan_triangle(3, 3) == 5);
    for (int n = 0; n <= 12; ++n) {
        CHECK(catalan_triangle(n, 0) == 1);
        CHECK(catalan_triangle(n, n) == catalan(n));
    }
    const std::uint64_t row4[] = {1, 4, 9, 14, 14};
    for (int k = 0; k <= 4; ++k) CHECK(catalan_triangle(4, k) == row4[k]);
    CHECK_THROWS_AS(catalan_triangle(3, 4), std::out_of_range);
}

TEST_CASE("catalan triangle recurrences") {
    // T(n+1,k) is the sum of the entries of row n up to column k, and full
    // rows sum to the next Catalan number (the j = 0 entry is T(n,0) = 1).
    for (int n = 0; n <= 12; ++n) {
        std::uint64_t row_sum = 0;
        for (int k = 0; k <= n; ++k) {
            std::uint64_t prefix = 0;
            for (int j = 0; j <= k; ++j) prefix += catalan_triangle(n, j);
            CHECK(catalan_triangle(n + 1, k) == prefix);
            row_sum += catalan_triangle(n, k);
        }
        CHECK(row_sum == catalan(n + 1));
    }
}

TEST_CASE("dyck path enumeration") {
    CHECK(enumerate_dyck_paths(0).size() == 1);
    CHECK(enumerate_dyck_paths(3).size() == 5);
    CHECK(enumerate_dyck_paths(8).size() == 1430);
    for (int n = 0; n <= 10; ++n) CHECK(enumerate_dyck_paths(n).size() == catalan(n));

    const auto paths = enumerate_dyck_paths(4);
    std::set<std::vector<Step>> unique;
    for (const auto& p : paths) {
        CHECK(is_valid_dyck_path(p));
        unique.insert(p.steps);
    }
    CHECK(unique.size() == paths.size());

    // lexicographic with Right < Up: first is R^n U^n, last alternates
    CHECK(paths.front().steps == from_string("RRRRUUUU").steps);
    CHECK(paths.back().steps == from_string("RURURURU").steps);
    for (std::size_t i = 1; i < paths.size(); ++i) CHECK(paths[i - 1].steps < paths[i].steps);

    CHECK_THROWS_AS(enumerate_dyck_paths(15), std::out_of_range);
}

TEST_CASE("area cost") {
    CHECK(area_cost(from_string("RRRUUU")) == 6);
    CHECK(area_cost(from_string("RURURU")) == 3);
    CHECK(area_cost(from_string("RU")) == 1);
    CHECK(area_cost(from_string("")) == 0);

    // n <= cost <= n(n+1)/2, extremes attained by max-stairs and one-stairstep
    for (int n = 1; n <= 8; ++n) {
        std::uint64_t lo = UINT64_MAX;
        std::uint64_t hi = 0;
        for (const auto& p : enumerate_dyck_paths(n)) {
            const std::uint64_t c = area_cost(p);
            lo = std::min(lo, c);
            hi = std::max(hi, c);
            CHECK(c >= static_cast<std::uint64_t>(n));
            CHECK(c <= static_cast<std::uint64_t>(n) * (n + 1) / 2);
        }
        CHECK(lo == static_cast<std::uint64_t>(n));
        CHECK(hi == static_cast<std::uint64_t>(n) * (n + 1) / 2);
    }
}

TEST_CASE("s_total") {
    CHECK(s_total(1) == 0);
    CHECK(s_total(2) == 1);
    CHECK(s_total(3) == 5);
    CHECK(s_total(4) == 22);
}

TEST_CASE("s_triangle against the tabulated rows") {
    const std::uint64_t rows[5][5] = {
        {0, 0, 0, 0, 0}, {1, 0, 0, 0, 0}, {3, 2, 0, 0, 0}, {6, 9, 7, 0, 0}, {10, 24, 32, 27, 0}};
    for (int n = 0; n <= 4; ++n)
        for (int k = 0; k <= n; ++k) CHECK(s_triangle(n, k) == rows[n][k]);
    CHECK(s_triangle(3, 1) == 9);
    CHECK(s_triangle(4, 2) == 32);
    CHECK(s_triangle(5, 5) == 0);
    CHECK_THROWS_AS(s_triangle(4, 5), std::out_of_range);
}

TEST_CASE("s_triangle row sums and first column") {
    for (int n = 0; n <= 12; ++n) {
        std::uint64_t row_sum = 0;
        for (int k = 0; k <= n; ++k) row_sum += s_triangle(n, k);
        CHECK(row_sum == s_total(n + 1));
        CHECK(s_triangle(n, 0) == static_cast<std::uint64_t>(n) * (n + 1) / 2);
    }
}

TEST_CASE("smatpi cost estimate") {
    CHECK(smatpi_cost_estimate(1) == 0);
    CHECK(smatpi_cost_estimate(2) == 64);
    // 16*0 + 64*1 + 256*5 + 1024*22
    CHECK(smatpi_cost_estimate(4) == 23872);
    CHECK_THROWS_AS(smatpi_cost_estimate(16), std::out_of_range);
}

TEST_CASE("tsmatpi cost model") {
    CHECK(tsmatpi_cost_model(0) == 0);
    CHECK(tsmatpi_cost_model(1) == 4);
    CHECK(tsmatpi_cost_model(3) == 644);
    // the closed form is re-derived inside; any disagreement throws
    for (int dk = 0; dk <= 25; ++dk) CHECK_NOTHROW(tsmatpi_cost_model(dk));
    CHECK_THROWS_AS(tsmatpi_cost_model(26), std::out_of_range);
}
