// Exact combinatorics behind the kernel expansion: Catalan numbers, Catalan's
// triangle, Dyck paths and the diagram-area cost models. Everything here is
// integer arithmetic; inputs outside the exact 64-bit range are rejected.

#pragma once

#include <cstdint>
#include <vector>

namespace smatpi {

enum class Step : std::uint8_t { Right, Up };

// Monotone lattice path from (0,0) to (n,n) staying weakly below y = x.
struct DyckPath {
    std::vector<Step> steps;  // length 2n, exactly n Right and n Up

    std::size_t size() const { return steps.size() / 2; }
};

bool is_valid_dyck_path(const DyckPath& p);

// C_n = (2n)! / ((n+1)! n!), exact. Requires 0 <= n <= 30.
std::uint64_t catalan(int n);

// Catalan's triangle T(n,k) = binom(n+k,k) - binom(n+k,k-1). Requires 0 <= k <= n <= 30.
std::uint64_t catalan_triangle(int n, int k);

// All Dyck paths of size n in lexicographic order with Right < Up. Requires n <= 14.
std::vector<DyckPath> enumerate_dyck_paths(int n);

// Unit squares plus diagonal half-cells strictly above p and weakly below y = x.
std::uint64_t area_cost(const DyckPath& p);

// S_k: total area cost over all Dyck paths of size k-1. Requires 1 <= k <= 15.
std::uint64_t s_total(int k);

// Triangle S(n,k) from the recurrence
//   S(n,k) = sum_{j=0}^{k} S(n-1,j) + ((n-k)^2 / n) * binom(n-1+k, k),  S(n,n) = 0.
// Row sums reproduce s_total(n+1). Requires 0 <= k <= n <= 20.
std::uint64_t s_triangle(int n, int k);

// Naive per-path cost of building all kernel matrices up to memory length dk:
// sum_{k=1}^{dk} 2^{2(k+1)} S_k. Requires 1 <= dk <= 15.
std::uint64_t smatpi_cost_estimate(int dk);

// Tree-traversal cost model sum_{k=0}^{dk} k^2 4^k; cross-checked against the
// closed form (4/27)((9 dk^2 - 6 dk + 5) 4^dk - 5). Requires 0 <= dk <= 25.
std::uint64_t tsmatpi_cost_model(int dk);

}  // namespace smatpi
