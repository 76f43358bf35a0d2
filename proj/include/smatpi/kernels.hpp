// Memory-kernel construction by depth-first traversal of the implicit path
// quadtree. Each tree node carries the per-path recurrence scalars for its
// path section; frames are stored per depth and overwritten across siblings,
// so the traversal never materializes the tree and the live recurrence state
// stays at dk(dk-1)/2 scalars.

#pragma once

#include <cstdint>
#include <vector>

#include "smatpi/bath.hpp"
#include "smatpi/influence.hpp"
#include "smatpi/matrices.hpp"

namespace smatpi {

// The two kernel families: M^(k,0) starts at the initial half cell, while
// M^(k+1,1) is shift invariant and built from interior cells only.
enum class KernelFamily { col0, col1 };

struct KernelSet {
    int dk = 0;
    std::vector<Mat4> m_col0;  // [k-1] holds M^(k,0),   k = 1..dk
    std::vector<Mat4> m_col1;  // [k-1] holds M^(k+1,1), k = 1..dk
};

struct TraversalStats {
    std::uint64_t node_visits_col0 = 0;
    std::uint64_t node_visits_col1 = 0;
    std::size_t peak_live_scalars = 0;  // max live recurrence scalars in any one traversal
};

// Per-depth state of the quadtree walk. Path indices are family-local: for
// col0 the entries are sigma_0..sigma_k, for col1 they are sigma_1..sigma_{k+1}.
// The depth-1 node stores no scalars; its single value is recomputed from the
// path when needed.
struct TraversalFrame {
    int depth = 0;
    std::vector<PairState> path;
    std::vector<cplx> scalars;  // depth - 1 recurrence values for depth >= 2
};

TraversalFrame initial_frame(PairState s0, PairState s1);

// One step of the per-path recurrence: extend the path section by sigma_next
// and produce the child's scalars from the parent's.
TraversalFrame advance_frame(const TraversalFrame& parent, PairState sigma_next,
                             const EtaTable& eta, const Mat2& k_mat, KernelFamily family);

// The frame's additive contribution to its kernel matrix entry: the bare
// one-step factor at depth 1, sum_j (F - 1) scalars[j] at depth >= 2.
cplx frame_contribution(const TraversalFrame& frame, const EtaTable& eta, const Mat2& k_mat,
                        KernelFamily family);

// Nodes visited per family: 4 * sum_{k=1}^{dk} 4^k.
std::uint64_t tree_node_count(int dk);

// Build both kernel families for k = 1..dk. The eight (family, root) subtree
// tasks always accumulate into private matrices merged in a fixed order, so
// the result is identical for any thread count.
KernelSet compute_kernels(const EtaTable& eta, const Mat2& k_mat, int dk,
                          TraversalStats* stats = nullptr, int n_threads = 1);

}  // namespace smatpi
