#include "smatpi/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

namespace smatpi {

namespace {

constexpr int kMaxDk = 14;

// Family-local eta lookup: for col0 column 0 is the initial half cell; every
// other pair, and everything in col1, depends on the lag only.
cplx eta_local(const EtaTable& eta, KernelFamily family, int j1, int j2) {
    if (family == KernelFamily::col0 && j2 == 0) return eta.eta_initial[static_cast<std::size_t>(j1)];
    return eta.eta_interior[static_cast<std::size_t>(j1 - j2)];
}

cplx top_step(const PairState& s1, const PairState& s0, const EtaTable& eta, const Mat2& k_mat,
              KernelFamily family) {
    return family == KernelFamily::col0 ? a_initial(s1, s0, eta, k_mat)
                                        : a_interior(s1, s0, eta, k_mat);
}

}  // namespace

TraversalFrame initial_frame(PairState s0, PairState s1) {
    TraversalFrame f;
    f.depth = 1;
    f.path = {s0, s1};
    return f;
}

TraversalFrame advance_frame(const TraversalFrame& parent, PairState sigma_next,
                             const EtaTable& eta, const Mat2& k_mat, KernelFamily family) {
    const int kp = parent.depth;
    if (kp < 1) throw std::invalid_argument("advance_frame: parent depth must be >= 1");
    if (eta.max_lag < kp + 1)
        throw std::invalid_argument("advance_frame: lag out of eta table range");

    TraversalFrame child;
    child.depth = kp + 1;
    child.path = parent.path;
    child.path.push_back(sigma_next);
    const cplx a = a_interior(sigma_next, parent.path.back(), eta, k_mat);

    if (kp == 1) {
        // base rule: Mscr^{(2),[0]} is the depth-1 value times the new step
        child.scalars = {top_step(parent.path[1], parent.path[0], eta, k_mat, family) * a};
        return child;
    }

    child.scalars.resize(static_cast<std::size_t>(kp));
    for (int n = 0; n < kp; ++n) {
        cplx acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const cplx f = f_factor(parent.path[static_cast<std::size_t>(kp)],
                                    parent.path[static_cast<std::size_t>(j)],
                                    eta_local(eta, family, kp, j));
            acc += (f - 1.0) * parent.scalars[static_cast<std::size_t>(j)];
        }
        if (n < kp - 1) {
            const cplx f = f_factor(parent.path[static_cast<std::size_t>(kp)],
                                    parent.path[static_cast<std::size_t>(n)],
                                    eta_local(eta, family, kp, n));
            acc += f * parent.scalars[static_cast<std::size_t>(n)];
        }
        // the n = kp - 1 term reads the absent parent scalar as 0
        cplx suffix = 1.0;
        for (int l = n + 1; l <= kp - 1; ++l) {
            suffix *= f_factor(child.path[static_cast<std::size_t>(kp + 1)],
                               child.path[static_cast<std::size_t>(l)],
                               eta_local(eta, family, kp + 1, l));
        }
        child.scalars[static_cast<std::size_t>(n)] = acc * a * suffix;
    }
    return child;
}

cplx frame_contribution(const TraversalFrame& frame, const EtaTable& eta, const Mat2& k_mat,
                        KernelFamily family) {
    if (frame.depth == 1) return top_step(frame.path[1], frame.path[0], eta, k_mat, family);
    cplx sum = 0.0;
    for (int j = 0; j <= frame.depth - 2; ++j) {
        const cplx f = f_factor(frame.path[static_cast<std::size_t>(frame.depth)],
                                frame.path[static_cast<std::size_t>(j)],
                                eta_local(eta, family, frame.depth, j));
        sum += (f - 1.0) * frame.scalars[static_cast<std::size_t>(j)];
    }
    return sum;
}

std::uint64_t tree_node_count(int dk) {
    std::uint64_t n = 0;
    for (int k = 1; k <= dk; ++k) n += std::uint64_t{4} << (2 * k);
    return n;
}

namespace {

// One (family, root) subtree walk with table-driven influence factors.
//
// Two reorganizations of the recurrence keep the arithmetic throughput-bound:
//
//  * a node stores the prefix-combined values
//      q[n] = sum_{j<n} (F^{(k,j)} - 1) Mscr^{(k),[j]} + F^{(k,n)} Mscr^{(k),[n]}
//    (the bracket of the recurrence), which depend only on the node's own path
//    section, so the prefix sums are shared by all four children instead of
//    being recomputed per child; the running prefix also delivers the node's
//    kernel contribution for free.
//
//  * the four siblings at each depth are expanded together: their F rows,
//    suffix chains and scalar products are independent, and interleaving them
//    hides the latency of the serial suffix multiplications. The batch buffers
//    are per depth because a sibling's values must survive the depth-first
//    descent through the earlier siblings.
class SubtreeWalker {
public:
    SubtreeWalker(const EtaTable& eta, const Mat2& k_mat, int dk, KernelFamily family)
        : dk_(dk) {
        acc_.assign(static_cast<std::size_t>(dk), Mat4{});
        // f_col0_[j], f_lag_[d]: 4x4 tables of F over pair states
        f_lag_.resize(static_cast<std::size_t>(dk) + 1);
        f_col0_.resize(static_cast<std::size_t>(dk) + 1);
        for (int d = 0; d <= dk; ++d) {
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    // stored column-major: the four row-pair entries of one
                    // column pair share a cache line
                    const PairState sa = PairState::from_index(a);
                    const PairState sb = PairState::from_index(b);
                    f_lag_[static_cast<std::size_t>(d)][static_cast<std::size_t>(4 * b + a)] =
                        f_factor(sa, sb, eta.eta_interior[static_cast<std::size_t>(d)]);
                    f_col0_[static_cast<std::size_t>(d)][static_cast<std::size_t>(4 * b + a)] =
                        family == KernelFamily::col0
                            ? f_factor(sa, sb, eta.eta_initial[static_cast<std::size_t>(d)])
                            : f_lag_[static_cast<std::size_t>(d)][static_cast<std::size_t>(4 * b + a)];
                }
        }
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                const PairState sa = PairState::from_index(a);
                const PairState sb = PairState::from_index(b);
                a_top_(a, b) = top_step(sa, sb, eta, k_mat, family);
                a_int_(a, b) = a_interior(sa, sb, eta, k_mat);
            }
        q_.resize(static_cast<std::size_t>(dk));
        rows_.resize(static_cast<std::size_t>(dk) + 1);
        prod_.resize(static_cast<std::size_t>(dk) + 1);
        for (int k = 2; k <= dk; ++k) {
            rows_[static_cast<std::size_t>(k)].assign(4 * static_cast<std::size_t>(k), cplx{});
            if (k < dk) prod_[static_cast<std::size_t>(k)].assign(4 * static_cast<std::size_t>(k), cplx{});
        }
    }

    void run(int root) {
        path_[0] = root;
        for (int s1 = 0; s1 < 4; ++s1) {
            path_[1] = s1;
            ++nodes_;
            const cplx v = a_top_(s1, root);
            acc_[0](s1, root) += v;
            if (dk_ < 2) continue;
            qframe(1)[0] = v;
            expand_children(2);
        }
    }

    const std::vector<Mat4>& kernels() const { return acc_; }
    std::uint64_t node_visits() const { return nodes_; }
    std::size_t peak_live_scalars() const { return peak_live_; }

private:
    // the four F^{(k,j)} values over sigma_k, contiguous
    const cplx* f_row(int k, int j) const {
        const std::size_t idx = static_cast<std::size_t>(4 * path_[j]);
        return j == 0 ? &f_col0_[static_cast<std::size_t>(k)][idx]
                      : &f_lag_[static_cast<std::size_t>(k - j)][idx];
    }

    std::vector<cplx>& qframe(int k) {
        auto& q = q_[static_cast<std::size_t>(k)];
        if (q.size() != static_cast<std::size_t>(k)) {
            q.resize(static_cast<std::size_t>(k));
            live_ += static_cast<std::size_t>(k);
            peak_live_ = std::max(peak_live_, live_);
        }
        return q;
    }

    // Process the four siblings at depth k (the children of the current path
    // section of length k - 1).
    void expand_children(int k) {
        nodes_ += 4;
        const int kp = k - 1;
        const auto& q = q_[static_cast<std::size_t>(kp)];
        // row(c, l) = F^{(k,l)} for child c; prod(c, n) = Mscr^{(k),[n]}
        // = q[n] * A^{(k,k-1)} * prod_{l>n} F^{(k,l)}, built interleaved
        cplx* const row = rows_[static_cast<std::size_t>(k)].data();
        // sibling index contiguous so the c-inner loops stay dense
        const auto at = [](int c, int n) { return static_cast<std::size_t>(4 * n + c); };
        for (int l = 0; l <= k - 2; ++l) {
            const cplx* src = f_row(k, l);
            for (int c = 0; c < 4; ++c) row[at(c, l)] = src[c];
        }
        cplx suf[4] = {a_int_(0, path_[kp]), a_int_(1, path_[kp]), a_int_(2, path_[kp]),
                       a_int_(3, path_[kp])};
        if (k == dk_) {
            // leaves only contribute sum_n (F^{(k,n)} - 1) Mscr^{(k),[n]}, which
            // folds straight into the backward suffix pass
            cplx sums[4] = {};
            for (int n = kp - 1; n >= 0; --n) {
                const cplx qn = q[static_cast<std::size_t>(n)];
                for (int c = 0; c < 4; ++c) {
                    sums[c] += (row[at(c, n)] - 1.0) * (qn * suf[c]);
                    if (n > 0) suf[c] *= row[at(c, n)];
                }
            }
            for (int c = 0; c < 4; ++c) acc_[static_cast<std::size_t>(k - 1)](c, path_[0]) += sums[c];
            return;
        }
        // interior depths materialize the scalars for their own children
        cplx* const prod = prod_[static_cast<std::size_t>(k)].data();
        for (int n = kp - 1; n >= 0; --n) {
            for (int c = 0; c < 4; ++c) {
                prod[at(c, n)] = q[static_cast<std::size_t>(n)] * suf[c];
                if (n > 0) suf[c] *= row[at(c, n)];
            }
        }
        for (int c = 0; c < 4; ++c) {
            path_[k] = c;
            auto& qc = qframe(k);
            cplx prefix = 0.0;  // running sum of (F^{(k,n)} - 1) Mscr^{(k),[n]}
            for (int n = 0; n < kp; ++n) {
                const cplx scr = prod[at(c, n)];
                const cplx d = (row[at(c, n)] - 1.0) * scr;
                qc[static_cast<std::size_t>(n)] = prefix + d + scr;
                prefix += d;
            }
            qc[static_cast<std::size_t>(k - 1)] = prefix;  // the absent scalar reads as 0
            acc_[static_cast<std::size_t>(k - 1)](c, path_[0]) += prefix;
            expand_children(k + 1);
        }
    }

    int dk_;
    std::array<int, kMaxDk + 2> path_{};
    std::vector<std::array<cplx, 16>> f_lag_;
    std::vector<std::array<cplx, 16>> f_col0_;
    Mat4 a_top_;
    Mat4 a_int_;
    std::vector<std::vector<cplx>> rows_;
    std::vector<std::vector<cplx>> prod_;
    std::vector<std::vector<cplx>> q_;
    std::vector<Mat4> acc_;
    std::uint64_t nodes_ = 0;
    std::size_t live_ = 0;
    std::size_t peak_live_ = 0;
};

}  // namespace

KernelSet compute_kernels(const EtaTable& eta, const Mat2& k_mat, int dk, TraversalStats* stats,
                          int n_threads) {
    if (dk < 1 || dk > kMaxDk) throw std::out_of_range("compute_kernels: dk must be in [1, 14]");
    if (eta.max_lag < dk) throw std::invalid_argument("compute_kernels: eta table too short");

    struct Task {
        KernelFamily family;
        int root;
    };
    std::array<Task, 8> tasks;
    for (int f = 0; f < 2; ++f)
        for (int r = 0; r < 4; ++r)
            tasks[static_cast<std::size_t>(4 * f + r)] = {f == 0 ? KernelFamily::col0 : KernelFamily::col1, r};

    std::array<std::vector<Mat4>, 8> partial;
    std::array<std::uint64_t, 8> nodes{};
    std::array<std::size_t, 8> peaks{};

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
            SubtreeWalker walker(eta, k_mat, dk, tasks[i].family);
            walker.run(tasks[i].root);
            partial[i] = walker.kernels();
            nodes[i] = walker.node_visits();
            peaks[i] = walker.peak_live_scalars();
        }
    };

    const int workers = std::clamp(n_threads, 1, 8);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    KernelSet out;
    out.dk = dk;
    out.m_col0.assign(static_cast<std::size_t>(dk), Mat4{});
    out.m_col1.assign(static_cast<std::size_t>(dk), Mat4{});
    // fixed merge order keeps the result independent of scheduling
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        auto& dst = tasks[i].family == KernelFamily::col0 ? out.m_col0 : out.m_col1;
        for (int k = 0; k < dk; ++k) dst[static_cast<std::size_t>(k)] += partial[i][static_cast<std::size_t>(k)];
    }
    if (stats) {
        *stats = TraversalStats{};
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (tasks[i].family == KernelFamily::col0)
                stats->node_visits_col0 += nodes[i];
            else
                stats->node_visits_col1 += nodes[i];
            stats->peak_live_scalars = std::max(stats->peak_live_scalars, peaks[i]);
        }
    }
    return out;
}

}  // namespace smatpi
