#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "smatpi/combinatorics.hpp"
#include "smatpi/kernels.hpp"
#include "test_support.hpp"

using namespace smatpi;
using smatpi::testing::make_eta;
using smatpi::testing::small_bath;
using smatpi::testing::zero_eta;

namespace {

// A synthetic eta table with arbitrary complex entries; the recurrence holds
// for any coefficients, physical or not.
EtaTable synthetic_eta(int max_lag) {
    EtaTable t;
    t.dt = 0.1;
    t.max_lag = max_lag;
    for (int d = 0; d <= max_lag; ++d) {
        t.eta_initial.push_back(cplx{0.02 + 0.013 * d, -0.015 + 0.007 * d});
        t.eta_interior.push_back(cplx{0.016 - 0.004 * d, 0.011 + 0.003 * d});
    }
    return t;
}

void frame_dfs(const TraversalFrame& f, int dk, const EtaTable& eta, const Mat2& k_mat,
               KernelFamily fam, std::vector<Mat4>& dst) {
    dst[static_cast<std::size_t>(f.depth - 1)](f.path.back().index(), f.path.front().index()) +=
        frame_contribution(f, eta, k_mat, fam);
    if (f.depth == dk) return;
    for (int s = 0; s < 4; ++s)
        frame_dfs(advance_frame(f, PairState::from_index(s), eta, k_mat, fam), dk, eta, k_mat, fam,
                  dst);
}

// Kernels assembled from the plain frame API.
KernelSet kernels_via_frames(const EtaTable& eta, const Mat2& k_mat, int dk) {
    KernelSet out;
    out.dk = dk;
    out.m_col0.assign(static_cast<std::size_t>(dk), Mat4{});
    out.m_col1.assign(static_cast<std::size_t>(dk), Mat4{});
    for (KernelFamily fam : {KernelFamily::col0, KernelFamily::col1}) {
        auto& dst = fam == KernelFamily::col0 ? out.m_col0 : out.m_col1;
        for (int s0 = 0; s0 < 4; ++s0)
            for (int s1 = 0; s1 < 4; ++s1)
                frame_dfs(initial_frame(PairState::from_index(s0), PairState::from_index(s1)), dk,
                          eta, k_mat, fam, dst);
    }
    return out;
}

}  // namespace

TEST_CASE("dk = 1 kernels are the bare one-step matrices") {
    const EtaTable eta = make_eta(small_bath(0.3, 8), 0.1, 2);
    const Mat2 k = system_propagator({1.0, 1.0}, 0.1);
    const KernelSet ks = compute_kernels(eta, k, 1);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const PairState sr = PairState::from_index(r);
            const PairState sc = PairState::from_index(c);
            CHECK(std::abs(ks.m_col0[0](r, c) - a_initial(sr, sc, eta, k)) == 0.0);
            CHECK(std::abs(ks.m_col1[0](r, c) - a_interior(sr, sc, eta, k)) == 0.0);
        }
}

TEST_CASE("advance_frame base rules") {
    const EtaTable eta = synthetic_eta(6);
    const Mat2 k = system_propagator({0.8, 1.2}, 0.1);
    const PairState s0{-1, +1};
    const PairState s1{+1, +1};
    const PairState s2{+1, -1};

    const TraversalFrame f1 = initial_frame(s0, s1);
    CHECK(f1.depth == 1);
    CHECK(f1.scalars.empty());

    const TraversalFrame f2c0 = advance_frame(f1, s2, eta, k, KernelFamily::col0);
    REQUIRE(f2c0.scalars.size() == 1);
    CHECK(std::abs(f2c0.scalars[0] - a_initial(s1, s0, eta, k) * a_interior(s2, s1, eta, k)) == 0.0);

    const TraversalFrame f2c1 = advance_frame(f1, s2, eta, k, KernelFamily::col1);
    CHECK(std::abs(f2c1.scalars[0] - a_interior(s1, s0, eta, k) * a_interior(s2, s1, eta, k)) == 0.0);
}

TEST_CASE("advance_frame matches the written-out depth-4 rules") {
    const EtaTable eta = synthetic_eta(8);
    const Mat2 k = system_propagator({1.0, 0.7}, 0.1);
    const PairState path[5] = {{-1, -1}, {+1, -1}, {-1, +1}, {+1, +1}, {-1, +1}};

    TraversalFrame f = initial_frame(path[0], path[1]);
    f = advance_frame(f, path[2], eta, k, KernelFamily::col0);
    const cplx scr2 = f.scalars[0];
    f = advance_frame(f, path[3], eta, k, KernelFamily::col0);
    REQUIRE(f.scalars.size() == 2);

    auto F = [&](int j1, int j2) { return f_factor(path[j1], path[j2], eta.lookup(j1, j2)); };
    const cplx a32 = a_interior(path[3], path[2], eta, k);
    const cplx scr3_0 = F(2, 0) * scr2 * a32 * F(3, 1);
    const cplx scr3_1 = (F(2, 0) - 1.0) * scr2 * a32;
    CHECK(std::abs(f.scalars[0] - scr3_0) < 1e-16);
    CHECK(std::abs(f.scalars[1] - scr3_1) < 1e-16);

    f = advance_frame(f, path[4], eta, k, KernelFamily::col0);
    REQUIRE(f.scalars.size() == 3);
    const cplx a43 = a_interior(path[4], path[3], eta, k);
    const cplx expect0 = F(3, 0) * scr3_0 * a43 * F(4, 2) * F(4, 1);
    const cplx expect1 = ((F(3, 0) - 1.0) * scr3_0 + F(3, 1) * scr3_1) * a43 * F(4, 2);
    const cplx expect2 = ((F(3, 0) - 1.0) * scr3_0 + (F(3, 1) - 1.0) * scr3_1) * a43;
    CHECK(std::abs(f.scalars[0] - expect0) < 1e-15);
    CHECK(std::abs(f.scalars[1] - expect1) < 1e-15);
    CHECK(std::abs(f.scalars[2] - expect2) < 1e-15);

    const cplx contrib = frame_contribution(f, eta, k, KernelFamily::col0);
    const cplx expect_contrib =
        (F(4, 0) - 1.0) * expect0 + (F(4, 1) - 1.0) * expect1 + (F(4, 2) - 1.0) * expect2;
    CHECK(std::abs(contrib - expect_contrib) < 1e-15);
}

TEST_CASE("decoupled limit collapses every higher kernel") {
    const EtaTable eta = zero_eta(0.1, 6);
    const Mat2 k = system_propagator({1.0, 1.0}, 0.1);
    const KernelSet ks = compute_kernels(eta, k, 5);
    CHECK(max_abs_diff(ks.m_col0[0], liouville_propagator(k)) == 0.0);
    CHECK(max_abs_diff(ks.m_col1[0], liouville_propagator(k)) == 0.0);
    for (int i = 1; i < 5; ++i) {
        CHECK(max_abs(ks.m_col0[i]) == 0.0);
        CHECK(max_abs(ks.m_col1[i]) == 0.0);
    }

    // with all F = 1 the recurrence reduces to repeated interior steps
    const TraversalFrame f1 = initial_frame(PairState{+1, -1}, PairState{-1, -1});
    TraversalFrame f = advance_frame(f1, PairState{+1, +1}, eta, k, KernelFamily::col0);
    f = advance_frame(f, PairState{-1, +1}, eta, k, KernelFamily::col0);
    const cplx chain = g_factor(PairState{-1, -1}, PairState{+1, -1}, k) *
                       g_factor(PairState{+1, +1}, PairState{-1, -1}, k) *
                       g_factor(PairState{-1, +1}, PairState{+1, +1}, k);
    CHECK(std::abs(f.scalars[0] - chain) < 1e-16);
}

TEST_CASE("traversal agrees with the frame-by-frame construction") {
    const EtaTable eta = synthetic_eta(5);
    const Mat2 k = system_propagator({0.9, 1.1}, 0.1);
    const KernelSet fast = compute_kernels(eta, k, 3);
    const KernelSet slow = kernels_via_frames(eta, k, 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(max_abs_diff(fast.m_col0[i], slow.m_col0[i]) < 1e-14);
        CHECK(max_abs_diff(fast.m_col1[i], slow.m_col1[i]) < 1e-14);
    }
}

TEST_CASE("node visits and frame memory") {
    const EtaTable eta = synthetic_eta(9);
    const Mat2 k = system_propagator({1.0, 1.0}, 0.1);
    for (int dk : {1, 2, 3, 4, 5, 6}) {
        TraversalStats stats;
        compute_kernels(eta, k, dk, &stats);
        CHECK(stats.node_visits_col0 == tree_node_count(dk));
        CHECK(stats.node_visits_col1 == tree_node_count(dk));
        const std::size_t expect_peak = static_cast<std::size_t>(dk) * (dk - 1) / 2;
        CHECK(stats.peak_live_scalars == expect_peak);
        CHECK(stats.peak_live_scalars <= static_cast<std::size_t>(dk) * (dk + 1) / 2);
    }
    CHECK(tree_node_count(3) == 4 * (4 + 16 + 64));
}

TEST_CASE("thread count does not change the result") {
    const EtaTable eta = make_eta(small_bath(0.4, 12), 0.1, 7);
    const Mat2 k = system_propagator({1.0, 1.0}, 0.1);
    const KernelSet a = compute_kernels(eta, k, 6, nullptr, 1);
    const KernelSet b = compute_kernels(eta, k, 6, nullptr, 2);
    const KernelSet c = compute_kernels(eta, k, 6, nullptr, 8);
    for (int i = 0; i < 6; ++i) {
        CHECK(max_abs_diff(a.m_col0[i], b.m_col0[i]) == 0.0);
        CHECK(max_abs_diff(a.m_col1[i], b.m_col1[i]) == 0.0);
        CHECK(max_abs_diff(a.m_col0[i], c.m_col0[i]) == 0.0);
        CHECK(max_abs_diff(a.m_col1[i], c.m_col1[i]) == 0.0);
    }
}

TEST_CASE("input validation") {
    const EtaTable eta = synthetic_eta(4);
    const Mat2 k = system_propagator({1.0, 1.0}, 0.1);
    CHECK_THROWS_AS(compute_kernels(eta, k, 0), std::out_of_range);
    CHECK_THROWS_AS(compute_kernels(eta, k, 15), std::out_of_range);
    CHECK_THROWS_AS(compute_kernels(eta, k, 6), std::invalid_argument);  // table too short

    TraversalFrame f = initial_frame(PairState{+1, +1}, PairState{-1, -1});
    for (int d = 0; d < 3; ++d) f = advance_frame(f, PairState{+1, -1}, eta, k, KernelFamily::col0);
    CHECK(f.depth == 4);  // needs lags up to 4, still within the table
    CHECK_THROWS_AS(advance_frame(f, PairState{+1, -1}, eta, k, KernelFamily::col0),
                    std::invalid_argument);
}

TEST_CASE("symbolic expansion reproduces the Catalan structure") {
    using smatpi::testing::symbolic_frame;
    using smatpi::testing::symbolic_kernel_terms;
    for (int k = 2; k <= 8; ++k) {
        CHECK(symbolic_kernel_terms(k).size() == catalan(k - 1));
        const auto frame = symbolic_frame(k);
        REQUIRE(frame.size() == static_cast<std::size_t>(k - 1));
        for (int j = 0; j <= k - 2; ++j)
            CHECK(frame[static_cast<std::size_t>(j)].size() == catalan_triangle(k - 2, j));
    }
}
