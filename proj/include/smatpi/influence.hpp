// Elementary factors of the path integrand: the bare-system propagator, the
// pairwise influence factors F, the free-propagation factors G, and the
// one-step products A that seed the kernel recurrences.
//
// Conventions fixed across the project: the 2x2 basis is ordered |+1>, |-1>;
// a pair state (s+, s-) has dense index ((s+ + 1)/2)*2 + ((s- + 1)/2); all 4x4
// matrices are indexed [later-time pair][earlier-time pair].

#pragma once

#include "smatpi/bath.hpp"
#include "smatpi/matrices.hpp"

namespace smatpi {

// Forward/backward spin pair (s+, s-), both in {-1, +1}.
struct PairState {
    int plus;
    int minus;

    int index() const { return ((plus + 1) / 2) * 2 + ((minus + 1) / 2); }
    bool diagonal() const { return plus == minus; }

    static PairState from_index(int i) { return {(i >> 1) * 2 - 1, (i & 1) * 2 - 1}; }
};

constexpr int kNumPairStates = 4;

struct SystemParams {
    double epsilon = 1.0;  // energy bias
    double delta = 1.0;    // tunneling
};

// Matrix index of a spin value in the |+1>, |-1> ordered basis.
inline int spin_index(int s) { return s == +1 ? 0 : 1; }

// K = exp(-i H0 dt) with H0 = epsilon sigma_z + delta sigma_x.
Mat2 system_propagator(const SystemParams& sys, double dt);

// F = exp(-(s1+ - s1-)(eta s2+ - conj(eta) s2-)).
inline cplx f_factor(const PairState& s1, const PairState& s2, cplx eta) {
    if (s1.diagonal()) return 1.0;
    const cplx arg = eta * static_cast<double>(s2.plus) - std::conj(eta) * static_cast<double>(s2.minus);
    return std::exp(-static_cast<double>(s1.plus - s1.minus) * arg);
}

// G = K[s_next+, s_prev+] conj(K[s_next-, s_prev-]).
inline cplx g_factor(const PairState& s_next, const PairState& s_prev, const Mat2& k_mat) {
    return k_mat(spin_index(s_next.plus), spin_index(s_prev.plus)) *
           std::conj(k_mat(spin_index(s_next.minus), spin_index(s_prev.minus)));
}

// A^{(1,0)} = G^{(1,0)} F^{(1,1)} F^{(1,0)} F^{(0,0)}: the first time step,
// carrying the initial half-cell eta column.
cplx a_initial(const PairState& s1, const PairState& s0, const EtaTable& eta, const Mat2& k_mat);

// A^{(k+1,k)} = F^{(k+1,k)} F^{(k+1,k+1)} G^{(k+1,k)}: any interior step,
// depending on lags only.
cplx a_interior(const PairState& s_next, const PairState& s_prev, const EtaTable& eta,
                const Mat2& k_mat);

// One-step Liouville propagator [g_factor] as a 4x4 matrix (the xi = 0 limit
// of every transfer matrix here).
Mat4 liouville_propagator(const Mat2& k_mat);

}  // namespace smatpi
