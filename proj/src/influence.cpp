#include "smatpi/influence.hpp"

#include <cmath>

namespace smatpi {

Mat2 system_propagator(const SystemParams& sys, double dt) {
    const double lambda = std::hypot(sys.epsilon, sys.delta);
    Mat2 k = Mat2::identity();
    if (lambda == 0.0 || dt == 0.0) return k;
    const double c = std::cos(lambda * dt);
    const cplx ms = cplx{0.0, -1.0} * std::sin(lambda * dt) / lambda;
    // H0 = epsilon sigma_z + delta sigma_x in the |+1>, |-1> basis
    k(0, 0) = c + ms * sys.epsilon;
    k(0, 1) = ms * sys.delta;
    k(1, 0) = ms * sys.delta;
    k(1, 1) = c - ms * sys.epsilon;
    return k;
}

cplx a_initial(const PairState& s1, const PairState& s0, const EtaTable& eta, const Mat2& k_mat) {
    return g_factor(s1, s0, k_mat) * f_factor(s1, s1, eta.eta_interior[0]) *
           f_factor(s1, s0, eta.eta_initial[1]) * f_factor(s0, s0, eta.eta_initial[0]);
}

cplx a_interior(const PairState& s_next, const PairState& s_prev, const EtaTable& eta,
                const Mat2& k_mat) {
    return f_factor(s_next, s_prev, eta.eta_interior[1]) *
           f_factor(s_next, s_next, eta.eta_interior[0]) * g_factor(s_next, s_prev, k_mat);
}

Mat4 liouville_propagator(const Mat2& k_mat) {
    Mat4 m;
    for (int r = 0; r < kNumPairStates; ++r)
        for (int c = 0; c < kNumPairStates; ++c)
            m(r, c) = g_factor(PairState::from_index(r), PairState::from_index(c), k_mat);
    return m;
}

}  // namespace smatpi
