#include "smatpi/oracles.hpp"

#include <stdexcept>

namespace smatpi {

namespace {

// Weight of one full path sigma_0..sigma_N: all G factors times the complete
// double product of F factors. Column 0 takes the initial-cell eta; an
// optional lag cap (iquapi truncation) drops pairs further apart than it.
cplx path_weight(const std::vector<PairState>& path, const EtaTable& eta, const Mat2& k_mat,
                 int lag_cap) {
    const int n = static_cast<int>(path.size()) - 1;
    cplx w = 1.0;
    for (int j = 0; j < n; ++j)
        w *= g_factor(path[static_cast<std::size_t>(j + 1)], path[static_cast<std::size_t>(j)], k_mat);
    for (int j1 = 0; j1 <= n; ++j1)
        for (int j2 = 0; j2 <= j1; ++j2) {
            if (lag_cap >= 0 && j1 - j2 > lag_cap) continue;
            w *= f_factor(path[static_cast<std::size_t>(j1)], path[static_cast<std::size_t>(j2)],
                          eta.lookup(j1, j2));
        }
    return w;
}

template <typename WeightFn>
Mat4 sum_paths(int n_steps, const WeightFn& weight) {
    Mat4 u;
    std::vector<PairState> path(static_cast<std::size_t>(n_steps) + 1);
    std::vector<int> digits(static_cast<std::size_t>(n_steps) - 1, 0);
    for (int row = 0; row < kNumPairStates; ++row) {
        path.back() = PairState::from_index(row);
        for (int col = 0; col < kNumPairStates; ++col) {
            path.front() = PairState::from_index(col);
            cplx total = 0.0;
            std::fill(digits.begin(), digits.end(), 0);
            // odometer over the interior pair states
            while (true) {
                for (std::size_t i = 0; i < digits.size(); ++i)
                    path[i + 1] = PairState::from_index(digits[i]);
                total += weight(path);
                std::size_t pos = 0;
                while (pos < digits.size() && ++digits[pos] == kNumPairStates) {
                    digits[pos] = 0;
                    ++pos;
                }
                if (pos == digits.size()) break;
            }
            u(row, col) = total;
        }
    }
    return u;
}

Mat4 full_path_propagator_capped(const EtaTable& eta, const Mat2& k_mat, int n_steps, int lag_cap) {
    return sum_paths(n_steps, [&](const std::vector<PairState>& path) {
        return path_weight(path, eta, k_mat, lag_cap);
    });
}

// Propagator over the shifted window [1, n+1]: interior eta only, and no
// influence self-factor at the window start (it belongs to the preceding
// segment, which is what makes the 1-step window equal M^(2,1)).
Mat4 shifted_window_propagator(const EtaTable& eta, const Mat2& k_mat, int n_steps) {
    return sum_paths(n_steps, [&](const std::vector<PairState>& path) {
        const int n = static_cast<int>(path.size()) - 1;
        cplx w = 1.0;
        for (int j = 0; j < n; ++j)
            w *= g_factor(path[static_cast<std::size_t>(j + 1)], path[static_cast<std::size_t>(j)],
                          k_mat);
        for (int j1 = 1; j1 <= n; ++j1)
            for (int j2 = 0; j2 <= j1; ++j2)
                w *= f_factor(path[static_cast<std::size_t>(j1)], path[static_cast<std::size_t>(j2)],
                              eta.eta_interior[static_cast<std::size_t>(j1 - j2)]);
        return w;
    });
}

}  // namespace

Mat4 full_path_propagator(const EtaTable& eta, const Mat2& k_mat, int n_steps) {
    if (n_steps < 1 || n_steps > 10)
        throw std::out_of_range("full_path_propagator: n_steps must be in [1, 10]");
    if (eta.max_lag < n_steps) throw std::invalid_argument("full_path_propagator: eta table too short");
    return full_path_propagator_capped(eta, k_mat, n_steps, -1);
}

KernelSet deconvolve_kernels(const EtaTable& eta, const Mat2& k_mat, int dk) {
    if (dk < 1 || dk > 8) throw std::out_of_range("deconvolve_kernels: dk must be in [1, 8]");
    if (eta.max_lag < dk) throw std::invalid_argument("deconvolve_kernels: eta table too short");

    std::vector<Mat4> u(static_cast<std::size_t>(dk) + 1);       // U^(r,0)
    std::vector<Mat4> w(static_cast<std::size_t>(dk) + 1);       // shifted windows of length r
    for (int r = 1; r <= dk; ++r) {
        u[static_cast<std::size_t>(r)] = full_path_propagator_capped(eta, k_mat, r, -1);
        w[static_cast<std::size_t>(r)] = shifted_window_propagator(eta, k_mat, r);
    }

    KernelSet out;
    out.dk = dk;
    out.m_col1.resize(static_cast<std::size_t>(dk));
    // shifted family first: W^(r) = sum_j M^(r-j+1,1) W^(j) + M^(r+1,1)
    for (int r = 1; r <= dk; ++r) {
        Mat4 m = w[static_cast<std::size_t>(r)];
        for (int j = 1; j < r; ++j)
            m = m - out.m_col1[static_cast<std::size_t>(r - j - 1)] * w[static_cast<std::size_t>(j)];
        out.m_col1[static_cast<std::size_t>(r - 1)] = m;
    }
    // then the initial-column family from U^(r,0) = sum_m M^(r-m+1,1) U^(m,0) + M^(r,0)
    out.m_col0.resize(static_cast<std::size_t>(dk));
    for (int r = 1; r <= dk; ++r) {
        Mat4 m = u[static_cast<std::size_t>(r)];
        for (int j = 1; j < r; ++j)
            m = m - out.m_col1[static_cast<std::size_t>(r - j - 1)] * u[static_cast<std::size_t>(j)];
        out.m_col0[static_cast<std::size_t>(r - 1)] = m;
    }
    return out;
}

Mat4 explicit_kernel(const EtaTable& eta, const Mat2& k_mat, int k) {
    if (k != 2 && k != 3) throw std::invalid_argument("explicit_kernel: only k = 2 and k = 3");

    Mat4 m;
    if (k == 2) {
        // M^(2,0) = sum_{s1} (F^(2,0) - 1) A^(2,1) A^(1,0)
        for (int i2 = 0; i2 < 4; ++i2)
            for (int i0 = 0; i0 < 4; ++i0) {
                const PairState s2 = PairState::from_index(i2);
                const PairState s0 = PairState::from_index(i0);
                cplx acc = 0.0;
                for (int i1 = 0; i1 < 4; ++i1) {
                    const PairState s1 = PairState::from_index(i1);
                    acc += (f_factor(s2, s0, eta.lookup(2, 0)) - 1.0) *
                           a_interior(s2, s1, eta, k_mat) * a_initial(s1, s0, eta, k_mat);
                }
                m(i2, i0) = acc;
            }
        return m;
    }
    // M^(3,0) = sum_{s1,s2} [(F^(3,0)-1) F^(2,0) F^(3,1) + (F^(3,1)-1)(F^(2,0)-1)]
    //           * A^(3,2) A^(2,1) A^(1,0)
    for (int i3 = 0; i3 < 4; ++i3)
        for (int i0 = 0; i0 < 4; ++i0) {
            const PairState s3 = PairState::from_index(i3);
            const PairState s0 = PairState::from_index(i0);
            cplx acc = 0.0;
            for (int i1 = 0; i1 < 4; ++i1)
                for (int i2 = 0; i2 < 4; ++i2) {
                    const PairState s1 = PairState::from_index(i1);
                    const PairState s2 = PairState::from_index(i2);
                    const cplx f30 = f_factor(s3, s0, eta.lookup(3, 0));
                    const cplx f20 = f_factor(s2, s0, eta.lookup(2, 0));
                    const cplx f31 = f_factor(s3, s1, eta.lookup(3, 1));
                    const cplx chain = a_interior(s3, s2, eta, k_mat) *
                                       a_interior(s2, s1, eta, k_mat) *
                                       a_initial(s1, s0, eta, k_mat);
                    acc += ((f30 - 1.0) * f20 * f31 + (f31 - 1.0) * (f20 - 1.0)) * chain;
                }
            m(i3, i0) = acc;
        }
    return m;
}

DensitySeries iquapi_evolve(const EtaTable& eta, const Mat2& k_mat, int dk, const Density2& rho0,
                            int n_steps) {
    if (dk < 1 || dk > 8) throw std::out_of_range("iquapi_evolve: dk must be in [1, 8]");
    if (n_steps < 1) throw std::invalid_argument("iquapi_evolve: n_steps must be >= 1");
    if (eta.max_lag < dk) throw std::invalid_argument("iquapi_evolve: eta table too short");

    DensitySeries out;
    out.dt = eta.dt;
    out.rho.push_back(rho0);

    // Augmented tensor over the trailing history, oldest state in the highest
    // base-4 digit, newest in the lowest. The tensor grows until it spans dk
    // pair states, after which the oldest state is summed out each step.
    const Vec4 v0 = density_to_vec(rho0);
    std::vector<cplx> amp(4);
    for (int i = 0; i < 4; ++i) {
        const PairState s0 = PairState::from_index(i);
        amp[static_cast<std::size_t>(i)] =
            v0[i] * f_factor(s0, s0, eta.eta_initial[0]);  // F^(0,0)
    }
    int hist = 1;  // pair states currently in the tensor

    for (int step = 1; step <= n_steps; ++step) {
        const bool building = hist < dk;  // window not yet full
        const std::size_t new_hist = static_cast<std::size_t>(building ? hist + 1 : hist);
        std::vector<cplx> next(std::size_t{1} << (2 * new_hist), cplx{0.0});
        for (std::size_t key = 0; key < amp.size(); ++key) {
            const cplx v = amp[key];
            if (v == cplx{0.0}) continue;
            const PairState last = PairState::from_index(static_cast<int>(key & 3));
            for (int inew = 0; inew < 4; ++inew) {
                const PairState snew = PairState::from_index(inew);
                cplx wgt = g_factor(snew, last, k_mat) *
                           f_factor(snew, snew, eta.eta_interior[0]);
                // pairs (step, step - d) for d = 1..min(dk, step)
                const int reach = std::min(dk, step);
                for (int d = 1; d <= reach; ++d) {
                    const int idx = static_cast<int>((key >> (2 * (d - 1))) & 3);
                    const PairState sj = PairState::from_index(idx);
                    const cplx e = (step - d == 0) ? eta.eta_initial[static_cast<std::size_t>(step)]
                                                   : eta.eta_interior[static_cast<std::size_t>(d)];
                    wgt *= f_factor(snew, sj, e);
                }
                std::size_t nkey = (key << 2) | static_cast<std::size_t>(inew);
                if (!building) nkey &= (std::size_t{1} << (2 * hist)) - 1;  // drop the oldest
                next[nkey] += v * wgt;
            }
        }
        amp = std::move(next);
        hist = static_cast<int>(new_hist);

        Vec4 v;
        for (std::size_t key = 0; key < amp.size(); ++key) v[static_cast<int>(key & 3)] += amp[key];
        out.rho.push_back(vec_to_density(v));
    }

    out.sigma_z.reserve(out.rho.size());
    for (const Density2& r : out.rho) out.sigma_z.push_back(sigma_z_expectation(r));
    return out;
}

}  // namespace smatpi
