// Brute-force reference implementations used to validate the fast kernel
// construction: full path summation, kernel deconvolution from propagators,
// direct transcriptions of the small-k kernel formulas, and the iterative
// augmented-tensor evolution. Desk scale only; every routine here trades
// speed for independence from the traversal code.

#pragma once

#include "smatpi/dynamics.hpp"
#include "smatpi/kernels.hpp"

namespace smatpi {

// U^(N,0) by exact summation over all interior paths (row = s_N, col = s_0).
// Requires 1 <= n_steps <= 10.
Mat4 full_path_propagator(const EtaTable& eta, const Mat2& k_mat, int n_steps);

// Kernels recovered by solving the convolution identities for propagators
// built by full path summation. Requires 1 <= dk <= 8.
KernelSet deconvolve_kernels(const EtaTable& eta, const Mat2& k_mat, int dk);

// Direct transcription of the closed formulas for M^(2,0) and M^(3,0).
Mat4 explicit_kernel(const EtaTable& eta, const Mat2& k_mat, int k);

// Iterative evolution of the augmented tensor over the last dk pair states,
// keeping influence factors with lag <= dk. Requires 1 <= dk <= 8.
DensitySeries iquapi_evolve(const EtaTable& eta, const Mat2& k_mat, int dk, const Density2& rho0,
                            int n_steps);

}  // namespace smatpi
