// Reduced-density propagation from a kernel set via the convolution
// identities, plus the observables read off the evolved density matrices.

#pragma once

#include <vector>

#include "smatpi/kernels.hpp"
#include "smatpi/matrices.hpp"

namespace smatpi {

// 2x2 reduced density matrix over {|+1>, |-1>}.
using Density2 = Mat2;

struct DensitySeries {
    double dt = 0.0;
    std::vector<Density2> rho;      // at t = 0, dt, ..., n dt
    std::vector<double> sigma_z;    // <sigma_z>(t), same indexing

    int n_steps() const { return static_cast<int>(rho.size()) - 1; }
};

// U^(r,0) for r = 1..n_steps: the full convolution with the M^(r,0) tail for
// r <= dk, and the dk-term convolution with the shifted family beyond.
std::vector<Mat4> propagate_reduced(const KernelSet& kernels, int n_steps);

// Apply each U^(r,0) to the vectorized initial state. rho0 must be Hermitian
// with unit trace.
DensitySeries evolve_density(const std::vector<Mat4>& u_seq, const Density2& rho0, double dt);

// Re(rho_{+1,+1} - rho_{-1,-1}).
double sigma_z_expectation(const Density2& rho);

// Vectorization tied to the pair-state dense index.
Vec4 density_to_vec(const Density2& rho);
Density2 vec_to_density(const Vec4& v);

Density2 density_up();     // |+1><+1|
Density2 density_down();   // |-1><-1|
Density2 density_mixed();  // I/2

}  // namespace smatpi
