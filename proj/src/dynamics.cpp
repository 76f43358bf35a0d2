#include "smatpi/dynamics.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace smatpi {

std::vector<Mat4> propagate_reduced(const KernelSet& kernels, int n_steps) {
    if (n_steps < 1) throw std::invalid_argument("propagate_reduced: n_steps must be >= 1");
    const int dk = kernels.dk;
    std::vector<Mat4> u;
    u.reserve(static_cast<std::size_t>(n_steps) + 1);
    u.push_back(Mat4::identity());  // U^(0,0)
    for (int r = 1; r <= n_steps; ++r) {
        Mat4 next;
        if (r <= dk) {
            next = kernels.m_col0[static_cast<std::size_t>(r - 1)];
            for (int m = 1; m < r; ++m)
                next += kernels.m_col1[static_cast<std::size_t>(r - m - 1)] * u[static_cast<std::size_t>(m)];
        } else {
            for (int m = 1; m <= dk; ++m)
                next += kernels.m_col1[static_cast<std::size_t>(m - 1)] * u[static_cast<std::size_t>(r - m)];
        }
        u.push_back(next);
    }
    u.erase(u.begin());
    return u;
}

DensitySeries evolve_density(const std::vector<Mat4>& u_seq, const Density2& rho0, double dt) {
    const double trace_err = std::abs(rho0(0, 0) + rho0(1, 1) - 1.0);
    if (trace_err > 1e-10) throw std::invalid_argument("evolve_density: rho0 must have unit trace");

    DensitySeries out;
    out.dt = dt;
    out.rho.reserve(u_seq.size() + 1);
    out.rho.push_back(rho0);
    const Vec4 v0 = density_to_vec(rho0);
    for (const Mat4& u : u_seq) out.rho.push_back(vec_to_density(u * v0));
    out.sigma_z.reserve(out.rho.size());
    for (const Density2& r : out.rho) out.sigma_z.push_back(sigma_z_expectation(r));
    return out;
}

double sigma_z_expectation(const Density2& rho) {
    const cplx val = rho(0, 0) - rho(1, 1);
    if (std::abs(val.imag()) > 1e-10)
        std::cerr << "sigma_z_expectation: imaginary residual " << val.imag() << "\n";
    return val.real();
}

Vec4 density_to_vec(const Density2& rho) {
    // dense pair index: (s+, s-) -> ((s+ + 1)/2)*2 + ((s- + 1)/2); |+1> is row 0
    Vec4 v;
    v[3] = rho(0, 0);  // (+1, +1)
    v[2] = rho(0, 1);  // (+1, -1)
    v[1] = rho(1, 0);  // (-1, +1)
    v[0] = rho(1, 1);  // (-1, -1)
    return v;
}

Density2 vec_to_density(const Vec4& v) {
    Density2 rho;
    rho(0, 0) = v[3];
    rho(0, 1) = v[2];
    rho(1, 0) = v[1];
    rho(1, 1) = v[0];
    return rho;
}

Density2 density_up() {
    Density2 r;
    r(0, 0) = 1.0;
    return r;
}

Density2 density_down() {
    Density2 r;
    r(1, 1) = 1.0;
    return r;
}

Density2 density_mixed() {
    Density2 r;
    r(0, 0) = 0.5;
    r(1, 1) = 0.5;
    return r;
}

}  // namespace smatpi
