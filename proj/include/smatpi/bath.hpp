// Ohmic bath discretization and the influence-functional coefficient table.
//
// The discrete spectral density J(w) = (pi/2) sum_j c_j^2/w_j delta(w - w_j)
// makes the bath autocorrelation a finite sum over modes, so each eta entry
// (a double time integral of C over a pair of time cells) has a closed form
// built from trigonometric antiderivatives.

#pragma once

#include <vector>

#include "smatpi/matrices.hpp"

namespace smatpi {

struct BathConfig {
    double xi = 0.2;         // dimensionless coupling intensity
    double omega_c = 2.5;    // cutoff frequency
    double omega_max = 10.0; // hard maximum frequency
    int n_modes = 400;       // number of harmonic oscillators L
    double beta = 5.0;       // inverse temperature

    void validate() const;
};

struct BathMode {
    double omega;  // frequency, strictly increasing in the mode index
    double c;      // coupling intensity
};

// Influence coefficients indexed by time-cell pairs. The time axis is split
// into cell(0) = [0, dt/2] and cell(j) = [j dt - dt/2, j dt + dt/2] for j >= 1,
// so entries with second index 0 form their own family while all interior
// entries depend only on the lag j1 - j2.
struct EtaTable {
    double dt = 0.0;
    int max_lag = 0;
    std::vector<cplx> eta_initial;   // eta_{d,0}, d = 0..max_lag
    std::vector<cplx> eta_interior;  // eta(d) for j2 >= 1, d = j1 - j2 = 0..max_lag

    cplx lookup(int j1, int j2) const {
        return j2 == 0 ? eta_initial[static_cast<std::size_t>(j1)]
                       : eta_interior[static_cast<std::size_t>(j1 - j2)];
    }
};

// Logarithmic discretization:
//   w_j = -w_c ln(1 - (j/L)(1 - exp(-w_max/w_c))),  c_j = w_j sqrt((xi w_c / L)(1 - exp(-w_max/w_c))).
std::vector<BathMode> discretize_bath(const BathConfig& cfg);

// C(t) = sum_j (c_j^2 / 2 w_j) [coth(beta w_j / 2) cos(w_j t) - i sin(w_j t)].
cplx bath_correlation(const std::vector<BathMode>& modes, double beta, double t);

// Closed-form per-mode cell integrals of C(t - t').
EtaTable compute_eta(const std::vector<BathMode>& modes, double beta, double dt, int max_lag);

// Same double integral by adaptive quadrature (tolerance 1e-12), implemented
// independently of compute_eta. Requires j1 >= j2 >= 0; throws on non-convergence.
cplx eta_quadrature_oracle(const std::vector<BathMode>& modes, double beta, double dt, int j1, int j2);

}  // namespace smatpi
