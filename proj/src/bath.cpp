#include "smatpi/bath.hpp"

#include <cmath>
#include <stdexcept>

namespace smatpi {

namespace {

// coth(x) for x > 0 without overflow at large x.
double coth_stable(double x) {
    if (x > 350.0) return 1.0;
    return 1.0 + 2.0 / std::expm1(2.0 * x);
}

struct Cell {
    double lo;
    double hi;
};

Cell cell_of(int j, double dt) {
    if (j == 0) return {0.0, 0.5 * dt};
    return {j * dt - 0.5 * dt, j * dt + 0.5 * dt};
}

// int_{p}^{q} int_{r}^{s} cos(w (t - t')) dt' dt for disjoint intervals [r,s] < [p,q].
double icos_rect(double w, double p, double q, double r, double s) {
    return (std::cos(w * (p - r)) - std::cos(w * (q - r)) + std::cos(w * (q - s)) -
            std::cos(w * (p - s))) /
           (w * w);
}

double isin_rect(double w, double p, double q, double r, double s) {
    return (std::sin(w * (q - s)) - std::sin(w * (p - s)) - std::sin(w * (q - r)) +
            std::sin(w * (p - r))) /
           (w * w);
}

// Same integrals over the ordered triangle t > t' within one cell of width T.
double icos_tri(double w, double T) { return (1.0 - std::cos(w * T)) / (w * w); }

double isin_tri(double w, double T) { return (T - std::sin(w * T) / w) / w; }

cplx eta_pair(const std::vector<BathMode>& modes, double beta, const Cell& c1, const Cell& c2,
              bool diagonal) {
    double re = 0.0;
    double im = 0.0;
    for (const BathMode& m : modes) {
        const double amp = m.c * m.c / (2.0 * m.omega);
        const double coth = coth_stable(0.5 * beta * m.omega);
        if (diagonal) {
            const double T = c1.hi - c1.lo;
            re += amp * coth * icos_tri(m.omega, T);
            im -= amp * isin_tri(m.omega, T);
        } else {
            re += amp * coth * icos_rect(m.omega, c1.lo, c1.hi, c2.lo, c2.hi);
            im -= amp * isin_rect(m.omega, c1.lo, c1.hi, c2.lo, c2.hi);
        }
    }
    return {re, im};
}

}  // namespace

void BathConfig::validate() const {
    if (!(xi >= 0.0)) throw std::invalid_argument("bath: xi must be >= 0");
    if (!(omega_c > 0.0)) throw std::invalid_argument("bath: omega_c must be > 0");
    if (!(omega_max > 0.0)) throw std::invalid_argument("bath: omega_max must be > 0");
    if (n_modes < 1) throw std::invalid_argument("bath: n_modes must be >= 1");
    if (!(beta > 0.0)) throw std::invalid_argument("bath: beta must be > 0");
}

std::vector<BathMode> discretize_bath(const BathConfig& cfg) {
    cfg.validate();
    const double span = 1.0 - std::exp(-cfg.omega_max / cfg.omega_c);
    const double cscale = std::sqrt(cfg.xi * cfg.omega_c / cfg.n_modes * span);
    std::vector<BathMode> modes;
    modes.reserve(static_cast<std::size_t>(cfg.n_modes));
    for (int j = 1; j <= cfg.n_modes; ++j) {
        const double omega = -cfg.omega_c * std::log1p(-(static_cast<double>(j) / cfg.n_modes) * span);
        modes.push_back({omega, omega * cscale});
    }
    return modes;
}

cplx bath_correlation(const std::vector<BathMode>& modes, double beta, double t) {
    double re = 0.0;
    double im = 0.0;
    for (const BathMode& m : modes) {
        const double amp = m.c * m.c / (2.0 * m.omega);
        re += amp * coth_stable(0.5 * beta * m.omega) * std::cos(m.omega * t);
        im -= amp * std::sin(m.omega * t);
    }
    return {re, im};
}

EtaTable compute_eta(const std::vector<BathMode>& modes, double beta, double dt, int max_lag) {
    if (!(dt > 0.0)) throw std::invalid_argument("compute_eta: dt must be > 0");
    if (max_lag < 1) throw std::invalid_argument("compute_eta: max_lag must be >= 1");

    EtaTable table;
    table.dt = dt;
    table.max_lag = max_lag;
    table.eta_initial.resize(static_cast<std::size_t>(max_lag) + 1);
    table.eta_interior.resize(static_cast<std::size_t>(max_lag) + 1);

    const Cell c0 = cell_of(0, dt);
    table.eta_initial[0] = eta_pair(modes, beta, c0, c0, true);
    for (int d = 1; d <= max_lag; ++d)
        table.eta_initial[static_cast<std::size_t>(d)] = eta_pair(modes, beta, cell_of(d, dt), c0, false);

    const Cell c1 = cell_of(1, dt);
    table.eta_interior[0] = eta_pair(modes, beta, c1, c1, true);
    for (int d = 1; d <= max_lag; ++d)
        table.eta_interior[static_cast<std::size_t>(d)] =
            eta_pair(modes, beta, cell_of(1 + d, dt), c1, false);

    return table;
}

namespace {

// Adaptive Simpson over a complex-valued integrand.
template <typename F>
cplx simpson_rec(const F& f, double a, double b, cplx fa, cplx fm, cplx fb, cplx whole, double tol,
                 int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const cplx flm = f(lm);
    const cplx frm = f(rm);
    const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const cplx delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0) throw std::runtime_error("eta_quadrature_oracle: quadrature did not converge");
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
cplx adaptive_simpson(const F& f, double a, double b, double tol) {
    const cplx fa = f(a);
    const cplx fb = f(b);
    const cplx fm = f(0.5 * (a + b));
    const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

cplx eta_quadrature_oracle(const std::vector<BathMode>& modes, double beta, double dt, int j1,
                           int j2) {
    if (!(dt > 0.0)) throw std::invalid_argument("eta_quadrature_oracle: dt must be > 0");
    if (j2 < 0 || j1 < j2) throw std::invalid_argument("eta_quadrature_oracle: need j1 >= j2 >= 0");

    const Cell outer = cell_of(j1, dt);
    const Cell inner = cell_of(j2, dt);
    const double tol = 1e-12;

    if (j1 != j2) {
        auto f = [&](double t) {
            return adaptive_simpson(
                [&](double tp) { return bath_correlation(modes, beta, t - tp); }, inner.lo,
                inner.hi, tol);
        };
        return adaptive_simpson(f, outer.lo, outer.hi, tol);
    }
    // Diagonal entry: integrate over t' < t inside one cell.
    auto f = [&](double t) {
        if (t <= outer.lo) return cplx{0.0, 0.0};
        return adaptive_simpson([&](double tp) { return bath_correlation(modes, beta, t - tp); },
                                outer.lo, t, tol);
    };
    return adaptive_simpson(f, outer.lo, outer.hi, tol);
}

}  // namespace smatpi
