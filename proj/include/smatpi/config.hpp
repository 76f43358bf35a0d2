// Run configuration: plain key=value text, defaults matching the validated
// physical setting. Fully deterministic; there is no seed anywhere.

#pragma once

#include <string>

#include "smatpi/bath.hpp"
#include "smatpi/influence.hpp"

namespace smatpi {

enum class InitialState { up, down, mixed };
enum class Method { tsmatpi, iquapi, fullsum };

struct RunConfig {
    SystemParams system;      // epsilon = 1, delta = 1
    BathConfig bath;          // xi = 0.2, omega_c = 2.5, omega_max = 10, L = 400, beta = 5
    double dt = 0.1;
    int dk = 10;
    int n_steps = 100;
    InitialState rho0 = InitialState::up;
    Method method = Method::tsmatpi;
    int threads = 1;

    void validate() const;
};

// Keys: epsilon, delta, xi, omega_c, omega_max, n_modes, beta, dt, dk, n_steps,
// rho0 (up|down|mixed), method (tsmatpi|iquapi|fullsum), threads.
// Unknown keys, malformed numbers and out-of-range values are errors naming the key.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

}  // namespace smatpi
