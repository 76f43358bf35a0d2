#include "smatpi/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace smatpi {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: malformed number for key '" + key + "': " + value);
    }
    if (pos != value.size())
        throw std::invalid_argument("config: malformed number for key '" + key + "': " + value);
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw std::invalid_argument("config: key '" + key + "' must be an integer: " + value);
    return i;
}

}  // namespace

void RunConfig::validate() const {
    bath.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("config: key 'dt' must be > 0");
    if (n_steps < 1) throw std::invalid_argument("config: key 'n_steps' must be >= 1");
    if (threads < 1) throw std::invalid_argument("config: key 'threads' must be >= 1");
    if (dk < 1) throw std::invalid_argument("config: key 'dk' must be >= 1");
    if (method == Method::tsmatpi) {
        if (dk > 14) throw std::invalid_argument("config: key 'dk' exceeds the tsmatpi cap of 14");
    } else if (dk > 8) {
        throw std::invalid_argument("config: key 'dk' exceeds the oracle cap of 8");
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key=value, got: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "epsilon")
            cfg.system.epsilon = parse_double(key, value);
        else if (key == "delta")
            cfg.system.delta = parse_double(key, value);
        else if (key == "xi")
            cfg.bath.xi = parse_double(key, value);
        else if (key == "omega_c")
            cfg.bath.omega_c = parse_double(key, value);
        else if (key == "omega_max")
            cfg.bath.omega_max = parse_double(key, value);
        else if (key == "n_modes")
            cfg.bath.n_modes = parse_int(key, value);
        else if (key == "beta")
            cfg.bath.beta = parse_double(key, value);
        else if (key == "dt")
            cfg.dt = parse_double(key, value);
        else if (key == "dk")
            cfg.dk = parse_int(key, value);
        else if (key == "n_steps")
            cfg.n_steps = parse_int(key, value);
        else if (key == "threads")
            cfg.threads = parse_int(key, value);
        else if (key == "rho0") {
            if (value == "up")
                cfg.rho0 = InitialState::up;
            else if (value == "down")
                cfg.rho0 = InitialState::down;
            else if (value == "mixed")
                cfg.rho0 = InitialState::mixed;
            else
                throw std::invalid_argument("config: key 'rho0' must be up, down or mixed: " + value);
        } else if (key == "method") {
            if (value == "tsmatpi")
                cfg.method = Method::tsmatpi;
            else if (value == "iquapi")
                cfg.method = Method::iquapi;
            else if (value == "fullsum")
                cfg.method = Method::fullsum;
            else
                throw std::invalid_argument("config: key 'method' must be tsmatpi, iquapi or fullsum: " +
                                            value);
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace smatpi
