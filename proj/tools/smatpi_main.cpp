// Batch front end: reads a key=value config, dispatches one subcommand and
// writes CSV artifacts into the output directory.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smatpi/config.hpp"
#include "smatpi/csv.hpp"
#include "smatpi/combinatorics.hpp"
#include "smatpi/dynamics.hpp"
#include "smatpi/oracles.hpp"

namespace {

using namespace smatpi;

Density2 initial_density(InitialState s) {
    switch (s) {
        case InitialState::up: return density_up();
        case InitialState::down: return density_down();
        case InitialState::mixed: break;
    }
    return density_mixed();
}

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const std::filesystem::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

EtaTable build_eta(const RunConfig& cfg, int max_lag) {
    const auto modes = discretize_bath(cfg.bath);
    return compute_eta(modes, cfg.bath.beta, cfg.dt, max_lag);
}

void write_density_csv(std::ofstream& out, const DensitySeries& series) {
    out << "step,t,re_rho_pp,im_rho_pp,re_rho_pm,im_rho_pm,re_rho_mp,im_rho_mp,"
           "re_rho_mm,im_rho_mm,sigma_z\n";
    for (std::size_t r = 0; r < series.rho.size(); ++r) {
        const Density2& rho = series.rho[r];
        out << r << ',' << csv_num(static_cast<double>(r) * series.dt) << ','
            << csv_num(rho(0, 0).real()) << ',' << csv_num(rho(0, 0).imag()) << ','
            << csv_num(rho(0, 1).real()) << ',' << csv_num(rho(0, 1).imag()) << ','
            << csv_num(rho(1, 0).real()) << ',' << csv_num(rho(1, 0).imag()) << ','
            << csv_num(rho(1, 1).real()) << ',' << csv_num(rho(1, 1).imag()) << ','
            << csv_num(series.sigma_z[r]) << '\n';
    }
}

int cmd_kernels(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    const EtaTable eta = build_eta(cfg, cfg.dk + 1);
    const Mat2 k_mat = system_propagator(cfg.system, cfg.dt);
    const KernelSet kernels = compute_kernels(eta, k_mat, cfg.dk, nullptr, cfg.threads);

    auto out = open_output(out_dir, "kernels.csv");
    out << "family,k,row,col,re,im\n";
    for (int k = 1; k <= cfg.dk; ++k)
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                const cplx v = kernels.m_col0[static_cast<std::size_t>(k - 1)](r, c);
                out << "col0," << k << ',' << r << ',' << c << ',' << csv_num(v.real()) << ','
                    << csv_num(v.imag()) << '\n';
            }
    for (int k = 1; k <= cfg.dk; ++k)
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                const cplx v = kernels.m_col1[static_cast<std::size_t>(k - 1)](r, c);
                out << "col1," << k << ',' << r << ',' << c << ',' << csv_num(v.real()) << ','
                    << csv_num(v.imag()) << '\n';
            }
    return 0;
}

int cmd_evolve(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    const Mat2 k_mat = system_propagator(cfg.system, cfg.dt);
    const Density2 rho0 = initial_density(cfg.rho0);
    DensitySeries series;

    if (cfg.method == Method::tsmatpi) {
        const EtaTable eta = build_eta(cfg, cfg.dk + 1);
        const KernelSet kernels = compute_kernels(eta, k_mat, cfg.dk, nullptr, cfg.threads);
        series = evolve_density(propagate_reduced(kernels, cfg.n_steps), rho0, cfg.dt);
    } else if (cfg.method == Method::iquapi) {
        const EtaTable eta = build_eta(cfg, std::max(cfg.dk, 1));
        series = iquapi_evolve(eta, k_mat, cfg.dk, rho0, cfg.n_steps);
    } else {
        if (cfg.n_steps > 10)
            throw std::invalid_argument("config: key 'n_steps' exceeds the fullsum cap of 10");
        const EtaTable eta = build_eta(cfg, cfg.n_steps);
        std::vector<Mat4> u;
        for (int r = 1; r <= cfg.n_steps; ++r) u.push_back(full_path_propagator(eta, k_mat, r));
        series = evolve_density(u, rho0, cfg.dt);
    }

    auto out = open_output(out_dir, "evolve.csv");
    write_density_csv(out, series);
    return 0;
}

int cmd_bath_info(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    const auto modes = discretize_bath(cfg.bath);
    auto mout = open_output(out_dir, "modes.csv");
    mout << "j,omega,c\n";
    for (std::size_t j = 0; j < modes.size(); ++j)
        mout << (j + 1) << ',' << csv_num(modes[j].omega) << ',' << csv_num(modes[j].c) << '\n';

    const EtaTable eta = build_eta(cfg, cfg.dk + 1);
    auto eout = open_output(out_dir, "eta.csv");
    eout << "d,re_eta_init,im_eta_init,re_eta_int,im_eta_int\n";
    for (int d = 0; d <= eta.max_lag; ++d) {
        const cplx ei = eta.eta_initial[static_cast<std::size_t>(d)];
        const cplx et = eta.eta_interior[static_cast<std::size_t>(d)];
        eout << d << ',' << csv_num(ei.real()) << ',' << csv_num(ei.imag()) << ','
             << csv_num(et.real()) << ',' << csv_num(et.imag()) << '\n';
    }
    return 0;
}

int cmd_validate(const RunConfig& cfg, const std::filesystem::path& out_dir) {
    if (cfg.dk > 8)
        throw std::invalid_argument("config: key 'dk' exceeds the oracle cap of 8 required by validate");

    const auto modes = discretize_bath(cfg.bath);
    const EtaTable eta = compute_eta(modes, cfg.bath.beta, cfg.dt, cfg.dk + 1);
    const Mat2 k_mat = system_propagator(cfg.system, cfg.dt);

    struct Check {
        std::string name;
        double err;
        double tol;
    };
    std::vector<Check> checks;

    {
        double err = 0.0;
        const int top = std::min(cfg.dk + 1, 6);
        for (int j1 = 0; j1 <= top; ++j1)
            for (int j2 = 0; j2 <= j1; ++j2) {
                const cplx closed = eta.lookup(j1, j2);
                const cplx quad = eta_quadrature_oracle(modes, cfg.bath.beta, cfg.dt, j1, j2);
                const double scale = std::max(1e-30, std::abs(quad));
                err = std::max(err, std::abs(closed - quad) / scale);
            }
        checks.push_back({"eta closed form vs quadrature (relative)", err, 1e-10});
    }

    const KernelSet fast = compute_kernels(eta, k_mat, cfg.dk, nullptr, cfg.threads);
    {
        const KernelSet slow = deconvolve_kernels(eta, k_mat, cfg.dk);
        double err = 0.0;
        for (int k = 0; k < cfg.dk; ++k) {
            err = std::max(err, max_abs_diff(fast.m_col0[static_cast<std::size_t>(k)],
                                             slow.m_col0[static_cast<std::size_t>(k)]));
            err = std::max(err, max_abs_diff(fast.m_col1[static_cast<std::size_t>(k)],
                                             slow.m_col1[static_cast<std::size_t>(k)]));
        }
        checks.push_back({"kernels: traversal vs deconvolution", err, 1e-12});
    }
    if (cfg.dk >= 3) {
        double err = std::max(max_abs_diff(fast.m_col0[1], explicit_kernel(eta, k_mat, 2)),
                              max_abs_diff(fast.m_col0[2], explicit_kernel(eta, k_mat, 3)));
        checks.push_back({"kernels: traversal vs explicit k=2,3", err, 1e-13});
    }
    {
        const auto u_fast = propagate_reduced(fast, cfg.dk);
        double err = 0.0;
        for (int r = 1; r <= cfg.dk; ++r)
            err = std::max(err, max_abs_diff(u_fast[static_cast<std::size_t>(r - 1)],
                                             full_path_propagator(eta, k_mat, r)));
        checks.push_back({"propagator: kernels vs full path sum", err, 1e-12});
    }
    {
        const Density2 rho0 = initial_density(cfg.rho0);
        const DensitySeries iq = iquapi_evolve(eta, k_mat, cfg.dk, rho0, cfg.dk);
        std::vector<Mat4> u;
        for (int r = 1; r <= cfg.dk; ++r) u.push_back(full_path_propagator(eta, k_mat, r));
        const DensitySeries full = evolve_density(u, rho0, cfg.dt);
        double err = 0.0;
        for (std::size_t r = 0; r < full.rho.size(); ++r)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    err = std::max(err, std::abs(full.rho[r](i, j) - iq.rho[r](i, j)));
        checks.push_back({"iquapi (untruncated range) vs full path sum", err, 1e-12});
    }

    auto out = open_output(out_dir, "validate.csv");
    out << "check,max_abs_error,tolerance,status\n";
    bool all_ok = true;
    for (const Check& c : checks) {
        const bool ok = c.err <= c.tol;
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << c.name << ": max error " << csv_num(c.err)
                  << " (tol " << csv_num(c.tol) << ")\n";
        out << '"' << c.name << "\"," << csv_num(c.err) << ',' << csv_num(c.tol) << ','
            << (ok ? "pass" : "fail") << '\n';
    }
    return all_ok ? 0 : 1;
}

int cmd_bench(const RunConfig& cfg, const std::filesystem::path& out_dir, int dk_min, int dk_max) {
    if (dk_min < 1 || dk_max > 14 || dk_min > dk_max)
        throw std::invalid_argument("bench: need 1 <= dk-min <= dk-max <= 14");

    const EtaTable eta = build_eta(cfg, dk_max + 1);
    const Mat2 k_mat = system_propagator(cfg.system, cfg.dt);

    auto out = open_output(out_dir, "bench.csv");
    out << "dk,wall_ns,node_count,model_cost\n";
    std::cout << "dk,wall_ns,node_count,model_cost\n";
    for (int dk = dk_min; dk <= dk_max; ++dk) {
        TraversalStats stats;
        const auto t0 = std::chrono::steady_clock::now();
        compute_kernels(eta, k_mat, dk, &stats, cfg.threads);
        const auto t1 = std::chrono::steady_clock::now();
        const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
        const std::uint64_t node_count = stats.node_visits_col0 + stats.node_visits_col1;
        const std::uint64_t model = tsmatpi_cost_model(dk);
        out << dk << ',' << ns << ',' << node_count << ',' << model << '\n';
        std::cout << dk << ',' << ns << ',' << node_count << ',' << model << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"small-matrix path-integral engine for the spin-boson model"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    int threads = 0;
    int dk_min = 6;
    int dk_max = 12;

    app.add_option("config", config_path, "key=value config file (defaults when omitted)");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--threads", threads, "worker threads for the kernel traversal");

    CLI::App* kernels = app.add_subcommand("kernels", "write the memory-kernel matrices as CSV");
    CLI::App* evolve = app.add_subcommand("evolve", "propagate the reduced density matrix");
    CLI::App* validate = app.add_subcommand("validate", "run all oracle cross-checks");
    CLI::App* bench = app.add_subcommand("bench", "time the kernel construction over a dk range");
    CLI::App* bath_info = app.add_subcommand("bath-info", "dump bath modes and the eta table");
    for (CLI::App* sub : {kernels, evolve, validate, bench, bath_info}) sub->fallthrough();
    bench->add_option("--dk-min", dk_min, "smallest memory length")->capture_default_str();
    bench->add_option("--dk-max", dk_max, "largest memory length")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config_file(config_path);
        if (threads > 0) cfg.threads = threads;
        cfg.validate();

        if (kernels->parsed()) return cmd_kernels(cfg, out_dir);
        if (evolve->parsed()) return cmd_evolve(cfg, out_dir);
        if (validate->parsed()) return cmd_validate(cfg, out_dir);
        if (bench->parsed()) return cmd_bench(cfg, out_dir, dk_min, dk_max);
        if (bath_info->parsed()) return cmd_bath_info(cfg, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
