// hhg: dipole, spectra, first- and second-order correlations of harmonic light.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hhgq/cache.hpp"
#include "hhgq/coherence.hpp"
#include "hhgq/config.hpp"
#include "hhgq/dipole.hpp"
#include "hhgq/g2.hpp"
#include "hhgq/io.hpp"
#include "hhgq/manyatom.hpp"
#include "hhgq/spectrum.hpp"

namespace fs = std::filesystem;
using namespace hhgq;

namespace {

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<int> q;
    std::optional<std::int64_t> n_atoms;
    bool brute_force = false;
    bool no_cache = false;
    unsigned threads = 0;
    std::vector<double> slices;
    std::vector<std::int64_t> n_list;
};

class Run {
public:
    Run(std::string command, const Options& o) : opt_(o)
    {
        manifest_.command = std::move(command);
        if (!o.config_path.empty()) config_ = load_config(o.config_path);
        if (o.q) config_.q = *o.q;
        if (o.n_atoms) config_.n_atoms = *o.n_atoms;
        validate(config_);
        policy_.threads = o.threads;
        manifest_.config = config_;
        manifest_.threads = policy_.resolved();
        cache_.enabled = !o.no_cache;
    }

    const RunConfig& config() const { return config_; }
    const ExecPolicy& policy() const { return policy_; }
    double period() const { return 2.0 * pi / config_.omega_l; }

    template <typename F>
    auto stage(const std::string& name, F&& f)
    {
        const auto start = std::chrono::steady_clock::now();
        auto result = f();
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        manifest_.timings.push_back({name, dt.count()});
        std::fprintf(stderr, "[hhg] %-12s %8.2f s\n", name.c_str(), dt.count());
        return result;
    }

    DipoleRecord dipole(const Grid1D& time, const Grid1D& momentum)
    {
        return stage("dipole", [&] {
            CacheReport r;
            auto d = cached_dipole(config_, time, momentum, cache_, policy_, &r);
            manifest_.cache.push_back({"dipole", hex(r.key), r.hit});
            return d;
        });
    }

    TransitionTable table(const Grid1D& momentum, const Grid1D& time)
    {
        return stage("table", [&] {
            CacheReport r;
            auto t = cached_table(config_, momentum, time, cache_, policy_, &r);
            manifest_.cache.push_back({"table", hex(r.key), r.hit});
            return t;
        });
    }

    void write(const std::string& name, const std::string& text)
    {
        const fs::path p = fs::path(opt_.out_dir) / name;
        guard_.add(p);
        write_text_file(p, text);
        manifest_.outputs.push_back(name);
    }

    void finish()
    {
        const std::string name = "manifest_" + manifest_.command + ".json";
        manifest_.outputs.push_back(name);
        const fs::path p = fs::path(opt_.out_dir) / name;
        guard_.add(p);
        write_text_file(p, manifest_.to_json());
        guard_.commit();
    }

private:
    Options opt_;
    RunConfig config_;
    ExecPolicy policy_;
    CacheOptions cache_;
    RunManifest manifest_;
    OutputGuard guard_;
};

void cmd_dipole(const Options& o)
{
    Run run("dipole", o);
    const auto& c = run.config();
    const auto d = run.dipole(default_time_grid(c), momentum_grid(c.p_lim, c.n_els));
    run.write("dipole.csv", to_csv(dipole_csv(d)));
    run.finish();
}

void cmd_spectrum(const Options& o)
{
    Run run("spectrum", o);
    const auto& c = run.config();
    const auto d = run.dipole(default_time_grid(c), momentum_grid(c.p_lim, c.n_els));
    const auto s = run.stage("spectrum", [&] { return compute_spectrum(d, c, run.policy(), o.slices); });
    run.write("spectrum.csv", to_csv(spectrum_csv(s)));
    run.write("spectrum.dat", plot_text(spectrum_plot(s)));
    run.write("spectrum.svg", plot_svg(spectrum_plot(s)));
    if (!s.slices.empty()) {
        CsvTable t;
        t.header.push_back("harmonic_order");
        for (double v : s.slice_momenta) t.header.push_back("v=" + format_number(v));
        for (std::size_t k = 0; k < s.order.size(); ++k) {
            std::vector<double> row{s.order[k]};
            for (const auto& sl : s.slices) row.push_back(sl[k]);
            t.rows.push_back(std::move(row));
        }
        run.write("spectrum_slices.csv", to_csv(t));
    }
    const auto sc = scattered_field_time(d, c);
    CsvTable f{{"t", "re_field", "im_field"}, {}};
    for (std::size_t i = 0; i < sc.time.size(); ++i) f.rows.push_back({sc.time[i], sc.field[i].real(), sc.field[i].imag()});
    run.write("scattered_field.csv", to_csv(f));
    run.finish();
}

void cmd_g1(const Options& o)
{
    Run run("g1", o);
    const auto& c = run.config();
    const auto d = run.dipole(default_time_grid(c), momentum_grid(c.p_lim, c.n_els));
    const auto s = run.stage("g1", [&] { return compute_g1(d, c, run.policy()); });
    const auto many = g1_many(s.coh.front().real(), s.inc.front().real(), c.n_atoms);
    CsvTable t = g1_csv(s, run.period());
    run.write("g1.csv", to_csv(t));
    CsvTable m{{"n_atoms", "g1_coh", "g1_inc"}, {{static_cast<double>(c.n_atoms), many.coherent, many.incoherent}}};
    run.write("g1_many.csv", to_csv(m));
    run.finish();
}

struct G2Setup {
    G2Grid grid;
    DipoleRecord dipole;
    TransitionTable table;
};

G2Setup g2_setup(Run& run, bool brute_force)
{
    const auto in = g2_inputs(run.config());
    if (brute_force) {
        const double cost = brute_force_cost(in.momentum.n, in.grid.ref, in.grid.offsets);
        if (cost > brute_force_cost_limit)
            throw std::invalid_argument("--brute-force refused: about " + format_number(cost) +
                                        " integrand evaluations (limit " + format_number(brute_force_cost_limit) +
                                        "); reduce n_t, tau_samples or g2_n_els");
    }
    auto d = run.dipole(in.grid.time, in.momentum);
    auto t = run.table(in.momentum, in.grid.time);
    return {in.grid, std::move(d), std::move(t)};
}

void cmd_g2(const Options& o)
{
    Run run("g2", o);
    const auto& c = run.config();
    const auto s = g2_setup(run, o.brute_force);
    if (c.n_atoms == 1) {
        const auto g = run.stage("g2", [&] {
            return o.brute_force ? g2_brute_force(s.dipole, s.table, c.q, c.omega_l, s.grid.ref, s.grid.offsets)
                                 : g2_factorized(s.dipole, s.table, c.q, c.omega_l, s.grid.ref, s.grid.offsets,
                                                 run.policy());
        });
        std::fprintf(stderr, "[hhg] q=%d g2(0)=%.6g max |Im N|/|Re N|=%.3g\n", c.q, g.g2.front(), g.max_imag_residue());
        run.write("g2.csv", to_csv(g2_csv(g, run.period())));
    } else {
        const auto k = run.stage("kernels", [&] {
            return g2_kernels(s.dipole, s.table, c.q, c.omega_l, s.grid.ref, s.grid.offsets, run.policy());
        });
        const auto m = g2_many(k, c.n_atoms);
        if (m.truncated) std::fprintf(stderr, "[hhg] warning: N=%lld result is truncated\n", static_cast<long long>(c.n_atoms));
        run.write("g2.csv", to_csv(sweep_csv({m}, run.period())));
    }
    run.finish();
}

void cmd_sweep(const Options& o)
{
    Run run("sweep", o);
    const auto& c = run.config();
    const auto s = g2_setup(run, false);
    const auto k = run.stage("kernels", [&] {
        return g2_kernels(s.dipole, s.table, c.q, c.omega_l, s.grid.ref, s.grid.offsets, run.policy());
    });
    const auto ns = o.n_list.empty() ? default_n_grid() : o.n_list;
    const auto sweep = sweep_n(k, ns);
    run.write("sweep.csv", to_csv(sweep_csv(sweep, run.period())));
    run.write("sweep.dat", plot_text(sweep_plot(sweep, run.period())));
    run.write("sweep.svg", plot_svg(sweep_plot(sweep, run.period())));
    run.finish();
}

void add_common(CLI::App* sub, Options& o)
{
    sub->add_option("--config", o.config_path, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out_dir, "output directory");
    sub->add_option("--q", o.q, "harmonic order")->check(CLI::PositiveNumber);
    sub->add_option("--n-atoms", o.n_atoms, "number of emitters")->check(CLI::PositiveNumber);
    sub->add_flag("--brute-force", o.brute_force, "four-fold time quadrature for g2 (coarse grids only)");
    sub->add_flag("--no-cache", o.no_cache, "ignore and do not write the dipole/table cache");
    sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hhg: quantum-optical correlation functions of high harmonic generation"};
    app.require_subcommand(1);
    Options o;
    auto* dip = app.add_subcommand("dipole", "time-dependent dipole <d(t)>");
    auto* spec = app.add_subcommand("spectrum", "coherent, incoherent and total spectra");
    auto* g1 = app.add_subcommand("g1", "first-order correlation for harmonic q");
    auto* g2 = app.add_subcommand("g2", "intensity correlation g2(tau) for harmonic q");
    auto* sweep = app.add_subcommand("sweep", "g2(tau; N) over a list of emitter numbers");
    for (auto* s : {dip, spec, g1, g2, sweep}) add_common(s, o);
    spec->add_option("--slice", o.slices, "momentum for a per-momentum incoherent slice (repeatable)");
    sweep->add_option("--n", o.n_list, "emitter numbers (default: log10 N in 2.0 ... 7.0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*dip) cmd_dipole(o);
        else if (*spec) cmd_spectrum(o);
        else if (*g1) cmd_g1(o);
        else if (*g2) cmd_g2(o);
        else if (*sweep) cmd_sweep(o);
    } catch (const ValidationError& e) {
        std::cerr << "hhg: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "hhg: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
