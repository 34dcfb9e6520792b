#pragma once

// Library-side inputs on the grids behind tests/golden.

#include <cstddef>
#include <filesystem>
#include <vector>

#include "golden_grids.hpp"
#include "hhgq/dipole.hpp"
#include "hhgq/io.hpp"

namespace golden {

struct G2Case {
    hhgq::DipoleRecord dipole;
    hhgq::TransitionTable table;
    std::size_t ref = 0;
    std::vector<std::size_t> offsets;
};

inline hhgq::RunConfig drive_config(const ref::Drive& d)
{
    hhgq::RunConfig c;
    c.e0 = d.e0;
    c.omega_l = d.omega;
    c.ip = d.ip;
    c.kappa = d.kappa;
    c.n_cycles = d.cycles;
    c.n_fft = 1 << 16;
    return c;
}

inline G2Case g2_case(const hhgq::ExecPolicy& policy = {})
{
    const auto c = drive_config(g2_drive());
    const hhgq::Grid1D time(0.0, g2_time_span(), g2_time_points);
    const hhgq::Grid1D v(-g2_v_lim, g2_v_lim, g2_n_v);
    G2Case out;
    out.dipole = hhgq::compute_dipole(c, time, v, policy);
    out.table = hhgq::compute_transition_table(c, v, time, policy);
    out.ref = g2_ref;
    for (int o : g2_offsets) out.offsets.push_back(static_cast<std::size_t>(o));
    return out;
}

inline hhgq::CsvTable read(const std::filesystem::path& dir, const std::string& name)
{
    return hhgq::read_csv(dir / name);
}

inline std::string g2_file(int q) { return "g2_bruteforce_q" + std::to_string(q) + ".csv"; }

}  // namespace golden
