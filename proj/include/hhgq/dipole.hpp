#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hhgq/config.hpp"
#include "hhgq/pulse_atom.hpp"
#include "hhgq/quad_fft.hpp"

namespace hhgq {

struct DipoleRecord {
    Grid1D time;
    std::vector<double> samples;
    std::size_t warmup_index = 0;  // first node at or after the warm-up boundary
    double warmup_time = 0.0;
    double max_imag_residue = 0.0;
};

// Row entries G(v,t) = exp(-i S(v,t,t0)) <g|d|v+A(t)>, the excursion
// dr(v,t) = dS/dv and dG/dv, stored at index(iv, it) = it * n_v + iv.
struct TransitionTable {
    Grid1D momentum;
    Grid1D time;
    double t0 = 0.0;
    std::vector<cplx> d;
    std::vector<double> dr;
    std::vector<cplx> dv;

    std::size_t n_v() const { return momentum.n; }
    std::size_t n_t() const { return time.n; }
    std::size_t index(std::size_t iv, std::size_t it) const { return it * momentum.n + iv; }
    cplx amplitude(std::size_t iv, std::size_t it) const { return d[index(iv, it)]; }
    double excursion(std::size_t iv, std::size_t it) const { return dr[index(iv, it)]; }
    cplx derivative(std::size_t iv, std::size_t it) const { return dv[index(iv, it)]; }
};

// Closed-form row evaluation at arbitrary (v, t).
class TransitionModel {
public:
    TransitionModel(const LaserField& laser, const AtomSpec& atom, double t0);

    cplx amplitude(double v, double t) const;
    double excursion(double v, double t) const;
    cplx derivative(double v, double t) const;

    const LaserField& laser() const { return laser_; }
    const AtomSpec& atom() const { return atom_; }
    double t0() const { return t0_; }

private:
    LaserField laser_;
    AtomSpec atom_;
    double t0_;
};

class DipoleError : public std::runtime_error {
public:
    DipoleError(const std::string& what, double p, double t) : std::runtime_error(what), p_(p), t_(t) {}
    double momentum() const { return p_; }
    double time() const { return t_; }

private:
    double p_, t_;
};

Grid1D default_time_grid(const RunConfig& config);
Grid1D momentum_grid(double p_lim, int n_els);

// <d(t)> on the given time grid with momentum grid [-p_lim, p_lim] x n_els.
DipoleRecord compute_dipole(const RunConfig& config, const Grid1D& time, const Grid1D& momentum,
                            const ExecPolicy& policy = {});
DipoleRecord compute_dipole(const RunConfig& config, const ExecPolicy& policy = {});

TransitionTable compute_transition_table(const RunConfig& config, const Grid1D& momentum, const Grid1D& time,
                                         const ExecPolicy& policy = {});
TransitionTable compute_transition_table(const RunConfig& config, const ExecPolicy& policy = {});

// Replaces the dv block by grid_derivative of the d block along v.
void apply_grid_derivative(TransitionTable& table);

}  // namespace hhgq
