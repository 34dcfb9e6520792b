#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hhgq/coherence.hpp"

namespace hhgq {

// Time grid for intensity correlations: t0 = grid start, reference time
// t = node ref, delays tau_k = node (ref + offsets[k]) - t.
struct G2Grid {
    Grid1D time;
    std::size_t ref = 0;
    std::vector<std::size_t> offsets;

    double t_ref() const { return time.at(ref); }
    std::vector<double> taus() const;
};

// [0, 2T] with P = (tau_samples - 1) * m nodes per cycle, where m is the
// smallest stride giving at least the first-order time resolution.
G2Grid g2_grid(const RunConfig& config);

struct G2Components {
    int q = 0;
    double t_ref = 0.0;
    std::vector<double> tau;
    std::vector<cplx> t_coh;    // G1_coh(t) G1(t + tau)
    std::vector<cplx> t_cross;  // mean-dipole / continuum cross term, both orderings
    std::vector<cplx> t_cc;     // continuum-continuum term, i0 + i1 + i2 + i3 + i4
    std::array<std::vector<cplx>, 5> parts;
    std::vector<double> g1_coh_t, g1_inc_t, g1_coh_u, g1_inc_u;
    std::vector<double> denom;
    std::vector<double> g2;

    cplx numerator(std::size_t k) const { return t_coh[k] + t_cross[k] + t_cc[k]; }
    double max_imag_residue() const;  // max |Im N| / |Re N|
};

// Cumulative transforms int_{t0}^{U} exp(-i w t) f(t) dt by the trapezoid rule,
// sampled at U = node[j]. Per-momentum arrays are stored at [j * n_v + iv].
struct G2Transforms {
    std::vector<std::size_t> nodes;
    std::size_t n_v = 0;
    double dv = 0.0;
    std::vector<cplx> dm;   // <d>
    std::vector<cplx> wm;   // 1
    std::vector<cplx> tm;   // t - t0
    std::vector<cplx> gm;   // G
    std::vector<cplx> hm;   // conj G
    std::vector<cplx> rm;   // dr
    std::vector<cplx> dgm;  // dG/dv

    std::size_t at(std::size_t j, std::size_t iv) const { return j * n_v + iv; }
};

G2Transforms g2_transforms(const DipoleRecord& dipole, const TransitionTable& table, int q, double omega_l,
                           const std::vector<std::size_t>& nodes, const ExecPolicy& policy = {});

// Separable evaluation, O(n_t n_v) per delay.
G2Components g2_factorized(const DipoleRecord& dipole, const TransitionTable& table, int q, double omega_l,
                           std::size_t ref, const std::vector<std::size_t>& offsets, const ExecPolicy& policy = {});

// Literal four-fold time trapezoid inside the momentum trapezoid.
double brute_force_cost(std::size_t n_v, std::size_t ref, const std::vector<std::size_t>& offsets);
inline constexpr double brute_force_cost_limit = 2.0e9;

G2Components g2_brute_force(const DipoleRecord& dipole, const TransitionTable& table, int q, double omega_l,
                            std::size_t ref, const std::vector<std::size_t>& offsets,
                            double cost_limit = brute_force_cost_limit);

// Ratio Re N / (G1(t) G1(t + tau)); throws DegenerateModeError on a zero denominator.
void g2_normalize(G2Components& c);

// Zero the incoherent (continuum) parts: every delay gives exactly 1.
G2Components fluctuation_free(const DipoleRecord& dipole, const TransitionTable& table, int q, double omega_l,
                              std::size_t ref, const std::vector<std::size_t>& offsets);

struct G2Inputs {
    G2Grid grid;
    Grid1D momentum;
};
G2Inputs g2_inputs(const RunConfig& config);

}  // namespace hhgq
