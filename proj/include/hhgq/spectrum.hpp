#pragma once

#include <vector>

#include "hhgq/dipole.hpp"

namespace hhgq {

// Retained window [a, b) after warm-up, sampled with n points (endpoint excluded).
struct SpectralWindow {
    double a;
    double b;
    std::size_t n;
    double omega_l;

    static SpectralWindow from_config(const RunConfig& config);
    double dt() const { return (b - a) / static_cast<double>(n); }
    double duration() const { return b - a; }
    std::size_t n_positive() const { return n / 2 + 1; }
    // bin spacing is omega_l / cycles, so harmonic q sits at bin q * cycles
    double bins_per_order() const;
};

struct SpectrumResult {
    std::vector<double> order;  // non-negative frequency bins, in units of omega_l
    std::vector<double> s_coh;
    std::vector<double> s_inc;
    std::vector<double> s_total;
    std::vector<double> slice_momenta;
    std::vector<std::vector<double>> slices;  // q^2 |X_v|^2 per requested momentum
};

// Transform of <d(t)> over the window: X(w) = int d(t) exp(-i w t) dt.
FourierSeries dipole_transform(const DipoleRecord& dipole, const SpectralWindow& window);

// q^2 |X(w_q)|^2 on the non-negative bins.
std::vector<double> coherent_spectrum(const DipoleRecord& dipole, const SpectralWindow& window);

struct IncoherentResult {
    std::vector<double> s_inc;
    std::vector<double> slice_momenta;
    std::vector<std::vector<double>> slices;
};

// Rows G(v,t) evaluated in closed form on the window samples, transformed,
// squared and integrated over v with the trapezoid rule.
IncoherentResult incoherent_spectrum(const TransitionModel& model, const Grid1D& momentum,
                                     const SpectralWindow& window, const ExecPolicy& policy = {},
                                     const std::vector<double>& slice_momenta = {});

// Same quantity from a materialized table: rows are cubic-resampled onto the window.
IncoherentResult incoherent_spectrum(const TransitionTable& table, const SpectralWindow& window,
                                     const ExecPolicy& policy = {},
                                     const std::vector<double>& slice_momenta = {});

SpectrumResult compute_spectrum(const DipoleRecord& dipole, const RunConfig& config, const ExecPolicy& policy = {},
                                const std::vector<double>& slice_momenta = {});

struct ScatteredField {
    std::vector<double> time;
    std::vector<cplx> field;
    std::vector<cplx> weights;  // c_q = (1/T_w) int d(t) exp(+i w_q t) dt, q = 1..q_max
};

// sum_q i q c_q exp(-i w_q t) on the window samples.
ScatteredField scattered_field_time(const DipoleRecord& dipole, const RunConfig& config);

}  // namespace hhgq
