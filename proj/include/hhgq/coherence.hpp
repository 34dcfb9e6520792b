#pragma once

#include <stdexcept>
#include <vector>

#include "hhgq/spectrum.hpp"

namespace hhgq {

class DegenerateModeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CorrelationSeries {
    int q = 0;
    std::vector<double> tau;
    std::vector<cplx> coh;
    std::vector<cplx> inc;
    std::vector<cplx> total;
    std::vector<cplx> normalized;
};

// tau_samples points uniformly on [0, T].
std::vector<double> one_cycle_taus(const RunConfig& config);

// q^2 |X(w_q)|^2 exp(-i w_q tau), X the windowed transform of <d>.
std::vector<cplx> g1_coherent(const DipoleRecord& dipole, const SpectralWindow& window, int q,
                              const std::vector<double>& taus);

// q^2 int dv |X_v(w_q)|^2 exp(-i w_q tau), X_v the windowed transform of a table row.
std::vector<cplx> g1_incoherent(const TransitionModel& model, const Grid1D& momentum, const SpectralWindow& window,
                                int q, const std::vector<double>& taus, const ExecPolicy& policy = {});
std::vector<cplx> g1_incoherent(const TransitionTable& table, const SpectralWindow& window, int q,
                                const std::vector<double>& taus, const ExecPolicy& policy = {});

// (coh + inc) / |coh(0) + inc(0)|; throws DegenerateModeError on zero intensity.
CorrelationSeries g1_normalized(int q, const std::vector<double>& taus, const std::vector<cplx>& coh,
                                const std::vector<cplx>& inc);

CorrelationSeries compute_g1(const DipoleRecord& dipole, const RunConfig& config, const ExecPolicy& policy = {});

struct EqualTimeIntensity {
    double coherent;
    double incoherent;
    double total() const { return coherent + incoherent; }
};

// Running-window intensity q^2 (|int_{t0}^{t} e^{-i w_q t'} <d>|^2 + int dv |int_{t0}^{t} e^{-i w_q t'} G|^2)
// by the trapezoid rule on the table's time grid up to node it.
EqualTimeIntensity g1_equal_time(const DipoleRecord& dipole, const TransitionTable& table, int q, double omega_l,
                                 std::size_t it);

}  // namespace hhgq
