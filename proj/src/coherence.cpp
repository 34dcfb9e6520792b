#include "hhgq/coherence.hpp"

#include <cmath>

namespace hhgq {

std::vector<double> one_cycle_taus(const RunConfig& c)
{
    const double T = 2.0 * pi / c.omega_l;
    std::vector<double> taus(static_cast<std::size_t>(c.tau_samples));
    for (std::size_t k = 0; k < taus.size(); ++k)
        taus[k] = T * static_cast<double>(k) / static_cast<double>(taus.size() - 1);
    return taus;
}

namespace {

std::vector<cplx> phase_series(double magnitude, double wq, const std::vector<double>& taus)
{
    std::vector<cplx> out(taus.size());
    for (std::size_t k = 0; k < taus.size(); ++k) out[k] = magnitude * std::polar(1.0, -wq * taus[k]);
    return out;
}

// dt * sum x_n exp(-i w t_n) at a single frequency
template <typename Row>
cplx single_bin(Row&& row, const std::vector<double>& t, double w, double dt)
{
    std::vector<cplx> terms(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) terms[i] = row(i) * std::polar(1.0, -w * t[i]);
    return dt * pairwise_sum(std::span<const cplx>(terms));
}

template <typename RowAt>
double incoherent_weight(std::size_t n_v, double dv, const SpectralWindow& w, int q, const ExecPolicy& policy,
                         RowAt&& row_at)
{
    const auto t = periodic_points(w.a, w.b, w.n);
    const double wq = q * w.omega_l;
    std::vector<double> per_v(n_v);
    parallel_for(n_v, policy, [&](std::size_t iv) {
        const auto row = row_at(iv, t);
        per_v[iv] = std::norm(single_bin([&](std::size_t i) { return row[i]; }, t, wq, w.dt()));
    });
    return static_cast<double>(q) * q * trapezoid(per_v, dv);
}

}  // namespace

std::vector<cplx> g1_coherent(const DipoleRecord& dipole, const SpectralWindow& w, int q,
                              const std::vector<double>& taus)
{
    const auto x = resample(dipole.time, std::span<const double>(dipole.samples), w.a, w.b, w.n);
    const auto t = periodic_points(w.a, w.b, w.n);
    const double wq = q * w.omega_l;
    const cplx X = single_bin([&](std::size_t i) { return cplx(x[i], 0.0); }, t, wq, w.dt());
    return phase_series(static_cast<double>(q) * q * std::norm(X), wq, taus);
}

std::vector<cplx> g1_incoherent(const TransitionModel& model, const Grid1D& momentum, const SpectralWindow& w, int q,
                                const std::vector<double>& taus, const ExecPolicy& policy)
{
    const double g = incoherent_weight(momentum.n, momentum.spacing(), w, q, policy,
                                       [&](std::size_t iv, const std::vector<double>& t) {
                                           std::vector<cplx> row(t.size());
                                           const double v = momentum.at(iv);
                                           for (std::size_t i = 0; i < t.size(); ++i) row[i] = model.amplitude(v, t[i]);
                                           return row;
                                       });
    return phase_series(g, q * w.omega_l, taus);
}

std::vector<cplx> g1_incoherent(const TransitionTable& table, const SpectralWindow& w, int q,
                                const std::vector<double>& taus, const ExecPolicy& policy)
{
    const double g = incoherent_weight(table.n_v(), table.momentum.spacing(), w, q, policy,
                                       [&](std::size_t iv, const std::vector<double>& t) {
                                           std::vector<cplx> row(table.n_t());
                                           for (std::size_t it = 0; it < table.n_t(); ++it)
                                               row[it] = table.amplitude(iv, it);
                                           return resample(table.time, std::span<const cplx>(row), w.a, w.b, t.size());
                                       });
    return phase_series(g, q * w.omega_l, taus);
}

CorrelationSeries g1_normalized(int q, const std::vector<double>& taus, const std::vector<cplx>& coh,
                                const std::vector<cplx>& inc)
{
    if (coh.size() != taus.size() || inc.size() != taus.size())
        throw std::invalid_argument("g1_normalized: size mismatch");
    CorrelationSeries s;
    s.q = q;
    s.tau = taus;
    s.coh = coh;
    s.inc = inc;
    s.total.resize(taus.size());
    for (std::size_t k = 0; k < taus.size(); ++k) s.total[k] = coh[k] + inc[k];
    const double norm = s.total.empty() ? 0.0 : std::abs(s.total.front());
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw DegenerateModeError("g1_normalized: harmonic " + std::to_string(q) + " has zero intensity");
    s.normalized.resize(taus.size());
    for (std::size_t k = 0; k < taus.size(); ++k) s.normalized[k] = s.total[k] / norm;
    return s;
}

CorrelationSeries compute_g1(const DipoleRecord& dipole, const RunConfig& c, const ExecPolicy& policy)
{
    const auto w = SpectralWindow::from_config(c);
    const auto taus = one_cycle_taus(c);
    const TransitionModel model(LaserField::from_config(c), AtomSpec::from_config(c), dipole.time.min);
    const auto coh = g1_coherent(dipole, w, c.q, taus);
    const auto inc = g1_incoherent(model, momentum_grid(c.p_lim, c.n_els), w, c.q, taus, policy);
    return g1_normalized(c.q, taus, coh, inc);
}

EqualTimeIntensity g1_equal_time(const DipoleRecord& dipole, const TransitionTable& table, int q, double omega_l,
                                 std::size_t it)
{
    if (dipole.time.n != table.n_t() || it >= table.n_t())
        throw std::invalid_argument("g1_equal_time: grid mismatch");
    if (it == 0) return {0.0, 0.0};
    const double wq = q * omega_l;
    const double dt = table.time.spacing();
    const auto t = table.time.points();
    std::vector<cplx> e(it + 1);
    for (std::size_t j = 0; j <= it; ++j) e[j] = std::polar(1.0, -wq * t[j]);

    std::vector<cplx> f(it + 1);
    for (std::size_t j = 0; j <= it; ++j) f[j] = e[j] * dipole.samples[j];
    const double coh = std::norm(trapezoid(std::span<const cplx>(f), dt));

    std::vector<double> per_v(table.n_v());
    for (std::size_t iv = 0; iv < table.n_v(); ++iv) {
        for (std::size_t j = 0; j <= it; ++j) f[j] = e[j] * table.amplitude(iv, j);
        per_v[iv] = std::norm(trapezoid(std::span<const cplx>(f), dt));
    }
    const double inc = trapezoid(per_v, table.momentum.spacing());
    const double q2 = static_cast<double>(q) * q;
    return {q2 * coh, q2 * inc};
}

}  // namespace hhgq
