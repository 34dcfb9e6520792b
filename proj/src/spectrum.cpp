#include "hhgq/spectrum.hpp"

#include <cmath>

namespace hhgq {

SpectralWindow SpectralWindow::from_config(const RunConfig& c)
{
    const auto d = derive(c);
    return {d.warmup_time, d.pulse_duration, static_cast<std::size_t>(c.n_fft), c.omega_l};
}

double SpectralWindow::bins_per_order() const
{
    return duration() * omega_l / (2.0 * pi);
}

FourierSeries dipole_transform(const DipoleRecord& dipole, const SpectralWindow& w)
{
    return resample_fft(dipole.time, dipole.samples, w.a, w.b, w.n, w.omega_l);
}

std::vector<double> coherent_spectrum(const DipoleRecord& dipole, const SpectralWindow& w)
{
    const auto fs = dipole_transform(dipole, w);
    std::vector<double> s(w.n_positive());
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double q = static_cast<double>(k) / w.bins_per_order();
        s[k] = q * q * std::norm(fs.amplitude[k]);
    }
    return s;
}

namespace {

constexpr std::size_t block_size = 32;

template <typename RowFn>
IncoherentResult accumulate_rows(std::size_t n_v, double dv, const SpectralWindow& w, const ExecPolicy& policy,
                                 const std::vector<std::size_t>& slice_index, RowFn&& row)
{
    const std::size_t nb = w.n_positive();
    const std::size_t n_blocks = (n_v + block_size - 1) / block_size;
    std::vector<std::vector<double>> partial(n_blocks, std::vector<double>(nb, 0.0));
    IncoherentResult out;
    out.slices.assign(slice_index.size(), std::vector<double>(nb, 0.0));
    std::vector<double> q2(nb);
    for (std::size_t k = 0; k < nb; ++k) {
        const double q = static_cast<double>(k) / w.bins_per_order();
        q2[k] = q * q;
    }

    parallel_for(n_blocks, policy, [&](std::size_t b) {
        std::vector<cplx> x(w.n);
        auto& acc = partial[b];
        const std::size_t hi = std::min(n_v, (b + 1) * block_size);
        for (std::size_t iv = b * block_size; iv < hi; ++iv) {
            row(iv, x);
            fft_inplace(x);
            const double weight = (iv == 0 || iv + 1 == n_v) ? 0.5 * dv : dv;
            const double scale = w.dt() * w.dt();
            for (std::size_t k = 0; k < nb; ++k) acc[k] += weight * scale * q2[k] * std::norm(x[k]);
            for (std::size_t s = 0; s < slice_index.size(); ++s)
                if (slice_index[s] == iv)
                    for (std::size_t k = 0; k < nb; ++k) out.slices[s][k] = scale * q2[k] * std::norm(x[k]);
        }
    });

    out.s_inc.assign(nb, 0.0);
    std::vector<double> column(n_blocks);
    for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t b = 0; b < n_blocks; ++b) column[b] = partial[b][k];
        out.s_inc[k] = pairwise_sum(std::span<const double>(column));
    }
    return out;
}

std::vector<std::size_t> nearest_indices(const Grid1D& g, const std::vector<double>& momenta)
{
    std::vector<std::size_t> idx;
    for (double p : momenta) {
        const double r = std::round((p - g.min) / g.spacing());
        idx.push_back(static_cast<std::size_t>(std::clamp(r, 0.0, static_cast<double>(g.n - 1))));
    }
    return idx;
}

}  // namespace

IncoherentResult incoherent_spectrum(const TransitionModel& model, const Grid1D& momentum, const SpectralWindow& w,
                                     const ExecPolicy& policy, const std::vector<double>& slice_momenta)
{
    const auto t = periodic_points(w.a, w.b, w.n);
    const auto idx = nearest_indices(momentum, slice_momenta);
    auto res = accumulate_rows(momentum.n, momentum.spacing(), w, policy, idx, [&](std::size_t iv, std::vector<cplx>& x) {
        const double v = momentum.at(iv);
        for (std::size_t i = 0; i < w.n; ++i) x[i] = model.amplitude(v, t[i]);
    });
    for (auto i : idx) res.slice_momenta.push_back(momentum.at(i));
    return res;
}

IncoherentResult incoherent_spectrum(const TransitionTable& table, const SpectralWindow& w, const ExecPolicy& policy,
                                     const std::vector<double>& slice_momenta)
{
    const auto idx = nearest_indices(table.momentum, slice_momenta);
    auto res = accumulate_rows(table.n_v(), table.momentum.spacing(), w, policy, idx,
                               [&](std::size_t iv, std::vector<cplx>& x) {
                                   std::vector<cplx> row(table.n_t());
                                   for (std::size_t it = 0; it < table.n_t(); ++it) row[it] = table.amplitude(iv, it);
                                   x = resample(table.time, std::span<const cplx>(row), w.a, w.b, w.n);
                               });
    for (auto i : idx) res.slice_momenta.push_back(table.momentum.at(i));
    return res;
}

SpectrumResult compute_spectrum(const DipoleRecord& dipole, const RunConfig& c, const ExecPolicy& policy,
                                const std::vector<double>& slice_momenta)
{
    const auto w = SpectralWindow::from_config(c);
    SpectrumResult r;
    r.s_coh = coherent_spectrum(dipole, w);
    const TransitionModel model(LaserField::from_config(c), AtomSpec::from_config(c), dipole.time.min);
    auto inc = incoherent_spectrum(model, momentum_grid(c.p_lim, c.n_els), w, policy, slice_momenta);
    r.s_inc = std::move(inc.s_inc);
    r.slice_momenta = std::move(inc.slice_momenta);
    r.slices = std::move(inc.slices);
    r.order.resize(r.s_coh.size());
    r.s_total.resize(r.s_coh.size());
    for (std::size_t k = 0; k < r.order.size(); ++k) {
        r.order[k] = static_cast<double>(k) / w.bins_per_order();
        r.s_total[k] = r.s_coh[k] + r.s_inc[k];
    }
    return r;
}

ScatteredField scattered_field_time(const DipoleRecord& dipole, const RunConfig& c)
{
    const auto w = SpectralWindow::from_config(c);
    const auto fs = dipole_transform(dipole, w);
    ScatteredField out;
    out.time = periodic_points(w.a, w.b, w.n);
    out.field.assign(w.n, cplx{});
    for (int q = 1; q <= c.q_max; ++q) {
        const std::size_t k = fs.bin_of_order(q);
        const cplx cq = std::conj(fs.amplitude[k]) / w.duration();
        out.weights.push_back(cq);
        const double wq = q * c.omega_l;
        for (std::size_t i = 0; i < w.n; ++i)
            out.field[i] += cplx(0.0, q) * cq * std::polar(1.0, -wq * out.time[i]);
    }
    return out;
}

}  // namespace hhgq
