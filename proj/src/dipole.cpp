#include "hhgq/dipole.hpp"

#include <cmath>

namespace hhgq {

TransitionModel::TransitionModel(const LaserField& laser, const AtomSpec& atom, double t0)
    : laser_(laser), atom_(atom), t0_(t0)
{
}

cplx TransitionModel::amplitude(double v, double t) const
{
    const double s = action(v, t, t0_, laser_, atom_);
    const double k = v + vector_potential(laser_, t);
    // <g|d|k> = -i D(k)
    return std::polar(1.0, -s) * cplx(0.0, -dipole_amplitude(k, atom_.kappa));
}

double TransitionModel::excursion(double v, double t) const
{
    return hhgq::excursion(v, t, t0_, laser_);
}

cplx TransitionModel::derivative(double v, double t) const
{
    const double s = action(v, t, t0_, laser_, atom_);
    const double k = v + vector_potential(laser_, t);
    const double r = hhgq::excursion(v, t, t0_, laser_);
    const cplx g(0.0, -dipole_amplitude(k, atom_.kappa));
    const cplx dg(0.0, -dipole_amplitude_derivative(k, atom_.kappa));
    return std::polar(1.0, -s) * (cplx(0.0, -r) * g + dg);
}

Grid1D default_time_grid(const RunConfig& c)
{
    const auto d = derive(c);
    return Grid1D(0.0, d.pulse_duration, static_cast<std::size_t>(d.n_t));
}

Grid1D momentum_grid(double p_lim, int n_els)
{
    return Grid1D(-p_lim, p_lim, static_cast<std::size_t>(n_els));
}

DipoleRecord compute_dipole(const RunConfig& c, const Grid1D& time, const Grid1D& momentum, const ExecPolicy& policy)
{
    validate(c);
    const LaserField laser = LaserField::from_config(c);
    const AtomSpec atom = AtomSpec::from_config(c);
    const std::size_t nt = time.n;
    const std::size_t np = momentum.n;
    const auto t = time.points();

    // contrib[it * np + ip]: integrand of the momentum integral
    std::vector<double> contrib(nt * np, 0.0);
    const double abs_tol = 1e-3 * c.quad_tol;

    parallel_for(np, policy, [&](std::size_t ip) {
        const double p = momentum.at(ip);
        auto f = [&](double t1) {
            const double k = p + vector_potential(laser, t1);
            const double amp = electric_field(laser, t1) * dipole_amplitude(k, atom.kappa);
            return amp * std::polar(1.0, action_primitive(p, t1, laser, atom));
        };
        cplx acc{};
        for (std::size_t it = 0; it < nt; ++it) {
            if (it > 0) {
                try {
                    acc += adaptive_quad<cplx>(f, t[it - 1], t[it], abs_tol, c.quad_tol).value;
                } catch (const QuadratureError& e) {
                    throw DipoleError(std::string("compute_dipole: ") + e.what() + " at p=" + std::to_string(p) +
                                          ", t=" + std::to_string(t[it]),
                                      p, t[it]);
                }
            }
            const double k = p + vector_potential(laser, t[it]);
            const cplx z = cplx(0.0, dipole_amplitude(k, atom.kappa)) *
                           std::polar(1.0, -action_primitive(p, t[it], laser, atom)) * acc;
            contrib[it * np + ip] = 2.0 * z.real();
        }
    });

    DipoleRecord rec;
    rec.time = time;
    rec.samples.resize(nt);
    const double dp = momentum.spacing();
    for (std::size_t it = 0; it < nt; ++it)
        rec.samples[it] = trapezoid(std::span<const double>(contrib.data() + it * np, np), dp);
    rec.warmup_time = c.warmup_cycles * 2.0 * pi / c.omega_l;
    rec.warmup_index = nt;
    for (std::size_t it = 0; it < nt; ++it) {
        if (t[it] >= rec.warmup_time * (1.0 - 1e-12)) {
            rec.warmup_index = it;
            break;
        }
    }
    return rec;
}

DipoleRecord compute_dipole(const RunConfig& c, const ExecPolicy& policy)
{
    return compute_dipole(c, default_time_grid(c), momentum_grid(c.p_lim, c.n_els), policy);
}

TransitionTable compute_transition_table(const RunConfig& c, const Grid1D& momentum, const Grid1D& time,
                                         const ExecPolicy& policy)
{
    validate(c);
    TransitionTable tab;
    tab.momentum = momentum;
    tab.time = time;
    tab.t0 = time.min;
    const std::size_t nv = momentum.n;
    const std::size_t nt = time.n;
    tab.d.resize(nv * nt);
    tab.dr.resize(nv * nt);
    tab.dv.resize(nv * nt);
    const TransitionModel model(LaserField::from_config(c), AtomSpec::from_config(c), tab.t0);
    const auto t = time.points();
    parallel_for(nv, policy, [&](std::size_t iv) {
        const double v = momentum.at(iv);
        for (std::size_t it = 0; it < nt; ++it) {
            const std::size_t i = tab.index(iv, it);
            tab.d[i] = model.amplitude(v, t[it]);
            tab.dr[i] = model.excursion(v, t[it]);
            tab.dv[i] = model.derivative(v, t[it]);
        }
    });
    if (c.dv_mode == DerivativeMode::grid) apply_grid_derivative(tab);
    return tab;
}

TransitionTable compute_transition_table(const RunConfig& c, const ExecPolicy& policy)
{
    return compute_transition_table(c, momentum_grid(c.p_lim, c.n_els), default_time_grid(c), policy);
}

void apply_grid_derivative(TransitionTable& tab)
{
    const std::size_t nv = tab.n_v();
    const double dv = tab.momentum.spacing();
    for (std::size_t it = 0; it < tab.n_t(); ++it) {
        const std::span<const cplx> col(tab.d.data() + tab.index(0, it), nv);
        const auto der = grid_derivative(col, dv);
        std::copy(der.begin(), der.end(), tab.dv.begin() + static_cast<std::ptrdiff_t>(tab.index(0, it)));
    }
}

}  // namespace hhgq
