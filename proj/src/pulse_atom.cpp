#include "hhgq/pulse_atom.hpp"

#include <cmath>

#include "hhgq/quad_fft.hpp"

namespace hhgq {

LaserField LaserField::from_config(const RunConfig& c)
{
    return {c.e0, c.omega_l, c.phase, 0.0, c.n_cycles * 2.0 * pi / c.omega_l};
}

double electric_field(const LaserField& l, double t)
{
    if (!l.inside(t)) return 0.0;
    return l.e0 * std::cos(l.omega * t + l.phase);
}

double vector_potential(const LaserField& l, double t)
{
    const double tc = std::clamp(t, l.t_start, l.t_end);
    return -(l.e0 / l.omega) * std::sin(l.omega * tc + l.phase);
}

namespace {

double ia_inside(const LaserField& l, double t)
{
    return l.e0 / (l.omega * l.omega) * (std::cos(l.omega * t + l.phase) - std::cos(l.omega * l.t_start + l.phase));
}

double ia2_inside(const LaserField& l, double t)
{
    const double a = l.e0 / l.omega;
    const double s = std::sin(2.0 * (l.omega * t + l.phase)) - std::sin(2.0 * (l.omega * l.t_start + l.phase));
    return a * a * (0.5 * (t - l.t_start) - s / (4.0 * l.omega));
}

}  // namespace

double integral_a(const LaserField& l, double t)
{
    if (t < l.t_start) return vector_potential(l, l.t_start) * (t - l.t_start);
    if (t > l.t_end) return ia_inside(l, l.t_end) + vector_potential(l, l.t_end) * (t - l.t_end);
    return ia_inside(l, t);
}

double integral_a2(const LaserField& l, double t)
{
    if (t < l.t_start) {
        const double a = vector_potential(l, l.t_start);
        return a * a * (t - l.t_start);
    }
    if (t > l.t_end) {
        const double a = vector_potential(l, l.t_end);
        return ia2_inside(l, l.t_end) + a * a * (t - l.t_end);
    }
    return ia2_inside(l, t);
}

double action_primitive(double p, double t, const LaserField& l, const AtomSpec& atom)
{
    return (0.5 * p * p + atom.ip) * (t - l.t_start) + p * integral_a(l, t) + 0.5 * integral_a2(l, t);
}

double action(double p, double t2, double t1, const LaserField& l, const AtomSpec& atom)
{
    if (t2 == t1) return 0.0;
    return action_primitive(p, t2, l, atom) - action_primitive(p, t1, l, atom);
}

double action_by_quadrature(double p, double t2, double t1, const LaserField& l, const AtomSpec& atom, double tol)
{
    auto f = [&](double t) {
        const double k = p + vector_potential(l, t);
        return 0.5 * k * k + atom.ip;
    };
    return adaptive_quad<double>(f, t1, t2, tol, tol).value;
}

double excursion(double p, double t, double t0, const LaserField& l)
{
    if (t == t0) return 0.0;
    return p * (t - t0) + integral_a(l, t) - integral_a(l, t0);
}

double dipole_amplitude(double p, double kappa)
{
    const double k2 = kappa * kappa;
    const double den = p * p + k2;
    return (8.0 / pi) * std::sqrt(2.0 * k2 * k2 * kappa) * p / (den * den);
}

double dipole_amplitude_derivative(double p, double kappa)
{
    const double k2 = kappa * kappa;
    const double den = p * p + k2;
    return (8.0 / pi) * std::sqrt(2.0 * k2 * k2 * kappa) * (k2 - 3.0 * p * p) / (den * den * den);
}

cplx dipole_matrix_element(double p, const AtomSpec& atom)
{
    return {0.0, dipole_amplitude(p, atom.kappa)};
}

}  // namespace hhgq
