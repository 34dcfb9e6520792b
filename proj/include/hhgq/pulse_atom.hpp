#pragma once

#include <complex>

#include "hhgq/config.hpp"

namespace hhgq {

using cplx = std::complex<double>;

// Flat-top cosine drive on [t_start, t_end].
struct LaserField {
    double e0;
    double omega;
    double phase;
    double t_start;
    double t_end;

    static LaserField from_config(const RunConfig& c);

    double period() const { return 2.0 * pi / omega; }
    bool inside(double t) const { return t >= t_start && t <= t_end; }
};

struct AtomSpec {
    double ip;
    double kappa;

    static AtomSpec from_config(const RunConfig& c) { return {c.ip, c.kappa}; }
};

double electric_field(const LaserField& laser, double t);

// E = -dA/dt, A = -(E0/w) sin(wt + phi) inside; held at the edge values outside.
double vector_potential(const LaserField& laser, double t);

// Primitives of A and A^2 measured from t_start.
double integral_a(const LaserField& laser, double t);
double integral_a2(const LaserField& laser, double t);

// K(p,t) with S(p,t2,t1) = K(p,t2) - K(p,t1).
double action_primitive(double p, double t, const LaserField& laser, const AtomSpec& atom);

// S(p,t2,t1) = int_{t1}^{t2} [ (p+A)^2/2 + Ip ] dt, closed form.
double action(double p, double t2, double t1, const LaserField& laser, const AtomSpec& atom);

// Same integral by adaptive quadrature; throws QuadratureError on failure.
double action_by_quadrature(double p, double t2, double t1, const LaserField& laser,
                            const AtomSpec& atom, double tol = 1e-12);

// dS/dp = int_{t0}^{t} (p + A) dt
double excursion(double p, double t, double t0, const LaserField& laser);

// <p|d|g> for a 1s-type state: (8i/pi) sqrt(2 kappa^5) p / (p^2+kappa^2)^2
cplx dipole_matrix_element(double p, const AtomSpec& atom);

// Imaginary part of <p|d|g> and its p-derivative.
double dipole_amplitude(double p, double kappa);
double dipole_amplitude_derivative(double p, double kappa);

}  // namespace hhgq
