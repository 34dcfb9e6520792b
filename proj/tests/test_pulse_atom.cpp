#include <cmath>
#include <vector>

#include "doctest.h"
#include "hhgq/pulse_atom.hpp"
#include "reference.hpp"

using namespace hhgq;

namespace {

const RunConfig defaults{};
const LaserField laser = LaserField::from_config(defaults);
const AtomSpec atom = AtomSpec::from_config(defaults);

LaserField field_free()
{
    RunConfig c;
    c.e0 = 0.0;
    return LaserField::from_config(c);
}

}  // namespace

TEST_SUITE("pulse_atom")
{
    TEST_CASE("electric field closed form")
    {
        const double T = laser.period();
        CHECK(electric_field(laser, 0.0) == 0.053);
        CHECK(std::abs(electric_field(laser, T / 4)) < 1e-15);
        CHECK(electric_field(laser, -1.0) == 0.0);
        CHECK(electric_field(laser, laser.t_end + 1.0) == 0.0);
    }

    TEST_CASE("vector potential closed form")
    {
        const double T = laser.period();
        CHECK(vector_potential(laser, 0.0) == 0.0);
        CHECK(vector_potential(laser, T / 4) == doctest::Approx(-0.9298).epsilon(1e-4));
        CHECK(vector_potential(laser, T / 4) == doctest::Approx(-0.053 / 0.057).epsilon(1e-14));
    }

    TEST_CASE("vector potential is held continuous outside the pulse")
    {
        RunConfig c;
        c.phase = 0.4;
        const auto l = LaserField::from_config(c);
        CHECK(vector_potential(l, -5.0) == vector_potential(l, 0.0));
        CHECK(vector_potential(l, l.t_end + 5.0) == vector_potential(l, l.t_end));
    }

    TEST_CASE("minus the time derivative of A is E")
    {
        const double h = 1e-3;
        const int n = default_time_points(defaults.omega_l, defaults.n_cycles);
        const double dt = laser.t_end / (n - 1);
        double worst = 0.0;
        for (int i = 1; i + 1 < n; ++i) {
            const double t = i * dt;
            const double fd = (vector_potential(laser, t + h) - vector_potential(laser, t - h)) / (2 * h);
            worst = std::max(worst, std::abs(-fd - electric_field(laser, t)));
        }
        CHECK(worst < 1e-6);
    }

    TEST_CASE("action of an empty interval is zero")
    {
        for (double p : {-2.0, 0.0, 0.3, 4.0}) CHECK(action(p, 37.0, 37.0, laser, atom) == 0.0);
    }

    TEST_CASE("field-free action and excursion")
    {
        const auto l = field_free();
        CHECK(action(1.0, 12.0, 10.0, l, atom) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(excursion(1.0, 12.0, 10.0, l) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(excursion(0.7, 5.0, 5.0, laser) == 0.0);
    }

    TEST_CASE("action over one cycle matches a fine trapezoid")
    {
        const ref::Drive d{defaults.e0, defaults.omega_l, defaults.ip, defaults.kappa, defaults.n_cycles};
        const double p = 0.5;
        const double T = laser.period();
        const int n = 1000000;
        const double h = T / n;
        double s = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double k = p + ref::potential(d, i * h);
            s += ((i == 0 || i == n) ? 0.5 : 1.0) * (0.5 * k * k + d.ip);
        }
        s *= h;
        CHECK(std::abs(action(p, T, 0.0, laser, atom) - s) / s < 1e-8);
        CHECK(std::abs(action_by_quadrature(p, T, 0.0, laser, atom) - s) / s < 1e-8);
    }

    TEST_CASE("action is additive and bounded below")
    {
        double worst = 0.0;
        for (double p : {-3.0, -1.1, 0.0, 0.4, 2.5})
            for (double t1 : {0.0, 40.0, 250.0})
                for (double t2 : {t1 + 1.0, t1 + 77.0, t1 + 300.0})
                    for (double t3 : {t2, t2 + 13.0, t2 + 400.0}) {
                        const double whole = action(p, t3, t1, laser, atom);
                        const double parts = action(p, t3, t2, laser, atom) + action(p, t2, t1, laser, atom);
                        worst = std::max(worst, std::abs(whole - parts) / std::max(1.0, std::abs(whole)));
                        CHECK(whole >= atom.ip * (t3 - t1) - 1e-9);
                    }
        CHECK(worst < 1e-6);
    }

    TEST_CASE("closed-form action agrees with adaptive quadrature")
    {
        for (double p : {-2.0, 0.1, 1.7})
            for (double t1 : {0.0, 123.0}) {
                const double t2 = t1 + 333.3;
                const double a = action(p, t2, t1, laser, atom);
                CHECK(std::abs(action_by_quadrature(p, t2, t1, laser, atom) - a) / a < 1e-10);
            }
    }

    TEST_CASE("excursion is the momentum derivative of the action")
    {
        const double h = 1e-4;
        double worst = 0.0;
        for (double p = -3.0; p <= 3.0; p += 0.37)
            for (double t : {10.0, 55.5, 200.0, 700.0, 880.0}) {
                const double fd = (action(p + h, t, 0.0, laser, atom) - action(p - h, t, 0.0, laser, atom)) / (2 * h);
                const double dr = excursion(p, t, 0.0, laser);
                worst = std::max(worst, std::abs(dr - fd) / std::max(1.0, std::abs(dr)));
            }
        CHECK(worst < 1e-6);
    }

    TEST_CASE("matrix element values and symmetry")
    {
        const AtomSpec unit{0.5, 1.0};
        CHECK(dipole_matrix_element(0.0, atom) == cplx(0.0, 0.0));
        const cplx d = dipole_matrix_element(1.0, unit);
        CHECK(d.real() == 0.0);
        CHECK(d.imag() == doctest::Approx(2.0 * std::sqrt(2.0) / pi).epsilon(1e-15));
        CHECK(d.imag() == doctest::Approx(0.9003).epsilon(1e-4));
        for (double p : {0.01, 0.3, 1.0, 2.9, 17.0}) {
            CHECK(dipole_matrix_element(-p, atom) == -dipole_matrix_element(p, atom));
            CHECK(dipole_matrix_element(p, atom).real() == 0.0);
            CHECK(dipole_matrix_element(p, atom).imag() == dipole_amplitude(p, atom.kappa));
        }
    }

    TEST_CASE("matrix element peaks at p squared equal to kappa squared over three")
    {
        for (double kappa : {0.5, 1.0}) {
            const AtomSpec a{0.5, kappa};
            const int n = 2000001;
            double best = -1.0, at = 0.0;
            for (int i = 0; i < n; ++i) {
                const double p = 3.0 * i / (n - 1);
                const double m = std::abs(dipole_matrix_element(p, a));
                if (m > best) best = m, at = p;
            }
            CHECK(at == doctest::Approx(kappa / std::sqrt(3.0)).epsilon(1e-5));
        }
    }

    TEST_CASE("matrix element derivative matches finite differences")
    {
        const double h = 1e-5;
        for (double p : {-2.0, -0.3, 0.0, 0.29, 1.5}) {
            const double fd = (dipole_amplitude(p + h, 0.5) - dipole_amplitude(p - h, 0.5)) / (2 * h);
            CHECK(dipole_amplitude_derivative(p, 0.5) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}
