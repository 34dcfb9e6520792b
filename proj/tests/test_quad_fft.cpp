#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "hhgq/config.hpp"
#include "hhgq/quad_fft.hpp"

using namespace hhgq;

namespace {

std::size_t argmax_abs(const std::vector<cplx>& x)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < x.size(); ++i)
        if (std::abs(x[i]) > std::abs(x[best])) best = i;
    return best;
}

std::vector<double> sample(const Grid1D& g, double (*f)(double))
{
    std::vector<double> y(g.n);
    for (std::size_t i = 0; i < g.n; ++i) y[i] = f(g.at(i));
    return y;
}

}  // namespace

TEST_SUITE("quad_fft")
{
    TEST_CASE("grid layout")
    {
        const Grid1D g(-3.0, 3.0, 7);
        CHECK(g.spacing() == 1.0);
        CHECK(g.at(0) == -3.0);
        CHECK(g.at(6) == 3.0);
        const auto pts = g.points();
        CHECK(std::is_sorted(pts.begin(), pts.end()));
        CHECK(pts.size() == 7);
    }

    TEST_CASE("adaptive quadrature on closed forms")
    {
        const auto s = adaptive_quad<double>([](double t) { return std::sin(t); }, 0.0, 2.0 * pi, 1e-12);
        CHECK(std::abs(s.value) < 1e-10);
        const auto p = adaptive_quad<double>([](double t) { return t * t; }, 0.0, 1.0, 1e-14);
        CHECK(p.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
        const double w = 0.057, T = 2.0 * pi / w;
        const auto c = adaptive_quad<double>([&](double t) { return std::cos(w * t) * std::cos(w * t); }, 0.0, T, 1e-12);
        CHECK(c.value == doctest::Approx(T / 2).epsilon(1e-12));
        CHECK(c.value == doctest::Approx(55.116).epsilon(1e-5));
        const auto z = adaptive_quad<cplx>([](double t) { return std::polar(1.0, 3.0 * t); }, 0.0, 1.0, 1e-13);
        CHECK(std::abs(z.value - (std::polar(1.0, 3.0) - 1.0) / cplx(0.0, 3.0)) < 1e-12);
    }

    TEST_CASE("adaptive quadrature reports non-convergence with its best estimate")
    {
        auto f = [](double t) { return std::sin(500.0 * t) * std::exp(-t); };
        try {
            adaptive_quad<double>(f, 0.0, 100.0, 1e-15, 0.0, 8);
            FAIL("no error");
        } catch (const QuadratureError& e) {
            CHECK(std::isfinite(e.best_estimate().real()));
            CHECK(e.error_estimate() > 1e-15);
        }
        CHECK_THROWS_AS(adaptive_quad<double>(f, 1.0, 0.0, 1e-8), std::invalid_argument);
    }

    TEST_CASE("trapezoid rule")
    {
        for (int n : {2, 3, 10, 101}) {
            CHECK(trapezoid(std::vector<double>(n, 1.0), 1.0 / (n - 1)) == doctest::Approx(1.0).epsilon(1e-15));
            std::vector<double> ramp(n);
            for (int i = 0; i < n; ++i) ramp[i] = static_cast<double>(i) / (n - 1);
            CHECK(trapezoid(ramp, 1.0 / (n - 1)) == doctest::Approx(0.5).epsilon(1e-15));
        }
        const Grid1D g(-5.0, 5.0, 2001);
        const auto y = sample(g, [](double t) { return std::exp(-t * t); });
        CHECK(std::abs(trapezoid(y, g.spacing()) - std::sqrt(pi)) < 1e-8);
        CHECK_THROWS_AS(trapezoid(std::vector<double>{1.0}, 1.0), std::invalid_argument);
    }

    TEST_CASE("quadrature and trapezoid agree on smooth integrands")
    {
        const Grid1D g(0.0, 3.0, 4001);
        auto f = [](double t) { return std::exp(-t) * std::cos(2.0 * t); };
        std::vector<double> y(g.n);
        for (std::size_t i = 0; i < g.n; ++i) y[i] = f(g.at(i));
        const double q = adaptive_quad<double>(f, 0.0, 3.0, 1e-13).value;
        CHECK(std::abs(trapezoid(y, g.spacing()) - q) / std::abs(q) < 1e-6);
        const auto run = cumulative_trapezoid(std::span<const double>(y), g.spacing());
        CHECK(run.front() == 0.0);
        CHECK(run.back() == doctest::Approx(trapezoid(y, g.spacing())).epsilon(1e-13));
    }

    TEST_CASE("grid derivative")
    {
        const Grid1D g(-3.0, 3.0, 2000);
        for (double v : grid_derivative(std::vector<double>(g.n, 4.2), g.spacing())) CHECK(v == 0.0);
        std::vector<double> ramp(g.n);
        for (std::size_t i = 0; i < g.n; ++i) ramp[i] = 2.0 * g.at(i) + 1.0;
        for (double v : grid_derivative(ramp, g.spacing())) CHECK(v == doctest::Approx(2.0).epsilon(1e-9));
        const auto d = grid_derivative(sample(g, [](double p) { return std::sin(p); }), g.spacing());
        double worst = 0.0;
        for (std::size_t i = 0; i < g.n; ++i) worst = std::max(worst, std::abs(d[i] - std::cos(g.at(i))));
        CHECK(worst < 1e-5);
        CHECK_THROWS_AS(grid_derivative(std::vector<double>{1.0, 2.0}, 1.0), std::invalid_argument);
    }

    TEST_CASE("cubic spline and resampling")
    {
        const Grid1D g(0.0, 2.0 * pi, 400);
        const auto y = sample(g, [](double t) { return std::sin(t); });
        const CubicSpline s(g, y);
        for (double t : {0.1, 1.0, 2.5, 4.0, 6.0}) CHECK(std::abs(s(t) - std::sin(t)) < 1e-6);
        const auto r = resample(g, std::span<const double>(y), 0.0, 2.0 * pi, 1000);
        const auto pts = periodic_points(0.0, 2.0 * pi, 1000);
        REQUIRE(r.size() == 1000);
        CHECK(pts.back() < 2.0 * pi);
        double worst = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) worst = std::max(worst, std::abs(r[i] - std::sin(pts[i])));
        CHECK(worst < 1e-6);
    }

    TEST_CASE("frequency axis follows the transform bin layout")
    {
        const std::size_t n = 10;
        const double dt = 0.3;
        const auto fs = fourier_series(std::vector<double>(n, 1.0), 0.0, dt, 2.0);
        CHECK(fs.size() == n);
        CHECK(fs.d_omega() == doctest::Approx(2.0 * pi / (n * dt)));
        CHECK(fs.omega[0] == 0.0);
        CHECK(fs.omega[4] > 0.0);
        CHECK(fs.omega[5] < 0.0);
        CHECK(fs.omega[9] == doctest::Approx(-fs.d_omega()));
        for (std::size_t k = 0; k < n; ++k) CHECK(fs.order[k] == doctest::Approx(fs.omega[k] / 2.0));
        CHECK(fs.amplitude[0] == cplx(n * dt, 0.0));
    }

    TEST_CASE("transform sign convention puts exp(+i w t) at +w")
    {
        const double w0 = 0.057, T = 2.0 * pi / w0;
        const std::size_t n = 7 * 64;
        const double t0 = T, dt = 7.0 * T / n;
        std::vector<cplx> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = std::polar(1.0, w0 * (t0 + i * dt));
        const auto fs = fourier_series(std::span<const cplx>(x), t0, dt, w0);
        const auto k = argmax_abs(fs.amplitude);
        CHECK(fs.order[k] == doctest::Approx(1.0));
        CHECK(std::abs(fs.amplitude[k] - cplx(7.0 * T, 0.0)) < 1e-9 * 7.0 * T);
    }

    TEST_CASE("windowed cosine transform matches the continuous integral")
    {
        const double w0 = 0.057, T = 2.0 * pi / w0;
        const Grid1D g(0.0, 8.0 * T, 1764);
        const auto y = sample(g, [](double t) { return std::cos(0.057 * t); });
        const auto fs = resample_fft(g, std::span<const double>(y), T, 8.0 * T, 10000, w0);
        const std::size_t k = fs.bin_of_order(1.0);
        CHECK(fs.order[k] == doctest::Approx(1.0));
        CHECK(argmax_abs(fs.amplitude) == k);
        CHECK(std::abs(fs.amplitude[k] - cplx(3.5 * T, 0.0)) < 1e-4 * 3.5 * T);
        CHECK(std::abs(fs.amplitude[fs.bin_of_order(-1.0)] - cplx(3.5 * T, 0.0)) < 1e-4 * 3.5 * T);
    }

    TEST_CASE("two cosines give two equal peaks")
    {
        const double w0 = 0.057, T = 2.0 * pi / w0;
        const Grid1D g(0.0, 8.0 * T, 1764);
        const auto y = sample(g, [](double t) { return std::cos(3 * 0.057 * t) + std::cos(5 * 0.057 * t); });
        const auto fs = resample_fft(g, std::span<const double>(y), T, 8.0 * T, 10000, w0);
        std::vector<std::pair<double, double>> peaks;
        for (std::size_t k = 0; k < fs.size(); ++k)
            if (fs.omega[k] > 0.0) peaks.push_back({std::abs(fs.amplitude[k]), fs.order[k]});
        std::sort(peaks.rbegin(), peaks.rend());
        const double lo = std::min(peaks[0].second, peaks[1].second);
        const double hi = std::max(peaks[0].second, peaks[1].second);
        CHECK(lo == doctest::Approx(3.0));
        CHECK(hi == doctest::Approx(5.0));
        CHECK(std::abs(peaks[0].first - peaks[1].first) / peaks[0].first < 0.01);
        CHECK(peaks[2].first < 1e-2 * peaks[1].first);
    }

    TEST_CASE("Parseval identity")
    {
        const double w0 = 0.057, T = 2.0 * pi / w0;
        const Grid1D g(0.0, 8.0 * T, 1764);
        const auto y = sample(g, [](double t) {
            return std::cos(0.057 * t) * std::exp(-1e-3 * t) + 0.3 * std::sin(13 * 0.057 * t + 0.2);
        });
        const std::size_t n = 10000;
        const auto x = resample(g, std::span<const double>(y), T, 8.0 * T, n);
        const auto fs = resample_fft(g, std::span<const double>(y), T, 8.0 * T, n, w0);
        double time_side = 0.0, freq_side = 0.0;
        for (double v : x) time_side += v * v;
        time_side *= fs.dt;
        for (const auto& a : fs.amplitude) freq_side += std::norm(a);
        freq_side *= fs.d_omega() / (2.0 * pi);
        CHECK(std::abs(time_side - freq_side) / time_side < 1e-6);
    }

    TEST_CASE("parallel_for covers every index once for any thread count")
    {
        for (unsigned threads : {1u, 2u, 3u, 8u}) {
            std::vector<int> hits(1001, 0);
            parallel_for(hits.size(), ExecPolicy{threads}, [&](std::size_t i) { hits[i] += 1; });
            CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
        }
        CHECK(ExecPolicy{0}.resolved() >= 1);
    }
}
