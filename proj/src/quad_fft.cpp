#include "hhgq/quad_fft.hpp"

#include "hhgq/config.hpp"

#include <fftw3.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <exception>
#include <mutex>
#include <thread>

namespace hhgq {

Grid1D::Grid1D(double lo, double hi, std::size_t count) : min(lo), max(hi), n(count)
{
    if (count < 2) throw std::invalid_argument("Grid1D: need at least 2 points");
    if (!(hi > lo)) throw std::invalid_argument("Grid1D: max must exceed min");
}

double Grid1D::at(std::size_t i) const
{
    if (i + 1 == n) return max;
    return min + static_cast<double>(i) * spacing();
}

std::vector<double> Grid1D::points() const
{
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = at(i);
    return x;
}

unsigned ExecPolicy::resolved() const
{
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void parallel_for(std::size_t n, const ExecPolicy& policy, const std::function<void(std::size_t)>& fn)
{
    if (n == 0) return;
    const std::size_t workers = std::min<std::size_t>(policy.resolved(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = n * w / workers;
            const std::size_t hi = n * (w + 1) / workers;
            pool.emplace_back([&, w, lo, hi] {
                try {
                    for (std::size_t i = lo; i < hi; ++i) fn(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct CubicSpline::Impl {
    gsl_interp_accel* acc = nullptr;
    gsl_spline* spline = nullptr;
    double lo = 0.0, hi = 0.0;

    ~Impl()
    {
        if (spline) gsl_spline_free(spline);
        if (acc) gsl_interp_accel_free(acc);
    }
};

CubicSpline::CubicSpline(const Grid1D& grid, std::span<const double> y) : impl_(std::make_unique<Impl>())
{
    if (y.size() != grid.n) throw std::invalid_argument("CubicSpline: size mismatch");
    if (grid.n < 3) throw std::invalid_argument("CubicSpline: need at least 3 points");
    static const bool handler_off = [] {
        gsl_set_error_handler_off();
        return true;
    }();
    (void)handler_off;
    const auto x = grid.points();
    impl_->spline = gsl_spline_alloc(gsl_interp_cspline, grid.n);
    impl_->acc = gsl_interp_accel_alloc();
    if (gsl_spline_init(impl_->spline, x.data(), y.data(), grid.n) != GSL_SUCCESS)
        throw std::runtime_error("CubicSpline: initialization failed");
    impl_->lo = grid.min;
    impl_->hi = grid.max;
}

CubicSpline::~CubicSpline() = default;
CubicSpline::CubicSpline(CubicSpline&&) noexcept = default;
CubicSpline& CubicSpline::operator=(CubicSpline&&) noexcept = default;

double CubicSpline::operator()(double x) const
{
    // eval_e without the shared accelerator keeps evaluation thread-safe
    double y = 0.0;
    const double xc = std::clamp(x, impl_->lo, impl_->hi);
    if (gsl_spline_eval_e(impl_->spline, xc, nullptr, &y) != GSL_SUCCESS)
        throw std::runtime_error("CubicSpline: evaluation failed");
    return y;
}

std::vector<double> periodic_points(double a, double b, std::size_t n)
{
    std::vector<double> t(n);
    const double dt = (b - a) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = a + static_cast<double>(i) * dt;
    return t;
}

std::vector<double> resample(const Grid1D& grid, std::span<const double> y, double a, double b, std::size_t n)
{
    CubicSpline s(grid, y);
    const auto t = periodic_points(a, b, n);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = s(t[i]);
    return out;
}

std::vector<cplx> resample(const Grid1D& grid, std::span<const cplx> y, double a, double b, std::size_t n)
{
    std::vector<double> re(y.size()), im(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        re[i] = y[i].real();
        im[i] = y[i].imag();
    }
    const auto r = resample(grid, std::span<const double>(re), a, b, n);
    const auto m = resample(grid, std::span<const double>(im), a, b, n);
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = {r[i], m[i]};
    return out;
}

namespace {

std::mutex& plan_mutex()
{
    static std::mutex m;
    return m;
}

}  // namespace

void fft_inplace(std::vector<cplx>& x)
{
    if (x.empty()) return;
    const int n = static_cast<int>(x.size());
    auto* data = reinterpret_cast<fftw_complex*>(x.data());
    fftw_plan plan;
    {
        std::lock_guard lock(plan_mutex());
        plan = fftw_plan_dft_1d(n, data, data, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    if (!plan) throw std::runtime_error("fft: plan creation failed");
    fftw_execute_dft(plan, data, data);
    std::lock_guard lock(plan_mutex());
    fftw_destroy_plan(plan);
}

std::vector<cplx> fft(std::span<const cplx> x)
{
    std::vector<cplx> out(x.begin(), x.end());
    fft_inplace(out);
    return out;
}

std::vector<cplx> fft(std::span<const double> x)
{
    std::vector<cplx> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = {x[i], 0.0};
    fft_inplace(out);
    return out;
}

std::size_t FourierSeries::bin_of_order(double q) const
{
    if (amplitude.empty()) throw std::logic_error("FourierSeries: empty");
    const double k = q * omega_l / d_omega();
    const auto idx = static_cast<long long>(std::llround(k));
    const auto n = static_cast<long long>(amplitude.size());
    return static_cast<std::size_t>(((idx % n) + n) % n);
}

FourierSeries fourier_series(std::span<const cplx> samples, double t_start, double dt, double omega_l)
{
    FourierSeries fs;
    fs.dt = dt;
    fs.t_start = t_start;
    fs.omega_l = omega_l;
    fs.amplitude = fft(samples);
    const std::size_t n = samples.size();
    fs.omega.resize(n);
    fs.order.resize(n);
    const double dw = 2.0 * pi / (static_cast<double>(n) * dt);
    for (std::size_t k = 0; k < n; ++k) {
        const double kk = k < (n + 1) / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
        fs.omega[k] = kk * dw;
        fs.order[k] = fs.omega[k] / omega_l;
        fs.amplitude[k] *= dt * std::polar(1.0, -fs.omega[k] * t_start);
    }
    return fs;
}

FourierSeries fourier_series(std::span<const double> samples, double t_start, double dt, double omega_l)
{
    std::vector<cplx> c(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) c[i] = {samples[i], 0.0};
    return fourier_series(std::span<const cplx>(c), t_start, dt, omega_l);
}

FourierSeries resample_fft(const Grid1D& grid, std::span<const double> y, double a, double b, std::size_t n_fft,
                           double omega_l)
{
    const auto r = resample(grid, y, a, b, n_fft);
    return fourier_series(std::span<const double>(r), a, (b - a) / static_cast<double>(n_fft), omega_l);
}

}  // namespace hhgq
