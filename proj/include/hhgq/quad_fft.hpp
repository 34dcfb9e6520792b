#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhgq {

using cplx = std::complex<double>;

struct Grid1D {
    double min = 0.0;
    double max = 1.0;
    std::size_t n = 2;

    Grid1D() = default;
    Grid1D(double lo, double hi, std::size_t count);

    double spacing() const { return (max - min) / static_cast<double>(n - 1); }
    double at(std::size_t i) const;
    std::vector<double> points() const;
};

struct ExecPolicy {
    unsigned threads = 0;  // 0 = hardware concurrency

    unsigned resolved() const;
};

// Calls fn(i) for i in [0, n). Work is split into contiguous static chunks;
// callers write results by index, so output never depends on the thread count.
void parallel_for(std::size_t n, const ExecPolicy& policy, const std::function<void(std::size_t)>& fn);

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, cplx best, double error)
        : std::runtime_error(what), best_(best), error_(error) {}
    cplx best_estimate() const { return best_; }
    double error_estimate() const { return error_; }

private:
    cplx best_;
    double error_;
};

template <typename T>
struct QuadResult {
    T value;
    double error;
    int subdivisions;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule.
inline constexpr std::array<double, 11> gk21_x = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> gk21_wk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208067816230, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> gk21_wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const cplx& x) { return std::abs(x); }
inline cplx as_cplx(double x) { return {x, 0.0}; }
inline cplx as_cplx(const cplx& x) { return x; }

template <typename T, typename F>
void gk21(F& f, double a, double b, T& result, double& error)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const T fc = f(c);
    T rk = fc * gk21_wk[10];
    T rg{};
    for (int j = 0; j < 10; ++j) {
        const double dx = h * gk21_x[j];
        const T f1 = f(c - dx);
        const T f2 = f(c + dx);
        rk += (f1 + f2) * gk21_wk[j];
        if (j % 2 == 1) rg += (f1 + f2) * gk21_wg[j / 2];
    }
    result = rk * h;
    error = magnitude((rk - rg) * h);
}

}  // namespace detail

// Global adaptive Gauss-Kronrod 10/21 quadrature with bisection of the
// interval carrying the largest error. At most max_subdivisions intervals.
template <typename T, typename F>
QuadResult<T> adaptive_quad(F&& f, double a, double b, double abs_tol, double rel_tol = 0.0,
                            int max_subdivisions = 1000)
{
    if (!(a <= b)) throw std::invalid_argument("adaptive_quad: requires a <= b");
    if (a == b) return {T{}, 0.0, 1};
    struct Piece {
        double a, b;
        T value;
        double error;
        bool operator<(const Piece& o) const { return error < o.error; }
    };
    std::priority_queue<Piece> heap;
    Piece first{a, b, T{}, 0.0};
    detail::gk21<T>(f, a, b, first.value, first.error);
    T total = first.value;
    double total_err = first.error;
    heap.push(first);
    int pieces = 1;
    auto target = [&] { return std::max(abs_tol, rel_tol * detail::magnitude(total)); };
    while (total_err > target()) {
        if (pieces >= max_subdivisions) {
            throw QuadratureError("adaptive_quad: no convergence after " + std::to_string(pieces) +
                                      " subdivisions on [" + std::to_string(a) + ", " + std::to_string(b) + "]",
                                  detail::as_cplx(total), total_err);
        }
        Piece worst = heap.top();
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        if (!(m > worst.a && m < worst.b)) {
            throw QuadratureError("adaptive_quad: interval underflow", detail::as_cplx(total), total_err);
        }
        Piece left{worst.a, m, T{}, 0.0};
        Piece right{m, worst.b, T{}, 0.0};
        detail::gk21<T>(f, left.a, left.b, left.value, left.error);
        detail::gk21<T>(f, right.a, right.b, right.value, right.error);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++pieces;
        if (total_err <= target()) {
            // re-sum to remove drift from the running updates
            T s{};
            double e = 0.0;
            auto copy = heap;
            std::vector<Piece> all;
            while (!copy.empty()) {
                all.push_back(copy.top());
                copy.pop();
            }
            std::sort(all.begin(), all.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
            for (const auto& p : all) {
                s += p.value;
                e += p.error;
            }
            total = s;
            total_err = e;
        }
    }
    return {total, total_err, pieces};
}

template <typename T>
T pairwise_sum(std::span<const T> x)
{
    if (x.size() <= 8) {
        T s{};
        for (const auto& v : x) s += v;
        return s;
    }
    const std::size_t h = x.size() / 2;
    return pairwise_sum(x.subspan(0, h)) + pairwise_sum(x.subspan(h));
}

// Composite trapezoid with uniform spacing dx.
template <typename T>
T trapezoid(std::span<const T> y, double dx)
{
    if (y.size() < 2) throw std::invalid_argument("trapezoid: need at least 2 samples");
    const T inner = pairwise_sum(y.subspan(1, y.size() - 2));
    return dx * (inner + 0.5 * (y.front() + y.back()));
}

template <typename T>
T trapezoid(const std::vector<T>& y, double dx)
{
    return trapezoid(std::span<const T>(y), dx);
}

// Running trapezoid: out[k] = integral from x_0 to x_k.
template <typename T>
std::vector<T> cumulative_trapezoid(std::span<const T> y, double dx)
{
    std::vector<T> out(y.size());
    if (y.empty()) return out;
    out[0] = T{};
    for (std::size_t k = 1; k < y.size(); ++k) out[k] = out[k - 1] + 0.5 * dx * (y[k - 1] + y[k]);
    return out;
}

// Central differences inside, second-order one-sided at the ends.
template <typename T>
std::vector<T> grid_derivative(std::span<const T> y, double dx)
{
    const std::size_t n = y.size();
    if (n < 3) throw std::invalid_argument("grid_derivative: need at least 3 samples");
    std::vector<T> d(n);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * dx);
    d[0] = (4.0 * (y[1] - y[0]) - (y[2] - y[0])) / (2.0 * dx);
    d[n - 1] = (4.0 * (y[n - 1] - y[n - 2]) - (y[n - 1] - y[n - 3])) / (2.0 * dx);
    return d;
}

template <typename T>
std::vector<T> grid_derivative(const std::vector<T>& y, double dx)
{
    return grid_derivative(std::span<const T>(y), dx);
}

// Natural cubic spline on a uniform grid (GSL backed).
class CubicSpline {
public:
    CubicSpline(const Grid1D& grid, std::span<const double> y);
    ~CubicSpline();
    CubicSpline(const CubicSpline&) = delete;
    CubicSpline& operator=(const CubicSpline&) = delete;
    CubicSpline(CubicSpline&&) noexcept;
    CubicSpline& operator=(CubicSpline&&) noexcept;

    double operator()(double x) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Uniform sampling of [a, b) with n points, endpoint excluded.
std::vector<double> periodic_points(double a, double b, std::size_t n);

// Cubic interpolation of (grid, y) onto periodic_points(a, b, n).
std::vector<double> resample(const Grid1D& grid, std::span<const double> y, double a, double b, std::size_t n);
std::vector<cplx> resample(const Grid1D& grid, std::span<const cplx> y, double a, double b, std::size_t n);

// Unnormalized DFT, X_k = sum_n x_n exp(-2 pi i k n / N) (FFTW backed).
std::vector<cplx> fft(std::span<const cplx> x);
std::vector<cplx> fft(std::span<const double> x);
void fft_inplace(std::vector<cplx>& x);

// Discrete approximation of int f(t) exp(-i w t) dt over [t_start, t_start + n dt).
struct FourierSeries {
    std::vector<double> omega;
    std::vector<double> order;  // omega / omega_l
    std::vector<cplx> amplitude;
    double dt = 0.0;
    double t_start = 0.0;
    double omega_l = 1.0;
    const char* normalization = "dt*sum x_n exp(-i w t_n)";

    std::size_t size() const { return amplitude.size(); }
    double d_omega() const { return omega.size() > 1 ? omega[1] - omega[0] : 0.0; }
    std::size_t bin_of_order(double q) const;
};

FourierSeries fourier_series(std::span<const cplx> samples, double t_start, double dt, double omega_l);
FourierSeries fourier_series(std::span<const double> samples, double t_start, double dt, double omega_l);

// Cubic resampling of the window [a, b) to n_fft points followed by the transform.
FourierSeries resample_fft(const Grid1D& grid, std::span<const double> y, double a, double b,
                           std::size_t n_fft, double omega_l);

}  // namespace hhgq
