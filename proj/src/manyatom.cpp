#include "hhgq/manyatom.hpp"

#include <cmath>
#include <stdexcept>

namespace hhgq {

double falling_factorial(std::int64_t n, int k)
{
    double r = 1.0;
    for (int j = 0; j < k; ++j) r *= static_cast<double>(n - j);
    return (n < k) ? 0.0 : r;
}

NScaling NScaling::of(std::int64_t n)
{
    if (n < 1) throw std::invalid_argument("n_atoms must be >= 1");
    return {n, static_cast<double>(n), falling_factorial(n, 3), falling_factorial(n, 4)};
}

FirstOrderPair g1_many(double coherent, double incoherent, std::int64_t n)
{
    if (n < 1) throw std::invalid_argument("n_atoms must be >= 1");
    const double nd = static_cast<double>(n);
    return {nd * nd * coherent, nd * incoherent};
}

G2Kernels g2_kernels(const DipoleRecord& dipole, const TransitionTable& table, int q, double omega_l,
                     std::size_t ref, const std::vector<std::size_t>& offsets, const ExecPolicy& policy)
{
    const auto single = g2_factorized(dipole, table, q, omega_l, ref, offsets, policy);
    std::vector<std::size_t> nodes{ref};
    for (auto off : offsets) nodes.push_back(ref + off);
    const auto x = g2_transforms(dipole, table, q, omega_l, nodes, policy);

    G2Kernels k;
    k.q = q;
    k.tau = single.tau;
    k.g1_coh_t = single.g1_coh_t;
    k.g1_inc_t = single.g1_inc_t;
    k.g1_coh_u = single.g1_coh_u;
    k.g1_inc_u = single.g1_inc_u;
    const std::size_t n = offsets.size();
    k.k4.resize(n);
    k.pairs.resize(n);
    k.k_coh.resize(n);
    std::vector<cplx> y(x.n_v);

    for (std::size_t s = 0; s < n; ++s) {
        k.k4[s] = single.numerator(s);
        // time arguments 1..4: windows (t, t+tau, t+tau, t), phases (-, -, +, +)
        const std::array<std::size_t, 4> slot = {0, s + 1, s + 1, 0};
        const std::array<bool, 4> minus = {true, true, false, false};
        auto xd = [&](int i) {
            const cplx z = x.dm[slot[static_cast<std::size_t>(i)]];
            return minus[static_cast<std::size_t>(i)] ? z : std::conj(z);
        };
        auto xg = [&](int i, std::size_t iv) {
            const std::size_t j = slot[static_cast<std::size_t>(i)];
            return minus[static_cast<std::size_t>(i)] ? x.gm[x.at(j, iv)] : std::conj(x.hm[x.at(j, iv)]);
        };
        auto xgc = [&](int i, std::size_t iv) {
            const std::size_t j = slot[static_cast<std::size_t>(i)];
            return minus[static_cast<std::size_t>(i)] ? x.hm[x.at(j, iv)] : std::conj(x.gm[x.at(j, iv)]);
        };
        static constexpr std::array<std::array<int, 4>, 6> parts = {{
            {0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}, {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1},
        }};
        for (std::size_t p = 0; p < parts.size(); ++p) {
            const auto [i, j, l, m] = parts[p];
            for (std::size_t iv = 0; iv < x.n_v; ++iv) y[iv] = xg(i, iv) * xgc(j, iv);
            const cplx pair = xd(i) * xd(j) + trapezoid(std::span<const cplx>(y), x.dv);
            k.pairs[s][p] = pair * (xd(l) * xd(m));
        }
        k.k_coh[s] = std::norm(x.dm[0]) * std::norm(x.dm[s + 1]);
    }
    return k;
}

ManyAtomSeries g2_many(const G2Kernels& k, std::int64_t n_atoms)
{
    const auto w = NScaling::of(n_atoms);
    const double nd = static_cast<double>(n_atoms);
    ManyAtomSeries s;
    s.n_atoms = n_atoms;
    s.truncated = n_atoms == 2 || n_atoms == 3;
    s.tau = k.tau;
    const std::size_t n = k.tau.size();
    s.numerator.resize(n);
    s.denom.resize(n);
    s.g2.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        cplx pair_sum{};
        for (const auto& p : k.pairs[t]) pair_sum += p;
        s.numerator[t] = (w.a * k.k4[t].real() + w.b * pair_sum.real()) + w.c * k.k_coh[t];
        const double first_t = nd * nd * k.g1_coh_t[t] + nd * k.g1_inc_t[t];
        const double first_u = nd * nd * k.g1_coh_u[t] + nd * k.g1_inc_u[t];
        s.denom[t] = first_t * first_u;
        if (!(s.denom[t] > 0.0)) throw DegenerateModeError("g2_many: zero first-order intensity");
        s.g2[t] = s.numerator[t] / s.denom[t];
    }
    return s;
}

std::vector<ManyAtomSeries> sweep_n(const G2Kernels& k, const std::vector<std::int64_t>& n_values)
{
    std::vector<ManyAtomSeries> out;
    out.reserve(n_values.size());
    for (auto n : n_values) out.push_back(g2_many(k, n));
    return out;
}

std::vector<std::int64_t> default_n_grid()
{
    std::vector<std::int64_t> out;
    for (double e : {2.0, 2.7, 3.4, 4.1, 4.8, 5.5, 6.7, 7.0})
        out.push_back(static_cast<std::int64_t>(std::llround(std::pow(10.0, e))));
    return out;
}

std::string truncation_label(std::int64_t n)
{
    return (n == 2 || n == 3) ? "truncated" : "leading-order";
}

}  // namespace hhgq
