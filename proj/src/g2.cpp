#include "hhgq/g2.hpp"

#include <cmath>
#include <string>

namespace hhgq {

std::vector<double> G2Grid::taus() const
{
    std::vector<double> out;
    for (auto off : offsets) out.push_back(time.at(ref + off) - time.at(ref));
    return out;
}

G2Grid g2_grid(const RunConfig& c)
{
    const auto d = derive(c);
    const double per_cycle = static_cast<double>(d.n_t) / c.n_cycles;
    const auto steps = static_cast<std::size_t>(c.tau_samples - 1);
    const auto m = static_cast<std::size_t>(std::ceil(per_cycle / static_cast<double>(steps)));
    const std::size_t P = steps * m;
    G2Grid g;
    g.time = Grid1D(0.0, 2.0 * d.period, 2 * P + 1);
    g.ref = P;
    for (std::size_t k = 0; k <= steps; ++k) g.offsets.push_back(k * m);
    return g;
}

G2Inputs g2_inputs(const RunConfig& c)
{
    return {g2_grid(c), momentum_grid(c.g2_p_lim, c.g2_n_els)};
}

double G2Components::max_imag_residue() const
{
    double r = 0.0;
    for (std::size_t k = 0; k < tau.size(); ++k) {
        const cplx n = numerator(k);
        if (n.real() != 0.0) r = std::max(r, std::abs(n.imag() / n.real()));
    }
    return r;
}

G2Transforms g2_transforms(const DipoleRecord& dipole, const TransitionTable& table, int q, double omega_l,
                           const std::vector<std::size_t>& nodes, const ExecPolicy& policy)
{
    if (dipole.time.n != table.n_t()) throw std::invalid_argument("g2_transforms: time grids differ");
    std::size_t last = 0;
    for (auto n : nodes) {
        if (n >= table.n_t()) throw std::invalid_argument("g2_transforms: node outside the time grid");
        last = std::max(last, n);
    }
    const std::size_t nv = table.n_v();
    const std::size_t nn = nodes.size();
    const double wq = q * omega_l;
    const double dt = table.time.spacing();
    const auto t = table.time.points();
    std::vector<cplx> e(last + 1);
    for (std::size_t j = 0; j <= last; ++j) e[j] = std::polar(1.0, -wq * t[j]);

    G2Transforms x;
    x.nodes = nodes;
    x.n_v = nv;
    x.dv = table.momentum.spacing();
    x.gm.resize(nn * nv);
    x.hm.resize(nn * nv);
    x.rm.resize(nn * nv);
    x.dgm.resize(nn * nv);

    auto cumulative = [&](auto&& f, auto&& store) {
        cplx acc{};
        cplx prev = e[0] * f(0);
        std::vector<cplx> at(last + 1);
        at[0] = acc;
        for (std::size_t j = 1; j <= last; ++j) {
            const cplx cur = e[j] * f(j);
            acc += 0.5 * dt * (prev + cur);
            at[j] = acc;
            prev = cur;
        }
        for (std::size_t k = 0; k < nn; ++k) store(k, at[nodes[k]]);
    };

    x.dm.resize(nn);
    x.wm.resize(nn);
    x.tm.resize(nn);
    cumulative([&](std::size_t j) { return cplx(dipole.samples[j], 0.0); }, [&](std::size_t k, cplx z) { x.dm[k] = z; });
    cumulative([&](std::size_t) { return cplx(1.0, 0.0); }, [&](std::size_t k, cplx z) { x.wm[k] = z; });
    cumulative([&](std::size_t j) { return cplx(t[j] - table.t0, 0.0); }, [&](std::size_t k, cplx z) { x.tm[k] = z; });

    parallel_for(nv, policy, [&](std::size_t iv) {
        cumulative([&](std::size_t j) { return table.amplitude(iv, j); },
                   [&](std::size_t k, cplx z) { x.gm[x.at(k, iv)] = z; });
        cumulative([&](std::size_t j) { return std::conj(table.amplitude(iv, j)); },
                   [&](std::size_t k, cplx z) { x.hm[x.at(k, iv)] = z; });
        cumulative([&](std::size_t j) { return cplx(table.excursion(iv, j), 0.0); },
                   [&](std::size_t k, cplx z) { x.rm[x.at(k, iv)] = z; });
        cumulative([&](std::size_t j) { return table.derivative(iv, j); },
                   [&](std::size_t k, cplx z) { x.dgm[x.at(k, iv)] = z; });
    });
    return x;
}

namespace {

// Momentum trapezoid of f(iv) in index order.
template <typename F>
cplx v_integral(std::size_t nv, double dv, F&& f)
{
    std::vector<cplx> y(nv);
    for (std::size_t iv = 0; iv < nv; ++iv) y[iv] = f(iv);
    return trapezoid(std::span<const cplx>(y), dv);
}

void check_offsets(const TransitionTable& table, std::size_t ref, const std::vector<std::size_t>& offsets)
{
    if (offsets.empty()) throw std::invalid_argument("g2: empty delay list");
    for (auto off : offsets)
        if (ref + off >= table.n_t()) throw std::invalid_argument("g2: delay runs past the time grid");
}

void init_components(G2Components& c, int q, const TransitionTable& table, std::size_t ref,
                     const std::vector<std::size_t>& offsets)
{
    const std::size_t n = offsets.size();
    c.q = q;
    c.t_ref = table.time.at(ref);
    c.tau.resize(n);
    for (std::size_t k = 0; k < n; ++k) c.tau[k] = table.time.at(ref + offsets[k]) - c.t_ref;
    c.t_coh.assign(n, {});
    c.t_cross.assign(n, {});
    c.t_cc.assign(n, {});
    for (auto& p : c.parts) p.assign(n, {});
    c.g1_coh_t.assign(n, 0.0);
    c.g1_inc_t.assign(n, 0.0);
    c.g1_coh_u.assign(n, 0.0);
    c.g1_inc_u.assign(n, 0.0);
}

}  // namespace

void g2_normalize(G2Components& c)
{
    const std::size_t n = c.tau.size();
    c.denom.resize(n);
    c.g2.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double g1_t = c.g1_coh_t[k] + c.g1_inc_t[k];
        const double g1_u = c.g1_coh_u[k] + c.g1_inc_u[k];
        c.denom[k] = g1_t * g1_u;
        if (!(c.denom[k] > 0.0) || !std::isfinite(c.denom[k]))
            throw DegenerateModeError("g2: zero first-order intensity for harmonic " + std::to_string(c.q));
        c.g2[k] = c.numerator(k).real() / c.denom[k];
    }
}

G2Components g2_factorized(const DipoleRecord& dipole, const TransitionTable& table, int q, double omega_l,
                           std::size_t ref, const std::vector<std::size_t>& offsets, const ExecPolicy& policy)
{
    check_offsets(table, ref, offsets);
    std::vector<std::size_t> nodes{ref};
    for (auto off : offsets) nodes.push_back(ref + off);
    const auto x = g2_transforms(dipole, table, q, omega_l, nodes, policy);
    const std::size_t nv = x.n_v;
    const double dv = x.dv;
    const std::size_t T = 0;  // transform slot of the reference time

    G2Components c;
    init_components(c, q, table, ref, offsets);

    const cplx dm_t = x.dm[T];
    const cplx dp_t = std::conj(dm_t);
    const double gc_t = std::norm(dm_t);
    const double gi_t = v_integral(nv, dv, [&](std::size_t iv) { return cplx(std::norm(x.gm[x.at(T, iv)]), 0.0); }).real();
    const double i4_v = v_integral(nv, dv, [&](std::size_t iv) { return cplx(std::norm(x.dgm[x.at(T, iv)]), 0.0); }).real();

    for (std::size_t k = 0; k < offsets.size(); ++k) {
        const std::size_t U = k + 1;
        auto G = [&](std::size_t j, std::size_t iv) { return x.gm[x.at(j, iv)]; };
        auto H = [&](std::size_t j, std::size_t iv) { return x.hm[x.at(j, iv)]; };
        auto R = [&](std::size_t j, std::size_t iv) { return x.rm[x.at(j, iv)]; };
        auto DG = [&](std::size_t j, std::size_t iv) { return x.dgm[x.at(j, iv)]; };
        const cplx dm_u = x.dm[U];
        const cplx dp_u = std::conj(dm_u);
        const cplx wm_u = x.wm[U];
        const cplx wp_u = std::conj(wm_u);
        const cplx tm_u = x.tm[U];
        const cplx tp_u = std::conj(tm_u);
        const cplx I(0.0, 1.0);

        const double gc_u = std::norm(dm_u);
        const double gi_u = v_integral(nv, dv, [&](std::size_t iv) { return cplx(std::norm(G(U, iv)), 0.0); }).real();
        c.g1_coh_t[k] = gc_t;
        c.g1_inc_t[k] = gi_t;
        c.g1_coh_u[k] = gc_u;
        c.g1_inc_u[k] = gi_u;
        const double g1_u = gc_u + gi_u;
        c.t_coh[k] = gc_t * g1_u;

        const cplx cross = dp_t * v_integral(nv, dv, [&](std::size_t iv) {
            return G(T, iv) * (H(U, iv) * dp_u + R(U, iv) * std::conj(G(U, iv)) + I * wm_u * std::conj(DG(U, iv)));
        });
        const cplx mirror = dm_t * v_integral(nv, dv, [&](std::size_t iv) {
            return std::conj(G(T, iv)) *
                   (std::conj(H(U, iv)) * dm_u + std::conj(R(U, iv)) * G(U, iv) - I * wp_u * DG(U, iv));
        });
        c.t_cross[k] = cross + mirror;

        const cplx gh = v_integral(nv, dv, [&](std::size_t iv) { return G(T, iv) * H(U, iv); });
        const cplx gh_c = v_integral(nv, dv, [&](std::size_t iv) { return std::conj(G(T, iv)) * std::conj(H(U, iv)); });
        const cplx i0 = gh * gh_c;
        const cplx i1 = v_integral(nv, dv, [&](std::size_t iv) { return cplx(std::norm(G(T, iv)) * std::norm(R(U, iv)), 0.0); });
        const cplx i2 = -I * wp_u * v_integral(nv, dv, [&](std::size_t iv) {
            return std::conj(G(T, iv)) * (DG(T, iv) * R(U, iv) + G(T, iv) * tm_u);
        });
        const cplx i3 = I * wm_u * v_integral(nv, dv, [&](std::size_t iv) {
            return G(T, iv) * (tp_u * std::conj(G(T, iv)) + std::conj(R(U, iv)) * std::conj(DG(T, iv)));
        });
        const cplx i4 = std::norm(wm_u) * i4_v;
        c.parts[0][k] = i0;
        c.parts[1][k] = i1;
        c.parts[2][k] = i2;
        c.parts[3][k] = i3;
        c.parts[4][k] = i4;
        c.t_cc[k] = i0 + i1 + i2 + i3 + i4;
    }
    g2_normalize(c);
    return c;
}

double brute_force_cost(std::size_t n_v, std::size_t ref, const std::vector<std::size_t>& offsets)
{
    const double nt = static_cast<double>(ref + 1);
    double cost = 0.0;
    for (auto off : offsets) {
        const double nu = static_cast<double>(ref + off + 1);
        cost += nt * nt * nu * nu * static_cast<double>(n_v);
    }
    return cost;
}

G2Components g2_brute_force(const DipoleRecord& dipole, const TransitionTable& table, int q, double omega_l,
                            std::size_t ref, const std::vector<std::size_t>& offsets, double cost_limit)
{
    check_offsets(table, ref, offsets);
    if (dipole.time.n != table.n_t()) throw std::invalid_argument("g2_brute_force: time grids differ");
    const double cost = brute_force_cost(table.n_v(), ref, offsets);
    if (cost > cost_limit)
        throw std::invalid_argument("g2_brute_force: estimated " + std::to_string(cost) +
                                    " integrand evaluations exceeds the limit " + std::to_string(cost_limit) +
                                    "; use coarser grids");
    const std::size_t nv = table.n_v();
    const double dv = table.momentum.spacing();
    const double dt = table.time.spacing();
    const double wq = q * omega_l;
    const double t0 = table.t0;
    const auto t = table.time.points();
    const auto& d = dipole.samples;
    const cplx I(0.0, 1.0);
    auto G = [&](std::size_t iv, std::size_t j) { return table.amplitude(iv, j); };
    auto R = [&](std::size_t iv, std::size_t j) { return table.excursion(iv, j); };
    auto DG = [&](std::size_t iv, std::size_t j) { return table.derivative(iv, j); };
    // trapezoid weight of node j in a window ending at node end
    auto w = [&](std::size_t j, std::size_t end) {
        if (end == 0) return 0.0;
        return (j == 0 || j == end) ? 0.5 * dt : dt;
    };

    G2Components c;
    init_components(c, q, table, ref, offsets);
    std::vector<cplx> y(nv);
    auto vint = [&](auto&& f) {
        for (std::size_t iv = 0; iv < nv; ++iv) y[iv] = f(iv);
        return trapezoid(std::span<const cplx>(y), dv);
    };

    for (std::size_t k = 0; k < offsets.size(); ++k) {
        const std::size_t a = ref;             // t1, t4 in [t0, t]
        const std::size_t b = ref + offsets[k];  // t2, t3 in [t0, t + tau]
        cplx coh{}, cross{}, cc[5] = {};
        for (std::size_t j1 = 0; j1 <= a; ++j1)
            for (std::size_t j4 = 0; j4 <= a; ++j4)
                for (std::size_t j2 = 0; j2 <= b; ++j2)
                    for (std::size_t j3 = 0; j3 <= b; ++j3) {
                        const double wt = w(j1, a) * w(j4, a) * w(j2, b) * w(j3, b);
                        if (wt == 0.0) continue;
                        const cplx ph = wt * std::polar(1.0, -wq * (t[j1] + t[j2] - t[j3] - t[j4]));
                        const double d1 = d[j1], d2 = d[j2], d3 = d[j3], d4 = d[j4];
                        const cplx mid = vint([&](std::size_t iv) { return G(iv, j2) * std::conj(G(iv, j3)); });
                        coh += ph * (d1 * d4 * (d2 * d3 + mid));
                        const cplx x1 = d4 * vint([&](std::size_t iv) {
                            return G(iv, j1) * (std::conj(G(iv, j2)) * d3 + R(iv, j2) * std::conj(G(iv, j3)) +
                                                I * std::conj(DG(iv, j3)));
                        });
                        const cplx x2 = d1 * vint([&](std::size_t iv) {
                            return std::conj(G(iv, j4)) *
                                   (G(iv, j3) * d2 + R(iv, j3) * G(iv, j2) - I * DG(iv, j2));
                        });
                        cross += ph * (x1 + x2);
                        const cplx b12 = vint([&](std::size_t iv) { return G(iv, j1) * std::conj(G(iv, j2)); });
                        const cplx b43 = vint([&](std::size_t iv) { return std::conj(G(iv, j4)) * G(iv, j3); });
                        cc[0] += ph * (b12 * b43);
                        cc[1] += ph * vint([&](std::size_t iv) {
                            return std::conj(G(iv, j4)) * G(iv, j1) * R(iv, j2) * R(iv, j3);
                        });
                        cc[2] += ph * (-I) * vint([&](std::size_t iv) {
                            return std::conj(G(iv, j4)) * (DG(iv, j1) * R(iv, j2) + G(iv, j1) * (t[j2] - t0));
                        });
                        cc[3] += ph * I * vint([&](std::size_t iv) {
                            return G(iv, j1) * (std::conj(DG(iv, j4)) * R(iv, j3) + std::conj(G(iv, j4)) * (t[j3] - t0));
                        });
                        cc[4] += ph * vint([&](std::size_t iv) { return std::conj(DG(iv, j4)) * DG(iv, j1); });
                    }
        c.t_coh[k] = coh;
        c.t_cross[k] = cross;
        for (int p = 0; p < 5; ++p) c.parts[static_cast<std::size_t>(p)][k] = cc[p];
        c.t_cc[k] = cc[0] + cc[1] + cc[2] + cc[3] + cc[4];

        // first-order intensities by the same literal double sums
        auto intensity = [&](std::size_t end, double& gc, double& gi) {
            cplx sc{}, si{};
            for (std::size_t j1 = 0; j1 <= end; ++j1)
                for (std::size_t j2 = 0; j2 <= end; ++j2) {
                    const cplx ph = w(j1, end) * w(j2, end) * std::polar(1.0, -wq * (t[j1] - t[j2]));
                    sc += ph * (d[j1] * d[j2]);
                    si += ph * vint([&](std::size_t iv) { return G(iv, j1) * std::conj(G(iv, j2)); });
                }
            gc = sc.real();
            gi = si.real();
        };
        intensity(a, c.g1_coh_t[k], c.g1_inc_t[k]);
        intensity(b, c.g1_coh_u[k], c.g1_inc_u[k]);
    }
    g2_normalize(c);
    return c;
}

G2Components fluctuation_free(const DipoleRecord& dipole, const TransitionTable& table, int q, double omega_l,
                              std::size_t ref, const std::vector<std::size_t>& offsets)
{
    TransitionTable zero = table;
    std::fill(zero.d.begin(), zero.d.end(), cplx{});
    std::fill(zero.dv.begin(), zero.dv.end(), cplx{});
    return g2_factorized(dipole, zero, q, omega_l, ref, offsets, ExecPolicy{1});
}

}  // namespace hhgq
