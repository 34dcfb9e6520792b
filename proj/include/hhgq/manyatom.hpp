#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hhgq/g2.hpp"

namespace hhgq {

// N (N-1) ... (N-k+1); zero when N < k.
double falling_factorial(std::int64_t n, int k);

struct NScaling {
    std::int64_t n_atoms;
    double a;  // N
    double b;  // N!/(N-3)!
    double c;  // N!/(N-4)!

    static NScaling of(std::int64_t n_atoms);
};

struct FirstOrderPair {
    double coherent;
    double incoherent;
};

// (N^2 coh, N inc)
FirstOrderPair g1_many(double coherent, double incoherent, std::int64_t n_atoms);

// Single-atom kernels per delay: the four-point numerator, the six
// two-point partitions (12), (13), (14), (23), (24), (34) with the
// complementary mean-dipole factors, and |X[<d>](t)|^2 |X[<d>](t+tau)|^2.
struct G2Kernels {
    int q = 0;
    std::vector<double> tau;
    std::vector<cplx> k4;
    std::vector<std::array<cplx, 6>> pairs;
    std::vector<double> k_coh;
    std::vector<double> g1_coh_t, g1_inc_t, g1_coh_u, g1_inc_u;
};

inline constexpr std::array<const char*, 6> partition_names = {"12", "13", "14", "23", "24", "34"};

G2Kernels g2_kernels(const DipoleRecord& dipole, const TransitionTable& table, int q, double omega_l,
                     std::size_t ref, const std::vector<std::size_t>& offsets, const ExecPolicy& policy = {});

struct ManyAtomSeries {
    std::int64_t n_atoms = 1;
    bool truncated = false;  // N in {2, 3}: the dropped lower-order terms are not small
    std::vector<double> tau;
    std::vector<double> numerator;
    std::vector<double> denom;
    std::vector<double> g2;
};

ManyAtomSeries g2_many(const G2Kernels& kernels, std::int64_t n_atoms);

std::vector<ManyAtomSeries> sweep_n(const G2Kernels& kernels, const std::vector<std::int64_t>& n_values);

// log10 N in {2.0, 2.7, 3.4, 4.1, 4.8, 5.5, 6.7, 7.0}
std::vector<std::int64_t> default_n_grid();

std::string truncation_label(std::int64_t n_atoms);

}  // namespace hhgq
