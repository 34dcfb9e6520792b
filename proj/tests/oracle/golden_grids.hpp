#pragma once

// Grids behind the files in tests/golden. The acceptance suite rebuilds the
// same grids with the library to compare against them.

#include <vector>

#include "reference.hpp"

namespace golden {

inline const ref::Drive& dipole_drive()
{
    static const ref::Drive d{0.053, 0.057, 0.5, 0.5, 2};
    return d;
}
inline constexpr int dipole_time_points = 442;  // 2 ceil(4 pi / omega)
inline constexpr double dipole_p_lim = 3.0;
inline constexpr int dipole_n_p = 200;
inline constexpr int dipole_substeps = 200;

inline const ref::Drive& g2_drive()
{
    static const ref::Drive d{0.053, 0.057, 0.5, 0.5, 8};
    return d;
}
inline constexpr int g2_time_points = 24;
inline constexpr int g2_ref = 11;  // t = T with dt = T / 11
inline const std::vector<int> g2_offsets = {0, 3, 6, 9, 12};
inline constexpr double g2_v_lim = 5.0;
inline constexpr int g2_n_v = 40;
inline constexpr int g2_substeps = 2000;
inline const std::vector<int> g2_orders = {11, 13};

inline double g2_time_span() { return (g2_time_points - 1) * g2_drive().period() / g2_ref; }

}  // namespace golden
