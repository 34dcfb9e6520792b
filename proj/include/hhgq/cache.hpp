#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "hhgq/dipole.hpp"

namespace hhgq {

// Binary layout (little-endian):
//   char[8]  magic "HHGQCACH"
//   u32      format version
//   u32      kind (1 = dipole, 2 = transition table)
//   u64      content hash
//   u64[4]   dims: dipole {n_t, warmup_index, 0, 0}; table {n_v, n_t, 0, 0}
//   f64[8]   grids: {t_min, t_max, v_min, v_max, t0, warmup_time, 0, 0}
//   payload  f64 values; dipole: samples[n_t];
//            table: d (re, im), dr, dv (re, im), each in index(iv, it) = it * n_v + iv order
inline constexpr char cache_magic[8] = {'H', 'H', 'G', 'Q', 'C', 'A', 'C', 'H'};
inline constexpr std::uint32_t cache_version = 1;

enum class CacheKind : std::uint32_t { dipole = 1, table = 2 };

struct CacheOptions {
    bool enabled = true;
    std::filesystem::path dir;  // empty = default_cache_dir()
};

// HHG_CACHE_DIR if set, otherwise ./cache
std::filesystem::path default_cache_dir();

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed = 14695981039346656037ull);

// Hashes of physics inputs only; output paths, thread counts and q never enter.
std::uint64_t dipole_key(const RunConfig& config, const Grid1D& time, const Grid1D& momentum);
std::uint64_t table_key(const RunConfig& config, const Grid1D& momentum, const Grid1D& time);

std::filesystem::path cache_path(const std::filesystem::path& dir, CacheKind kind, std::uint64_t key);
std::string hex(std::uint64_t key);

void cache_store(const std::filesystem::path& dir, std::uint64_t key, const DipoleRecord& rec);
void cache_store(const std::filesystem::path& dir, std::uint64_t key, const TransitionTable& tab);

// Empty on a miss, a corrupt file or any header mismatch.
std::optional<DipoleRecord> cache_load_dipole(const std::filesystem::path& dir, std::uint64_t key);
std::optional<TransitionTable> cache_load_table(const std::filesystem::path& dir, std::uint64_t key);

struct CacheReport {
    std::uint64_t key = 0;
    bool hit = false;
};

DipoleRecord cached_dipole(const RunConfig& config, const Grid1D& time, const Grid1D& momentum,
                           const CacheOptions& options, const ExecPolicy& policy, CacheReport* report = nullptr);
TransitionTable cached_table(const RunConfig& config, const Grid1D& momentum, const Grid1D& time,
                             const CacheOptions& options, const ExecPolicy& policy, CacheReport* report = nullptr);

}  // namespace hhgq
