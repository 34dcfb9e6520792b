#include "hhgq/cache.hpp"

#include <bit>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <system_error>
#include <thread>

namespace hhgq {

static_assert(std::endian::native == std::endian::little, "cache format assumes a little-endian host");

namespace {

struct Header {
    char magic[8];
    std::uint32_t version;
    std::uint32_t kind;
    std::uint64_t hash;
    std::uint64_t dims[4];
    double grids[8];
};
static_assert(sizeof(Header) == 8 + 4 + 4 + 8 + 32 + 64);

class Hasher {
public:
    Hasher& add(double x)
    {
        if (x == 0.0) x = 0.0;  // fold -0
        h_ = fnv1a(&x, sizeof x, h_);
        return *this;
    }
    Hasher& add(std::int64_t x)
    {
        h_ = fnv1a(&x, sizeof x, h_);
        return *this;
    }
    Hasher& add(const char* s)
    {
        h_ = fnv1a(s, std::strlen(s) + 1, h_);
        return *this;
    }
    Hasher& add(const Grid1D& g)
    {
        return add(g.min).add(g.max).add(static_cast<std::int64_t>(g.n));
    }
    std::uint64_t value() const { return h_; }

private:
    std::uint64_t h_ = 14695981039346656037ull;
};

Hasher laser_atom(const RunConfig& c)
{
    Hasher h;
    h.add(c.e0).add(c.omega_l).add(c.phase).add(static_cast<std::int64_t>(c.n_cycles)).add(c.ip).add(c.kappa);
    return h;
}

template <typename T>
void write_block(std::ofstream& out, const std::vector<T>& v)
{
    out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(T)));
}

template <typename T>
bool read_block(std::ifstream& in, std::vector<T>& v, std::size_t n)
{
    v.resize(n);
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
    return static_cast<std::size_t>(in.gcount()) == n * sizeof(T);
}

Header make_header(CacheKind kind, std::uint64_t key)
{
    Header h{};
    std::memcpy(h.magic, cache_magic, 8);
    h.version = cache_version;
    h.kind = static_cast<std::uint32_t>(kind);
    h.hash = key;
    return h;
}

template <typename Writer>
void atomic_write(const std::filesystem::path& dir, CacheKind kind, std::uint64_t key, Writer&& writer)
{
    std::filesystem::create_directories(dir);
    const auto final_path = cache_path(dir, kind, key);
    auto tmp = final_path;
    tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
        writer(out);
        out.flush();
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw std::runtime_error("cache: write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, final_path);
}

std::optional<Header> open_checked(std::ifstream& in, CacheKind kind, std::uint64_t key)
{
    Header h{};
    in.read(reinterpret_cast<char*>(&h), sizeof h);
    if (static_cast<std::size_t>(in.gcount()) != sizeof h) return std::nullopt;
    if (std::memcmp(h.magic, cache_magic, 8) != 0) return std::nullopt;
    if (h.version != cache_version || h.kind != static_cast<std::uint32_t>(kind) || h.hash != key)
        return std::nullopt;
    return h;
}

bool at_eof(std::ifstream& in)
{
    in.peek();
    return in.eof();
}

}  // namespace

std::filesystem::path default_cache_dir()
{
    if (const char* env = std::getenv("HHG_CACHE_DIR"); env && *env) return env;
    return "cache";
}

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed)
{
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t dipole_key(const RunConfig& c, const Grid1D& time, const Grid1D& momentum)
{
    return laser_atom(c).add("dipole").add(time).add(momentum).add(c.quad_tol).value();
}

std::uint64_t table_key(const RunConfig& c, const Grid1D& momentum, const Grid1D& time)
{
    return laser_atom(c).add("table").add(momentum).add(time).add(to_string(c.dv_mode)).value();
}

std::string hex(std::uint64_t key)
{
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, key >>= 4) s[static_cast<std::size_t>(i)] = digits[key & 0xf];
    return s;
}

std::filesystem::path cache_path(const std::filesystem::path& dir, CacheKind kind, std::uint64_t key)
{
    return dir / (hex(key) + (kind == CacheKind::dipole ? ".dip" : ".tab"));
}

void cache_store(const std::filesystem::path& dir, std::uint64_t key, const DipoleRecord& rec)
{
    Header h = make_header(CacheKind::dipole, key);
    h.dims[0] = rec.time.n;
    h.dims[1] = rec.warmup_index;
    h.grids[0] = rec.time.min;
    h.grids[1] = rec.time.max;
    h.grids[5] = rec.warmup_time;
    atomic_write(dir, CacheKind::dipole, key, [&](std::ofstream& out) {
        out.write(reinterpret_cast<const char*>(&h), sizeof h);
        write_block(out, rec.samples);
    });
}

void cache_store(const std::filesystem::path& dir, std::uint64_t key, const TransitionTable& tab)
{
    Header h = make_header(CacheKind::table, key);
    h.dims[0] = tab.n_v();
    h.dims[1] = tab.n_t();
    h.grids[0] = tab.time.min;
    h.grids[1] = tab.time.max;
    h.grids[2] = tab.momentum.min;
    h.grids[3] = tab.momentum.max;
    h.grids[4] = tab.t0;
    atomic_write(dir, CacheKind::table, key, [&](std::ofstream& out) {
        out.write(reinterpret_cast<const char*>(&h), sizeof h);
        write_block(out, tab.d);
        write_block(out, tab.dr);
        write_block(out, tab.dv);
    });
}

std::optional<DipoleRecord> cache_load_dipole(const std::filesystem::path& dir, std::uint64_t key)
{
    std::ifstream in(cache_path(dir, CacheKind::dipole, key), std::ios::binary);
    if (!in) return std::nullopt;
    const auto h = open_checked(in, CacheKind::dipole, key);
    if (!h || h->dims[0] < 2 || !(h->grids[1] > h->grids[0])) return std::nullopt;
    DipoleRecord rec;
    rec.time = Grid1D(h->grids[0], h->grids[1], h->dims[0]);
    rec.warmup_index = h->dims[1];
    rec.warmup_time = h->grids[5];
    if (!read_block(in, rec.samples, h->dims[0]) || !at_eof(in)) return std::nullopt;
    return rec;
}

std::optional<TransitionTable> cache_load_table(const std::filesystem::path& dir, std::uint64_t key)
{
    std::ifstream in(cache_path(dir, CacheKind::table, key), std::ios::binary);
    if (!in) return std::nullopt;
    const auto h = open_checked(in, CacheKind::table, key);
    if (!h || h->dims[0] < 2 || h->dims[1] < 2) return std::nullopt;
    if (!(h->grids[1] > h->grids[0]) || !(h->grids[3] > h->grids[2])) return std::nullopt;
    TransitionTable tab;
    tab.time = Grid1D(h->grids[0], h->grids[1], h->dims[1]);
    tab.momentum = Grid1D(h->grids[2], h->grids[3], h->dims[0]);
    tab.t0 = h->grids[4];
    const std::size_t n = h->dims[0] * h->dims[1];
    if (!read_block(in, tab.d, n) || !read_block(in, tab.dr, n) || !read_block(in, tab.dv, n) || !at_eof(in))
        return std::nullopt;
    return tab;
}

DipoleRecord cached_dipole(const RunConfig& c, const Grid1D& time, const Grid1D& momentum, const CacheOptions& opt,
                           const ExecPolicy& policy, CacheReport* report)
{
    const auto key = dipole_key(c, time, momentum);
    const auto dir = opt.dir.empty() ? default_cache_dir() : opt.dir;
    if (report) *report = {key, false};
    if (opt.enabled) {
        if (auto rec = cache_load_dipole(dir, key)) {
            if (report) report->hit = true;
            return *rec;
        }
    }
    auto rec = compute_dipole(c, time, momentum, policy);
    if (opt.enabled) cache_store(dir, key, rec);
    return rec;
}

TransitionTable cached_table(const RunConfig& c, const Grid1D& momentum, const Grid1D& time, const CacheOptions& opt,
                             const ExecPolicy& policy, CacheReport* report)
{
    const auto key = table_key(c, momentum, time);
    const auto dir = opt.dir.empty() ? default_cache_dir() : opt.dir;
    if (report) *report = {key, false};
    if (opt.enabled) {
        if (auto tab = cache_load_table(dir, key)) {
            if (report) report->hit = true;
            return *tab;
        }
    }
    auto tab = compute_transition_table(c, momentum, time, policy);
    if (opt.enabled) cache_store(dir, key, tab);
    return tab;
}

}  // namespace hhgq
