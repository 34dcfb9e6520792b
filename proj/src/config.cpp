#include "hhgq/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hhgq {

namespace {

std::string join(const std::vector<std::string>& items)
{
    std::string out = "invalid configuration:";
    for (const auto& s : items) out += "\n  " + s;
    return out;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string format_double(double x)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    (void)ec;
    return std::string(buf, ptr);
}

bool parse_double(const std::string& s, double& out)
{
    const char* b = s.data();
    const char* e = b + s.size();
    auto [ptr, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && ptr == e;
}

template <typename I>
bool parse_int(const std::string& s, I& out)
{
    const char* b = s.data();
    const char* e = b + s.size();
    auto [ptr, ec] = std::from_chars(b, e, out);
    if (ec == std::errc() && ptr == e) return true;
    // accept integral values written in floating notation, e.g. 1e7
    double d;
    if (!parse_double(s, d) || !std::isfinite(d) || d != std::floor(d)) return false;
    if (std::abs(d) > 9.0e18) return false;
    out = static_cast<I>(d);
    return static_cast<double>(out) == d;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::runtime_error(join(problems)), problems_(std::move(problems))
{
}

int default_time_points(double omega_l, int n_cycles)
{
    return 2 * static_cast<int>(std::ceil(2.0 * pi * n_cycles / omega_l));
}

void validate(const RunConfig& c)
{
    std::vector<std::string> bad;
    auto positive = [&](const char* key, double v) {
        if (!std::isfinite(v) || !(v > 0.0)) bad.push_back(std::string(key) + " must be finite and > 0");
    };
    if (!std::isfinite(c.e0) || c.e0 < 0.0) bad.push_back("e0 must be finite and >= 0");
    positive("omega_l", c.omega_l);
    positive("ip", c.ip);
    positive("kappa", c.kappa);
    positive("p_lim", c.p_lim);
    positive("g2_p_lim", c.g2_p_lim);
    positive("quad_tol", c.quad_tol);
    if (!std::isfinite(c.phase)) bad.push_back("phase must be finite");
    if (c.n_cycles < 1) bad.push_back("n_cycles must be >= 1");
    if (c.n_els < 2) bad.push_back("n_els must be >= 2");
    if (c.g2_n_els < 2) bad.push_back("g2_n_els must be >= 2");
    if (c.n_t != 0 && c.n_t < 2) bad.push_back("n_t must be >= 2 (or 0 for the default)");
    if (c.warmup_cycles < 0 || c.warmup_cycles >= c.n_cycles)
        bad.push_back("warmup_cycles must satisfy 0 <= warmup_cycles < n_cycles");
    if (c.q < 1) bad.push_back("q must be >= 1");
    if (c.n_atoms < 1) bad.push_back("n_atoms must be >= 1");
    if (c.tau_samples < 2) bad.push_back("tau_samples must be >= 2");
    if (c.q_max < 1) bad.push_back("q_max must be >= 1");
    if (bad.empty()) {
        const int nt = c.n_t != 0 ? c.n_t : default_time_points(c.omega_l, c.n_cycles);
        if (c.n_fft < nt) bad.push_back("n_fft must be >= n_t (" + std::to_string(nt) + ")");
    }
    if (!bad.empty()) throw ValidationError(std::move(bad));
}

DerivedQuantities derive(const RunConfig& c)
{
    validate(c);
    DerivedQuantities d{};
    d.period = 2.0 * pi / c.omega_l;
    d.pulse_duration = c.n_cycles * d.period;
    d.warmup_time = c.warmup_cycles * d.period;
    d.omega_q = c.q * c.omega_l;
    d.ponderomotive = c.e0 * c.e0 / (4.0 * c.omega_l * c.omega_l);
    d.cutoff_energy = c.ip + 3.17 * d.ponderomotive;
    d.cutoff_order = d.cutoff_energy / c.omega_l;
    d.n_t = c.n_t != 0 ? c.n_t : default_time_points(c.omega_l, c.n_cycles);
    return d;
}

KeyValues parse_key_values(const std::string& text)
{
    KeyValues kv;
    std::vector<std::string> bad;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            bad.push_back("line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (key.empty()) {
            bad.push_back("line " + std::to_string(lineno) + ": empty key");
            continue;
        }
        kv[key] = value;
    }
    if (!bad.empty()) throw ValidationError(std::move(bad));
    return kv;
}

KeyValues read_key_values(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_key_values(ss.str());
}

void apply_overrides(RunConfig& c, const KeyValues& values)
{
    std::vector<std::string> bad;
    for (const auto& [key, value] : values) {
        auto real = [&](double& field) {
            if (!parse_double(value, field)) bad.push_back(key + ": not a number: '" + value + "'");
        };
        auto integer = [&](auto& field) {
            if (!parse_int(value, field)) bad.push_back(key + ": not an integer: '" + value + "'");
        };
        if (key == "e0") real(c.e0);
        else if (key == "omega_l") real(c.omega_l);
        else if (key == "phase") real(c.phase);
        else if (key == "n_cycles") integer(c.n_cycles);
        else if (key == "ip") real(c.ip);
        else if (key == "kappa") real(c.kappa);
        else if (key == "p_lim") real(c.p_lim);
        else if (key == "n_els") integer(c.n_els);
        else if (key == "n_t") integer(c.n_t);
        else if (key == "n_fft") integer(c.n_fft);
        else if (key == "warmup_cycles") integer(c.warmup_cycles);
        else if (key == "q") integer(c.q);
        else if (key == "tau_samples") integer(c.tau_samples);
        else if (key == "n_atoms") integer(c.n_atoms);
        else if (key == "g2_p_lim") real(c.g2_p_lim);
        else if (key == "g2_n_els") integer(c.g2_n_els);
        else if (key == "q_max") integer(c.q_max);
        else if (key == "quad_tol") real(c.quad_tol);
        else if (key == "dv_mode") {
            if (value == "analytic") c.dv_mode = DerivativeMode::analytic;
            else if (value == "grid") c.dv_mode = DerivativeMode::grid;
            else bad.push_back(key + ": expected 'analytic' or 'grid', got '" + value + "'");
        }
        else bad.push_back(key + ": unknown key");
    }
    if (!bad.empty()) throw ValidationError(std::move(bad));
}

RunConfig load_config(const std::filesystem::path& path)
{
    RunConfig c;
    apply_overrides(c, read_key_values(path));
    validate(c);
    return c;
}

const char* to_string(DerivativeMode mode)
{
    return mode == DerivativeMode::grid ? "grid" : "analytic";
}

KeyValues to_key_values(const RunConfig& c)
{
    return {
        {"e0", format_double(c.e0)},
        {"omega_l", format_double(c.omega_l)},
        {"phase", format_double(c.phase)},
        {"n_cycles", std::to_string(c.n_cycles)},
        {"ip", format_double(c.ip)},
        {"kappa", format_double(c.kappa)},
        {"p_lim", format_double(c.p_lim)},
        {"n_els", std::to_string(c.n_els)},
        {"n_t", std::to_string(c.n_t)},
        {"n_fft", std::to_string(c.n_fft)},
        {"warmup_cycles", std::to_string(c.warmup_cycles)},
        {"q", std::to_string(c.q)},
        {"tau_samples", std::to_string(c.tau_samples)},
        {"n_atoms", std::to_string(c.n_atoms)},
        {"g2_p_lim", format_double(c.g2_p_lim)},
        {"g2_n_els", std::to_string(c.g2_n_els)},
        {"q_max", std::to_string(c.q_max)},
        {"dv_mode", to_string(c.dv_mode)},
        {"quad_tol", format_double(c.quad_tol)},
    };
}

std::string to_text(const RunConfig& c)
{
    std::string out;
    for (const auto& [k, v] : to_key_values(c)) out += k + " = " + v + "\n";
    return out;
}

}  // namespace hhgq
