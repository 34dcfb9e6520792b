#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhgq {

// Atomic units throughout. The light-matter prefactors (hbar, coupling g,
// quantization volume, intensity conversion eta) are fixed to one; every
// spectrum is therefore reported in arbitrary units.
struct Constants {
    static constexpr double hbar = 1.0;
    static constexpr double coupling = 1.0;
    static constexpr double eta = 1.0;
};

inline constexpr double pi = 3.14159265358979323846;

enum class DerivativeMode { analytic, grid };

struct RunConfig {
    double e0 = 0.053;
    double omega_l = 0.057;
    double phase = 0.0;
    int n_cycles = 8;
    double ip = 0.5;
    double kappa = 0.5;  // sqrt(ip / 2); use sqrt(2 ip) for the usual hydrogenic scale
    double p_lim = 3.0;
    int n_els = 2000;
    int n_t = 0;  // 0 selects 2 * ceil(2 pi n_cycles / omega_l)
    int n_fft = 10000;
    int warmup_cycles = 1;
    int q = 11;
    int tau_samples = 100;
    std::int64_t n_atoms = 1;

    double g2_p_lim = 5.0;
    int g2_n_els = 2500;
    int q_max = 35;
    DerivativeMode dv_mode = DerivativeMode::analytic;
    double quad_tol = 1e-10;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

struct DerivedQuantities {
    double period;
    double pulse_duration;
    double warmup_time;
    double omega_q;
    double ponderomotive;
    double cutoff_energy;
    double cutoff_order;
    int n_t;
};

// Throws ValidationError naming every offending key.
void validate(const RunConfig& config);

DerivedQuantities derive(const RunConfig& config);

int default_time_points(double omega_l, int n_cycles);

// Flat "key = value" text, '#' starts a comment. Unknown keys are errors.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(const std::string& text);
KeyValues read_key_values(const std::filesystem::path& path);
void apply_overrides(RunConfig& config, const KeyValues& values);
RunConfig load_config(const std::filesystem::path& path);

KeyValues to_key_values(const RunConfig& config);
std::string to_text(const RunConfig& config);

const char* to_string(DerivativeMode mode);

}  // namespace hhgq
