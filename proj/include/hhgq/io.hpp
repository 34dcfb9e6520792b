#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hhgq/coherence.hpp"
#include "hhgq/g2.hpp"
#include "hhgq/manyatom.hpp"
#include "hhgq/spectrum.hpp"

namespace hhgq {

inline constexpr const char* tool_version = "1.0.0";

// Shortest text with 17 significant digits, '.' decimal point, no locale.
std::string format_number(double x);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

std::string to_csv(const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

// Writes through a temporary file and renames into place.
void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

CsvTable dipole_csv(const DipoleRecord& dipole);
CsvTable spectrum_csv(const SpectrumResult& spectrum);
CsvTable g1_csv(const CorrelationSeries& series, double period);
CsvTable g2_csv(const G2Components& g2, double period);
CsvTable sweep_csv(const std::vector<ManyAtomSeries>& sweep, double period);

struct PlotBlock {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotData {
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    std::vector<PlotBlock> blocks;
};

PlotData spectrum_plot(const SpectrumResult& spectrum);
PlotData sweep_plot(const std::vector<ManyAtomSeries>& sweep, double period);

// Gnuplot text: "# x: ..., y: ..." header, one block per series separated by
// blank lines, a log10 column when log_y is set. Throws on empty data.
std::string plot_text(const PlotData& data);
void emit_plot_data(const std::filesystem::path& path, const PlotData& data);
std::string plot_svg(const PlotData& data);

struct StageTiming {
    std::string stage;
    double seconds;
};

struct CacheEntry {
    std::string kind;
    std::string key;
    bool hit;
};

struct RunManifest {
    std::string command;
    RunConfig config;
    std::vector<CacheEntry> cache;
    std::vector<StageTiming> timings;
    std::vector<std::string> outputs;
    unsigned threads = 1;

    std::string to_json() const;
};

// Removes every registered file unless commit() was called.
class OutputGuard {
public:
    OutputGuard() = default;
    OutputGuard(const OutputGuard&) = delete;
    OutputGuard& operator=(const OutputGuard&) = delete;
    ~OutputGuard();

    void add(const std::filesystem::path& path) { files_.push_back(path); }
    void commit() { committed_ = true; }

private:
    std::vector<std::filesystem::path> files_;
    bool committed_ = false;
};

}  // namespace hhgq
