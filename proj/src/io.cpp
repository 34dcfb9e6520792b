#include "hhgq/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hhgq {

std::string format_number(double x)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
    return std::string(buf, ptr);
}

std::string to_csv(const CsvTable& t)
{
    std::string out;
    for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path.string());
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            t.header = cells;
            first = false;
            continue;
        }
        std::vector<double> row;
        for (const auto& c : cells) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
            if (ec != std::errc() || ptr != c.data() + c.size())
                throw std::runtime_error("read_csv: bad number '" + c + "' in " + path.string());
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << text;
        out.flush();
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

void write_csv(const std::filesystem::path& path, const CsvTable& table)
{
    write_text_file(path, to_csv(table));
}

CsvTable dipole_csv(const DipoleRecord& d)
{
    CsvTable t{{"t", "dipole", "retained"}, {}};
    for (std::size_t i = 0; i < d.samples.size(); ++i)
        t.rows.push_back({d.time.at(i), d.samples[i], i >= d.warmup_index ? 1.0 : 0.0});
    return t;
}

CsvTable spectrum_csv(const SpectrumResult& s)
{
    CsvTable t{{"harmonic_order", "s_coh", "s_inc", "s_total"}, {}};
    for (std::size_t k = 0; k < s.order.size(); ++k) t.rows.push_back({s.order[k], s.s_coh[k], s.s_inc[k], s.s_total[k]});
    return t;
}

CsvTable g1_csv(const CorrelationSeries& s, double period)
{
    CsvTable t{{"tau_over_T", "re_coh", "im_coh", "re_inc", "im_inc", "re_g1", "im_g1", "abs_g1"}, {}};
    for (std::size_t k = 0; k < s.tau.size(); ++k)
        t.rows.push_back({s.tau[k] / period, s.coh[k].real(), s.coh[k].imag(), s.inc[k].real(), s.inc[k].imag(),
                          s.normalized[k].real(), s.normalized[k].imag(), std::abs(s.normalized[k])});
    return t;
}

CsvTable g2_csv(const G2Components& c, double period)
{
    CsvTable t{{"tau_over_T", "g2", "re_num", "im_num", "denom"}, {}};
    for (std::size_t k = 0; k < c.tau.size(); ++k) {
        const cplx n = c.numerator(k);
        t.rows.push_back({c.tau[k] / period, c.g2[k], n.real(), n.imag(), c.denom[k]});
    }
    return t;
}

CsvTable sweep_csv(const std::vector<ManyAtomSeries>& sweep, double period)
{
    CsvTable t{{"n_atoms", "log10_n", "tau_over_T", "g2", "numerator", "denom", "truncated"}, {}};
    for (const auto& s : sweep)
        for (std::size_t k = 0; k < s.tau.size(); ++k)
            t.rows.push_back({static_cast<double>(s.n_atoms), std::log10(static_cast<double>(s.n_atoms)),
                              s.tau[k] / period, s.g2[k], s.numerator[k], s.denom[k], s.truncated ? 1.0 : 0.0});
    return t;
}

PlotData spectrum_plot(const SpectrumResult& s)
{
    PlotData p{"harmonic order", "S (arb.u., log)", true, {}};
    p.blocks.push_back({"s_coh", s.order, s.s_coh});
    p.blocks.push_back({"s_inc", s.order, s.s_inc});
    p.blocks.push_back({"s_total", s.order, s.s_total});
    return p;
}

PlotData sweep_plot(const std::vector<ManyAtomSeries>& sweep, double period)
{
    PlotData p{"tau / T", "g2", false, {}};
    for (const auto& s : sweep) {
        PlotBlock b{"N = " + std::to_string(s.n_atoms), {}, s.g2};
        for (double tau : s.tau) b.x.push_back(tau / period);
        p.blocks.push_back(std::move(b));
    }
    return p;
}

namespace {

bool empty_plot(const PlotData& d)
{
    if (d.blocks.empty()) return true;
    for (const auto& b : d.blocks)
        if (b.x.empty() || b.x.size() != b.y.size()) return true;
    return false;
}

}  // namespace

std::string plot_text(const PlotData& d)
{
    if (empty_plot(d)) throw std::invalid_argument("plot data: empty series");
    std::string out = "# x: " + d.x_label + ", y: " + d.y_label + "\n";
    out += d.log_y ? "# columns: x y log10(y)\n" : "# columns: x y\n";
    for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        const auto& b = d.blocks[i];
        if (i) out += "\n\n";
        out += "# " + b.label + "\n";
        for (std::size_t k = 0; k < b.x.size(); ++k) {
            out += format_number(b.x[k]) + " " + format_number(b.y[k]);
            if (d.log_y) out += " " + (b.y[k] > 0.0 ? format_number(std::log10(b.y[k])) : std::string("nan"));
            out += '\n';
        }
    }
    return out;
}

void emit_plot_data(const std::filesystem::path& path, const PlotData& d)
{
    write_text_file(path, plot_text(d));
}

std::string plot_svg(const PlotData& d)
{
    if (empty_plot(d)) throw std::invalid_argument("plot data: empty series");
    const double W = 640, H = 400, M = 50;
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    auto ty = [&](double y) { return d.log_y ? (y > 0.0 ? std::log10(y) : NAN) : y; };
    for (const auto& b : d.blocks)
        for (std::size_t k = 0; k < b.x.size(); ++k) {
            const double y = ty(b.y[k]);
            if (!std::isfinite(y)) continue;
            x0 = std::min(x0, b.x[k]);
            x1 = std::max(x1, b.x[k]);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    if (!(x1 > x0)) x1 = x0 + 1.0;
    if (!(y1 > y0)) y1 = y0 + 1.0;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    s << "<rect x=\"" << M << "\" y=\"" << M / 2 << "\" width=\"" << W - 1.5 * M << "\" height=\"" << H - 1.5 * M
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        s << "<polyline fill=\"none\" stroke=\"" << colors[i % 8] << "\" points=\"";
        const auto& b = d.blocks[i];
        for (std::size_t k = 0; k < b.x.size(); ++k) {
            const double y = ty(b.y[k]);
            if (!std::isfinite(y)) continue;
            const double px = M + (b.x[k] - x0) / (x1 - x0) * (W - 1.5 * M);
            const double py = M / 2 + (1.0 - (y - y0) / (y1 - y0)) * (H - 1.5 * M);
            s << format_number(px) << ',' << format_number(py) << ' ';
        }
        s << "\"/>\n";
    }
    s << "<text x=\"" << W / 2 << "\" y=\"" << H - 8 << "\" text-anchor=\"middle\">" << d.x_label << "</text>\n";
    s << "<text x=\"12\" y=\"" << H / 2 << "\" transform=\"rotate(-90 12 " << H / 2 << ")\" text-anchor=\"middle\">"
      << d.y_label << "</text>\n</svg>\n";
    return s.str();
}

std::string RunManifest::to_json() const
{
    nlohmann::ordered_json j;
    j["tool"] = "hhg";
    j["version"] = tool_version;
    j["command"] = command;
    j["threads"] = threads;
    auto& cfg = j["config"];
    for (const auto& [k, v] : to_key_values(config)) cfg[k] = v;
    j["cache"] = nlohmann::ordered_json::array();
    for (const auto& c : cache) j["cache"].push_back({{"kind", c.kind}, {"key", c.key}, {"hit", c.hit}});
    j["timings"] = nlohmann::ordered_json::array();
    for (const auto& t : timings) j["timings"].push_back({{"stage", t.stage}, {"seconds", t.seconds}});
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

OutputGuard::~OutputGuard()
{
    if (committed_) return;
    std::error_code ec;
    for (const auto& f : files_) {
        std::filesystem::remove(f, ec);
        auto tmp = f;
        tmp += ".partial";
        std::filesystem::remove(tmp, ec);
    }
}

}  // namespace hhgq
