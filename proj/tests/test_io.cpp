#include <charconv>
#include <clocale>
#include <filesystem>
#include <fstream>
#include <locale>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "doctest.h"
#include "hhgq/io.hpp"

using namespace hhgq;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("hhgq_io_test_" + std::to_string(::getpid())))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct CommaLocale {
    std::string saved_c;
    std::locale saved_cpp;
    bool active = false;
    CommaLocale() : saved_c(std::setlocale(LC_ALL, nullptr)), saved_cpp(std::locale())
    {
        for (const char* name : {"de_DE.UTF-8", "de_DE.utf8", "fr_FR.UTF-8", "de_DE"}) {
            if (std::setlocale(LC_ALL, name)) {
                try {
                    std::locale::global(std::locale(name));
                } catch (...) {
                }
                active = true;
                return;
            }
        }
    }
    ~CommaLocale()
    {
        std::setlocale(LC_ALL, saved_c.c_str());
        std::locale::global(saved_cpp);
    }
};

SpectrumResult tiny_spectrum()
{
    SpectrumResult s;
    s.order = {0.0, 0.5, 1.0};
    s.s_coh = {0.0, 1e-3, 2.5};
    s.s_inc = {1.0, 2.0, 3.0};
    s.s_total = {1.0, 2.001, 5.5};
    return s;
}

}  // namespace

TEST_SUITE("io")
{
    TEST_CASE("numbers round trip with seventeen digits")
    {
        for (double x : {0.1, -1.0 / 3.0, 6.02214076e23, 5e-324, 1e-3, 123456789.0, 0.0}) {
            const auto s = format_number(x);
            double back = 0.0;
            std::from_chars(s.data(), s.data() + s.size(), back);
            CHECK(back == x);
        }
        CHECK(format_number(0.5) == "0.5");
        CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
    }

    TEST_CASE("output ignores the process locale")
    {
        CommaLocale loc;
        CsvTable t{{"a", "b"}, {{1.5, 1234567.25}, {-0.001, 2.0}}};
        const auto text = to_csv(t);
        CHECK(text == "a,b\n1.5,1234567.25\n-0.001,2\n");
        CHECK(format_number(2.75) == "2.75");
        if (!loc.active) MESSAGE("no comma-decimal locale installed; checked under the default locale only");
    }

    TEST_CASE("csv write and read back")
    {
        TempDir tmp;
        const CsvTable t{{"x", "y", "z"}, {{0.1, 0.2, 0.30000000000000004}, {1e300, -1e-300, 7.0}}};
        const auto path = tmp.path / "sub" / "t.csv";
        write_csv(path, t);
        const auto text = slurp(path);
        CHECK(text.find('\r') == std::string::npos);
        CHECK_FALSE(fs::exists(path.string() + ".partial"));
        const auto back = read_csv(path);
        CHECK(back.header == t.header);
        CHECK(back.rows == t.rows);
    }

    TEST_CASE("documented csv columns")
    {
        CHECK(spectrum_csv(tiny_spectrum()).header == std::vector<std::string>{"harmonic_order", "s_coh", "s_inc", "s_total"});
        G2Components g;
        g.tau = {0.0};
        g.t_coh = {cplx(1.0, 0.0)};
        g.t_cross = {cplx(0.5, 0.0)};
        g.t_cc = {cplx(0.25, 1e-9)};
        g.denom = {2.0};
        g.g2 = {0.875};
        const auto t = g2_csv(g, 10.0);
        CHECK(t.header == std::vector<std::string>{"tau_over_T", "g2", "re_num", "im_num", "denom"});
        CHECK(t.rows[0] == std::vector<double>{0.0, 0.875, 1.75, 1e-9, 2.0});
    }

    TEST_CASE("spectrum plot data")
    {
        const auto text = plot_text(spectrum_plot(tiny_spectrum()));
        CHECK(text.rfind("# x: harmonic order, y: S (arb.u., log)\n", 0) == 0);
        CHECK(text.find("# s_coh\n") != std::string::npos);
        CHECK(text.find("1 2.5 0.3979400086720376") != std::string::npos);
        CHECK(text.find("0 0 nan") != std::string::npos);
        CHECK(plot_svg(spectrum_plot(tiny_spectrum())).find("<svg") != std::string::npos);
    }

    TEST_CASE("sweep plot has one block per emitter number")
    {
        ManyAtomSeries a, b;
        a.n_atoms = 100;
        b.n_atoms = 1000;
        a.tau = b.tau = {0.0, 5.0};
        a.g2 = {0.9, 0.95};
        b.g2 = {0.99, 0.995};
        const auto text = plot_text(sweep_plot({a, b}, 10.0));
        const std::string want = "# x: tau / T, y: g2\n# columns: x y\n# N = 100\n0 " + format_number(0.9) + "\n0.5 " +
                                 format_number(0.95) + "\n\n\n# N = 1000\n0 " + format_number(0.99) + "\n0.5 " +
                                 format_number(0.995) + "\n";
        CHECK(text == want);
    }

    TEST_CASE("empty series is an error and writes nothing")
    {
        TempDir tmp;
        PlotData empty{"x", "y", false, {}};
        CHECK_THROWS_AS(plot_text(empty), std::invalid_argument);
        CHECK_THROWS_AS(plot_svg(empty), std::invalid_argument);
        CHECK_THROWS(emit_plot_data(tmp.path / "p.dat", empty));
        CHECK_FALSE(fs::exists(tmp.path / "p.dat"));
        PlotData hollow{"x", "y", false, {{"a", {}, {}}}};
        CHECK_THROWS(plot_text(hollow));
    }

    TEST_CASE("output guard removes uncommitted files")
    {
        TempDir tmp;
        const auto a = tmp.path / "a.csv", b = tmp.path / "b.csv";
        {
            OutputGuard g;
            write_text_file(a, "x\n");
            g.add(a);
        }
        CHECK_FALSE(fs::exists(a));
        {
            OutputGuard g;
            write_text_file(b, "x\n");
            g.add(b);
            g.commit();
        }
        CHECK(fs::exists(b));
    }

    TEST_CASE("manifest records configuration, cache keys and outputs")
    {
        RunManifest m;
        m.command = "g2";
        m.config.q = 13;
        m.cache.push_back({"dipole", "00000000000000ff", true});
        m.timings.push_back({"dipole", 1.5});
        m.outputs = {"g2.csv"};
        m.threads = 4;
        const auto j = nlohmann::json::parse(m.to_json());
        CHECK(j["version"] == tool_version);
        CHECK(j["command"] == "g2");
        CHECK(j["config"]["q"] == "13");
        CHECK(std::stod(j["config"]["e0"].get<std::string>()) == 0.053);
        CHECK(j["cache"][0]["hit"] == true);
        CHECK(j["outputs"][0] == "g2.csv");
        CHECK(j["threads"] == 4);
    }
}
