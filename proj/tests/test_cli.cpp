// CLI integration checks: CSV determinism, exit codes, config precedence.
// Usage: polcat_cli_tests <path-to-polcat-binary>

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int g_failures = 0;

void expect(bool ok, const std::string& what) {
    if (ok) {
        std::cout << "[PASS] " << what << "\n";
    } else {
        std::cout << "[FAIL] " << what << "\n";
        ++g_failures;
    }
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& cmd) {
    std::string full = cmd + " 2>/dev/null";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::string> data_rows(const std::string& csv) {
    std::vector<std::string> rows;
    std::istringstream ss(csv);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#') rows.push_back(line);
    return rows;
}

double field(const std::string& row, int idx) {
    std::istringstream ss(row);
    std::string cell;
    for (int i = 0; i <= idx; ++i) std::getline(ss, cell, ',');
    return std::stod(cell);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: polcat_cli_tests <polcat binary>\n";
        return 1;
    }
    std::string bin = argv[1];
    auto tmp = std::filesystem::temp_directory_path() / "polcat_cli_tests";
    std::filesystem::create_directories(tmp);

    // byte-identical output for identical configs
    auto a = run(bin + " figure 5a --steps 16");
    auto b = run(bin + " figure 5a --steps 16");
    expect(a.exit_code == 0, "figure 5a runs");
    expect(!a.output.empty() && a.output == b.output, "figure output is byte-identical");

    // header row present, one data row per grid point (+1 for inclusive ends)
    auto rows = data_rows(a.output);
    expect(rows.size() == 18, "header plus 17 rows for 16 steps");
    expect(rows[0] == "tau,I_pm_im0.3,I_pm_im0.7,I_pm_im1.5", "criterion header names columns");

    // pinned value at tau = pi/2 (grid midpoint)
    expect(std::abs(field(rows[9], 1) - 0.852056) < 1e-3, "criterion dip at quarter period");

    // --out writes the same bytes as stdout
    auto out_file = tmp / "f5a.csv";
    auto c = run(bin + " figure 5a --steps 16 --out " + out_file.string());
    expect(c.exit_code == 0 && slurp(out_file) == a.output, "--out matches stdout bytes");

    // every figure preset runs on a coarse grid
    for (std::string id : {"2a", "2b", "3a", "3b", "4a", "4b", "5b", "6a", "6b"}) {
        auto r = run(bin + " figure " + id + " --steps 8");
        expect(r.exit_code == 0 && data_rows(r.output).size() == 10, "figure " + id + " runs");
    }
    auto f7 = run(bin + " figure 7");
    expect(f7.exit_code == 0 && data_rows(f7.output).size() == 1 + 31 * 51,
           "fidelity surface has the full grid");

    // tau-max 0 collapses to a single baseline row
    auto base = run(bin + " variance --tau-max 0");
    auto brows = data_rows(base.output);
    expect(brows.size() == 2 && std::abs(field(brows[1], 1) - 0.25) < 1e-12 &&
               std::abs(field(brows[1], 4) - 0.25) < 1e-12,
           "zero sweep emits coherent baseline variances");

    // sweep parity between prep=product:1 and prep=macro+
    auto p1 = run(bin + " criterion --steps 12 --prep product:1");
    auto m1 = run(bin + " criterion --steps 12 --prep macro+");
    auto pr = data_rows(p1.output), mr = data_rows(m1.output);
    bool same = pr.size() == mr.size();
    for (std::size_t i = 1; same && i < pr.size(); ++i)
        same = std::abs(field(pr[i], 1) - field(mr[i], 1)) < 1e-10;
    expect(same, "single-atom product sweep equals macro+ column-for-column");

    // config file provides defaults, flags win
    auto cfg = tmp / "sweep.cfg";
    {
        std::ofstream f(cfg);
        f << "# sample config\nratio=0.1\nsteps=6\nalpha-im=0.7\n";
    }
    auto from_cfg = run(bin + " criterion --config " + cfg.string());
    auto cfg_rows = data_rows(from_cfg.output);
    expect(from_cfg.exit_code == 0 && cfg_rows.size() == 8, "config file sets the grid");
    auto flag_wins = run(bin + " criterion --config " + cfg.string() + " --steps 4");
    expect(data_rows(flag_wins.output).size() == 6, "command line overrides the config file");

    // exit code 2: argument errors
    expect(run(bin + " figure nosuch").exit_code == 2, "unknown figure id exits 2");
    expect(run(bin + " criterion --basis diagonal").exit_code == 2, "bad basis exits 2");
    expect(run(bin + " criterion --steps 1").exit_code == 2, "steps below minimum exits 2");
    expect(run(bin + " criterion --prep product:0").exit_code == 2, "bad atom count exits 2");
    expect(run(bin + " criterion --ratio 1.5 --steps 4").exit_code == 2,
           "ratio outside [0,1) exits 2");
    // the view basis is independent of the (circular) evolution frame
    expect(run(bin + " criterion --basis linear --prep product:2 --steps 4").exit_code == 0,
           "product preparation viewed in the linear frame runs");

    // exit code 3: numeric failure at a requested point (degenerate conditioning)
    expect(run(bin + " entropy --prep macro-").exit_code == 3,
           "degenerate conditioning exits 3");

    // oracle cross-check path
    expect(run(bin + " criterion --steps 4 --cutoff 40").exit_code == 0,
           "oracle cross-check passes on the default sweep");

    // generic sweep mirrors the dedicated subcommand
    auto via_sweep = run(bin + " sweep --observable entropy --steps 4");
    auto direct = run(bin + " entropy --steps 4");
    expect(via_sweep.exit_code == 0 && via_sweep.output == direct.output,
           "sweep --observable matches the dedicated subcommand");

    // default grids stay inside the interactive budget
    auto t0 = std::chrono::steady_clock::now();
    auto full = run(bin + " figure 6b --out " + (tmp / "f6b.csv").string());
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    expect(full.exit_code == 0 && secs < 10.0, "default-grid figure finishes under 10 s");

    // adiabatic validator
    auto ad = run(bin + " adiabatic --stride 1000");
    expect(ad.exit_code == 0, "adiabatic subcommand runs");
    expect(ad.output.find("population44_residual=") != std::string::npos,
           "adiabatic report lines present");

    std::cout << (g_failures == 0 ? "all cli checks passed\n" : "cli checks FAILED\n");
    return g_failures == 0 ? 0 : 1;
}
