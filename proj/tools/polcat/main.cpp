// polcat command-line runner: CSV sweeps of the conditioned-state observables
// plus the mean-field validator. Links the public C API only.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polcat/polcat.h"

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kExitArgs = 2;
constexpr int kExitNumeric = 3;
constexpr double kOracleTolerance = 1e-6;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) { throw CliError{code, message}; }

void check_status(int rc, const std::string& context) {
    if (rc == POLCAT_OK) return;
    // bad values and refused configurations are argument errors, the rest are
    // numeric failures at a requested point
    int code = (rc == POLCAT_ERR_INVALID_ARGUMENT || rc == POLCAT_ERR_UNSUPPORTED_BASIS)
                   ? kExitArgs
                   : kExitNumeric;
    fail(code, context + ": " + polcat_status_name(rc) + " (" + polcat_last_error() + ")");
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// RAII wrappers over the C handles.
struct StateDeleter {
    void operator()(polcat_state_t* s) const { polcat_state_free(s); }
};
struct BranchesDeleter {
    void operator()(polcat_branches_t* b) const { polcat_branches_free(b); }
};
struct TrajDeleter {
    void operator()(polcat_mf_traj_t* t) const { polcat_mf_traj_free(t); }
};
using StatePtr = std::unique_ptr<polcat_state_t, StateDeleter>;
using BranchesPtr = std::unique_ptr<polcat_branches_t, BranchesDeleter>;
using TrajPtr = std::unique_ptr<polcat_mf_traj_t, TrajDeleter>;

struct SweepOptions {
    std::string basis = "circular";
    double alpha_re = 0.0;
    double alpha_im = 0.3;
    double beta_re = 0.0;
    double beta_im = 0.3;
    bool beta_given = false;
    double ratio = 0.0;
    double tau_max = kPi;
    int steps = 400;
    std::string parity = "even";
    std::string prep = "macro+";
    int natoms = 1;
    int cutoff = 0;  // > 0 enables per-point oracle cross-checks
    bool weighted = false;
    double theta = 0.0;
    std::string observable = "variance";
    std::string out = "-";
    std::string config;
};

int basis_tag(const std::string& basis) {
    if (basis == "circular") return POLCAT_BASIS_CIRCULAR;
    if (basis == "linear") return POLCAT_BASIS_LINEAR;
    fail(kExitArgs, "unknown basis '" + basis + "' (circular|linear)");
}

polcat_prep parse_prep(const std::string& prep, int natoms) {
    if (prep == "macro+") return {POLCAT_PREP_MACRO, +1, 0};
    if (prep == "macro-") return {POLCAT_PREP_MACRO, -1, 0};
    if (prep == "product") return {POLCAT_PREP_PRODUCT, +1, natoms};
    if (prep.rfind("product:", 0) == 0) {
        try {
            return {POLCAT_PREP_PRODUCT, +1, std::stoi(prep.substr(8))};
        } catch (const std::exception&) {
            fail(kExitArgs, "bad atom count in '" + prep + "'");
        }
    }
    fail(kExitArgs, "unknown preparation '" + prep + "' (macro+|macro-|product[:N])");
}

std::string prep_provenance(const polcat_prep& p) {
    if (p.kind == POLCAT_PREP_MACRO) return p.sign > 0 ? "macro+" : "macro-";
    return "product:" + std::to_string(p.n_atoms);
}

// Grid of steps+1 inclusive points over [0, tau_max]; a single point when
// tau_max is zero.
std::vector<double> tau_grid(double tau_max, int steps) {
    if (tau_max == 0.0) return {0.0};
    std::vector<double> g(steps + 1);
    for (int i = 0; i <= steps; ++i) g[i] = tau_max * i / steps;
    return g;
}

struct CsvWriter {
    std::ostringstream body;

    void comment(const std::string& line) { body << "# " << line << "\n"; }
    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i) body << (i ? "," : "") << cols[i];
        body << "\n";
    }
    void row(const std::vector<double>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i) body << (i ? "," : "") << fmt(vals[i]);
        body << "\n";
    }
    void flush(const std::string& out) {
        if (out == "-") {
            std::cout << body.str();
            return;
        }
        std::ofstream f(out, std::ios::binary);
        if (!f) fail(kExitArgs, "cannot open output file '" + out + "'");
        f << body.str();
    }
};

void sweep_provenance(CsvWriter& csv, const std::string& what, const SweepOptions& o,
                      const polcat_prep& prep) {
    csv.comment(std::string("polcat ") + polcat_version() + " " + what);
    csv.comment("basis=" + o.basis + " alpha=(" + fmt(o.alpha_re) + "," + fmt(o.alpha_im) +
                ") beta=(" + fmt(o.beta_re) + "," + fmt(o.beta_im) + ") ratio=" + fmt(o.ratio) +
                " lambda2_sign=-1 tau_max=" + fmt(o.tau_max) + " steps=" +
                std::to_string(o.steps) + " prep=" + prep_provenance(prep) + " weighted=" +
                (o.weighted ? "1" : "0") + " theta=" + fmt(o.theta) + " cutoff=" +
                std::to_string(o.cutoff));
}

// Conditioned state at tau, viewed in `view_basis`.
StatePtr conditioned_state(const SweepOptions& o, const polcat_prep& prep, double tau,
                           int view_basis, double* probability) {
    polcat_state_t* raw = nullptr;
    check_status(polcat_state_coherent(POLCAT_BASIS_CIRCULAR, o.alpha_re, o.alpha_im, o.beta_re,
                                       o.beta_im, &raw),
                 "initial state");
    StatePtr initial(raw);
    polcat_frame frame{tau, o.ratio, -1};
    polcat_branches_t* braw = nullptr;
    check_status(polcat_evolve_joint(initial.get(), prep, frame, o.weighted ? 1 : 0, &braw),
                 "evolve at tau=" + fmt(tau));
    BranchesPtr branches(braw);
    polcat_state_t* craw = nullptr;
    check_status(polcat_condition(branches.get(), prep, &craw, probability),
                 "condition at tau=" + fmt(tau));
    StatePtr cond(craw);
    if (view_basis == POLCAT_BASIS_CIRCULAR) return cond;
    polcat_state_t* lraw = nullptr;
    check_status(polcat_state_change_basis(cond.get(), view_basis, &lraw),
                 "basis change at tau=" + fmt(tau));
    return StatePtr(lraw);
}

double variance_at(const polcat_state_t* s, int mode, int axis, int cutoff, double tau) {
    double v = 0.0;
    check_status(polcat_quadrature_variance(s, mode, axis, &v), "variance at tau=" + fmt(tau));
    if (cutoff > 0) {
        double o = 0.0;
        check_status(polcat_oracle_variance(s, mode, axis, cutoff, &o),
                     "oracle variance at tau=" + fmt(tau));
        if (std::abs(v - o) > kOracleTolerance)
            fail(kExitNumeric, "oracle mismatch for variance at tau=" + fmt(tau) + ": " + fmt(v) +
                                   " vs " + fmt(o));
    }
    return v;
}

double criterion_at(const polcat_state_t* s, int cutoff, double tau) {
    double v = 0.0;
    check_status(polcat_inseparability(s, &v), "criterion at tau=" + fmt(tau));
    if (cutoff > 0) {
        double o = 0.0;
        check_status(polcat_oracle_inseparability(s, cutoff, &o),
                     "oracle criterion at tau=" + fmt(tau));
        if (std::abs(v - o) > kOracleTolerance)
            fail(kExitNumeric, "oracle mismatch for criterion at tau=" + fmt(tau));
    }
    return v;
}

double entropy_at(const polcat_state_t* s, int mode, int cutoff, double tau) {
    double v = 0.0;
    check_status(polcat_linear_entropy(s, mode, &v), "entropy at tau=" + fmt(tau));
    if (cutoff > 0) {
        double o = 0.0;
        check_status(polcat_oracle_linear_entropy(s, mode, cutoff, &o),
                     "oracle entropy at tau=" + fmt(tau));
        if (std::abs(v - o) > kOracleTolerance)
            fail(kExitNumeric, "oracle mismatch for entropy at tau=" + fmt(tau));
    }
    return v;
}

double fidelity_at(const polcat_state_t* s, int mode, double xi, double theta, int cutoff,
                   double tau) {
    double v = 0.0;
    check_status(polcat_squeezed_vacuum_fidelity(s, mode, xi, theta, &v),
                 "fidelity at tau=" + fmt(tau));
    if (cutoff > 0) {
        double o = 0.0;
        check_status(polcat_oracle_fidelity(s, mode, xi, theta, cutoff, &o),
                     "oracle fidelity at tau=" + fmt(tau));
        if (std::abs(v - o) > kOracleTolerance)
            fail(kExitNumeric, "oracle mismatch for fidelity at tau=" + fmt(tau));
    }
    return v;
}

std::vector<std::string> mode_columns(const std::string& basis) {
    if (basis == "circular") return {"plus", "minus"};
    return {"x", "y"};
}

void run_observable_sweep(const SweepOptions& o, const std::string& what) {
    polcat_prep prep = parse_prep(o.prep, o.natoms);
    int view = basis_tag(o.basis);
    CsvWriter csv;
    sweep_provenance(csv, what, o, prep);
    std::vector<double> taus = tau_grid(o.tau_max, o.steps);

    if (what == "variance") {
        auto names = mode_columns(o.basis);
        csv.header({"tau", "var_X_" + names[0], "var_Y_" + names[0], "var_X_" + names[1],
                    "var_Y_" + names[1]});
        for (double tau : taus) {
            double p = 0.0;
            StatePtr s = conditioned_state(o, prep, tau, view, &p);
            csv.row({tau, variance_at(s.get(), 0, POLCAT_AXIS_X, o.cutoff, tau),
                     variance_at(s.get(), 0, POLCAT_AXIS_Y, o.cutoff, tau),
                     variance_at(s.get(), 1, POLCAT_AXIS_X, o.cutoff, tau),
                     variance_at(s.get(), 1, POLCAT_AXIS_Y, o.cutoff, tau)});
        }
    } else if (what == "criterion") {
        csv.header({"tau", "I"});
        for (double tau : taus) {
            double p = 0.0;
            StatePtr s = conditioned_state(o, prep, tau, view, &p);
            csv.row({tau, criterion_at(s.get(), o.cutoff, tau)});
        }
    } else if (what == "entropy") {
        csv.header({"tau", "S"});
        for (double tau : taus) {
            double p = 0.0;
            StatePtr s = conditioned_state(o, prep, tau, view, &p);
            csv.row({tau, entropy_at(s.get(), 0, o.cutoff, tau)});
        }
    } else if (what == "fidelity") {
        // y-mode of the linear-frame conditioned state, best squeezing on the grid
        csv.header({"tau", "fidelity", "xi_best"});
        for (double tau : taus) {
            double p = 0.0;
            StatePtr s = conditioned_state(o, prep, tau, POLCAT_BASIS_LINEAR, &p);
            double best = -1.0, best_xi = 0.0;
            for (int i = 0; i <= 50; ++i) {
                double xi = 0.02 * i;
                double f = fidelity_at(s.get(), 1, xi, o.theta, 0, tau);
                if (f > best) {
                    best = f;
                    best_xi = xi;
                }
            }
            if (o.cutoff > 0) fidelity_at(s.get(), 1, best_xi, o.theta, o.cutoff, tau);
            csv.row({tau, best, best_xi});
        }
    } else {
        fail(kExitArgs, "unknown observable '" + what + "'");
    }
    csv.flush(o.out);
}

void run_fidelity_grid(const SweepOptions& o) {
    CsvWriter csv;
    csv.comment(std::string("polcat ") + polcat_version() + " figure 7");
    csv.comment("parity=" + o.parity + " theta=" + fmt(o.theta) +
                " alpha_im=0..1.5 step 0.05, xi=0..1 step 0.02 cutoff=" +
                std::to_string(o.cutoff));
    csv.header({"alpha_im", "xi", "fidelity"});
    int parity = o.parity == "odd" ? POLCAT_PARITY_ODD : POLCAT_PARITY_EVEN;
    for (int ia = 0; ia <= 30; ++ia) {
        double alpha_im = 0.05 * ia;
        polcat_state_t* raw = nullptr;
        int rc = polcat_state_cat_y(0.0, alpha_im, parity, &raw);
        if (rc == POLCAT_ERR_DEGENERATE_STATE) {
            fail(kExitNumeric, "degenerate cat state at alpha_im=" + fmt(alpha_im));
        }
        check_status(rc, "cat state at alpha_im=" + fmt(alpha_im));
        StatePtr cat(raw);
        for (int ix = 0; ix <= 50; ++ix) {
            double xi = 0.02 * ix;
            double f = fidelity_at(cat.get(), 1, xi, o.theta, o.cutoff, 0.0);
            csv.row({alpha_im, xi, f});
        }
    }
    csv.flush(o.out);
}

struct FigurePreset {
    std::string kind;          // variance | criterion | entropy | fidelity7
    std::string basis;         // view basis
    int mode = 0;              // variance: which mode; entropy: reduced mode
    double ratio = 0.0;
    std::vector<double> alpha_ims;  // multi-line figures
};

std::map<std::string, FigurePreset> figure_presets() {
    std::vector<double> three{0.3, 0.7, 1.5};
    return {
        {"2a", {"variance", "circular", 0, 0.0, {0.3}}},
        {"2b", {"variance", "circular", 0, 0.1, {0.3}}},
        {"3a", {"criterion", "linear", 0, 0.0, three}},
        {"3b", {"criterion", "linear", 0, 0.1, three}},
        {"4a", {"variance", "linear", 1, 0.0, {0.3}}},
        {"4b", {"variance", "linear", 1, 0.1, {0.3}}},
        {"5a", {"criterion", "circular", 0, 0.0, three}},
        {"5b", {"criterion", "circular", 0, 0.1, three}},
        {"6a", {"entropy", "circular", 0, 0.0, three}},
        {"6b", {"entropy", "circular", 0, 0.1, three}},
        {"7", {"fidelity7", "linear", 1, 0.0, {}}},
    };
}

std::string alpha_suffix(double im) {
    std::string s = "im" + fmt(im);
    return s;
}

void run_figure(const std::string& id, SweepOptions o, bool ratio_given, bool alpha_given) {
    auto presets = figure_presets();
    auto it = presets.find(id);
    if (it == presets.end()) fail(kExitArgs, "unknown figure id '" + id + "'");
    const FigurePreset& fig = it->second;
    if (!ratio_given) o.ratio = fig.ratio;
    o.basis = fig.basis;

    if (fig.kind == "fidelity7") {
        run_fidelity_grid(o);
        return;
    }

    std::vector<double> alphas = alpha_given ? std::vector<double>{o.alpha_im} : fig.alpha_ims;
    polcat_prep prep = parse_prep(o.prep, o.natoms);
    int view = basis_tag(o.basis);
    CsvWriter csv;
    sweep_provenance(csv, "figure " + id, o, prep);
    std::vector<double> taus = tau_grid(o.tau_max, o.steps);
    auto names = mode_columns(o.basis);

    if (fig.kind == "variance") {
        const std::string& m = names[fig.mode];
        csv.header({"tau", "var_X_" + m, "var_Y_" + m});
        for (double tau : taus) {
            SweepOptions pt = o;
            pt.alpha_im = alphas[0];
            if (!pt.beta_given) pt.beta_im = alphas[0];
            double p = 0.0;
            StatePtr s = conditioned_state(pt, prep, tau, view, &p);
            csv.row({tau, variance_at(s.get(), fig.mode, POLCAT_AXIS_X, o.cutoff, tau),
                     variance_at(s.get(), fig.mode, POLCAT_AXIS_Y, o.cutoff, tau)});
        }
    } else {
        std::vector<std::string> cols{"tau"};
        std::string tagname = fig.kind == "criterion"
                                  ? (o.basis == "circular" ? "I_pm_" : "I_xy_")
                                  : "S_" + names[fig.mode] + "_";
        std::string alpha_list;
        for (double a : alphas) {
            cols.push_back(tagname + alpha_suffix(a));
            alpha_list += (alpha_list.empty() ? "" : ",") + fmt(a);
        }
        csv.comment("alpha_im_values=" + alpha_list);
        csv.header(cols);
        for (double tau : taus) {
            std::vector<double> row{tau};
            for (double a : alphas) {
                SweepOptions pt = o;
                pt.alpha_im = a;
                if (!pt.beta_given) pt.beta_im = a;
                double p = 0.0;
                StatePtr s = conditioned_state(pt, prep, tau, view, &p);
                row.push_back(fig.kind == "criterion"
                                  ? criterion_at(s.get(), o.cutoff, tau)
                                  : entropy_at(s.get(), fig.mode, o.cutoff, tau));
            }
            csv.row(row);
        }
    }
    csv.flush(o.out);
}

struct AdiabaticOptions {
    double g = 1e-4;
    double gamma = 1.0;
    double gamma_par = 0.5;
    double gamma_perp = 0.5;
    double delta = 25.0;
    double aplus_re = 0.3, aplus_im = 0.0;
    double aminus_re = 0.3, aminus_im = 0.0;
    double t_end = 25.0;
    double dt = 1e-3;
    int stride = 1;
    bool no_vacuum_term = false;
    std::string out = "-";
    std::string config;
};

void run_adiabatic(const AdiabaticOptions& o) {
    polcat_mf_params p{};
    p.g = o.g;
    p.gamma = o.gamma;
    p.gamma_par = o.gamma_par;
    p.gamma_perp = o.gamma_perp;
    p.delta = o.delta;
    p.aplus_re = o.aplus_re;
    p.aplus_im = o.aplus_im;
    p.aminus_re = o.aminus_re;
    p.aminus_im = o.aminus_im;
    p.vacuum_term = o.no_vacuum_term ? 0 : 1;

    double init[8] = {0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    polcat_mf_traj_t* raw = nullptr;
    check_status(polcat_mf_integrate(p, init, o.t_end, o.dt, &raw), "mean-field integration");
    TrajPtr traj(raw);

    CsvWriter csv;
    csv.comment(std::string("polcat ") + polcat_version() + " adiabatic");
    csv.comment("g=" + fmt(o.g) + " gamma=" + fmt(o.gamma) + " gamma_par=" + fmt(o.gamma_par) +
                " gamma_perp=" + fmt(o.gamma_perp) + " delta=" + fmt(o.delta) + " aplus=(" +
                fmt(o.aplus_re) + "," + fmt(o.aplus_im) + ") aminus=(" + fmt(o.aminus_re) + "," +
                fmt(o.aminus_im) + ") t_end=" + fmt(o.t_end) + " dt=" + fmt(o.dt) +
                " vacuum_term=" + (p.vacuum_term ? "1" : "0"));
    csv.header({"t", "s11", "s22", "s33", "s44", "s14_re", "s14_im", "s23_re", "s23_im"});
    int rows = 0;
    check_status(polcat_mf_traj_rows(traj.get(), &rows), "trajectory rows");
    for (int i = 0; i < rows; i += o.stride) {
        double r[9];
        check_status(polcat_mf_traj_row(traj.get(), i, r), "trajectory row");
        csv.row({r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7], r[8]});
    }

    polcat_mf_report rep{};
    check_status(polcat_mf_stationary_check(traj.get(), p, &rep), "stationary check");
    csv.comment("coherence14_residual=" +
                (rep.coherence14_applicable ? fmt(rep.coherence14_residual) : "n/a"));
    csv.comment("coherence23_residual=" +
                (rep.coherence23_applicable ? fmt(rep.coherence23_residual) : "n/a"));
    csv.comment("population44_residual=" + fmt(rep.population44_residual));
    csv.comment("population33_residual=" + fmt(rep.population33_residual));
    csv.comment("phase14_error=" + fmt(rep.phase14_error));
    csv.comment("max_relative_drift=" + fmt(rep.max_relative_drift));
    csv.flush(o.out);

    double l1 = 0.0, l2 = 0.0;
    check_status(polcat_derived_coupling(o.g, o.gamma, o.delta, &l1, &l2), "derived coupling");
    std::cerr << "lambda1=" << fmt(l1) << " lambda2=" << fmt(l2)
              << " ratio=" << fmt(l1 / std::abs(l2)) << "\n";
    if (rep.coherence14_applicable)
        std::cerr << "coherence residuals: " << fmt(rep.coherence14_residual) << ", "
                  << fmt(rep.coherence23_residual) << "; population residuals: "
                  << fmt(rep.population44_residual) << ", " << fmt(rep.population33_residual)
                  << "\n";
}

// Pre-scan for --config and load key=value defaults before CLI11 parses argv,
// so explicit flags win over the file.
std::map<std::string, std::string> load_config(int argc, char** argv) {
    std::string path;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) path = argv[i + 1];
        else if (a.rfind("--config=", 0) == 0) path = a.substr(9);
    }
    std::map<std::string, std::string> kv;
    if (path.empty()) return kv;
    std::ifstream f(path);
    if (!f) fail(kExitArgs, "cannot read config file '" + path + "'");
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(kExitArgs, "bad config line: " + line);
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
            return s;
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

template <typename T>
void apply_config(const std::map<std::string, std::string>& kv, const std::string& key, T& var) {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    std::istringstream ss(it->second);
    ss >> var;
    if (ss.fail()) fail(kExitArgs, "bad config value for '" + key + "': " + it->second);
}

void register_sweep_options(CLI::App* cmd, SweepOptions& o) {
    cmd->add_option("--basis", o.basis, "viewing basis: circular|linear");
    cmd->add_option("--alpha-re", o.alpha_re, "Re alpha (circular + mode input)");
    cmd->add_option("--alpha-im", o.alpha_im, "Im alpha");
    cmd->add_option("--beta-re", o.beta_re, "Re beta (circular - mode input; default alpha)");
    cmd->add_option("--beta-im", o.beta_im, "Im beta");
    cmd->add_option("--ratio", o.ratio, "lambda1/|lambda2| in [0,1)");
    cmd->add_option("--tau-max", o.tau_max, "sweep end (tau = |lambda2| t)")
        ->check(CLI::Range(0.0, 100.0));
    cmd->add_option("--steps", o.steps, "grid intervals over [0, tau-max]")
        ->check(CLI::Range(2, 1000000));
    cmd->add_option("--parity", o.parity, "cat parity for the fidelity surface: even|odd");
    cmd->add_option("--prep", o.prep, "atom preparation: macro+|macro-|product[:N]");
    cmd->add_option("--natoms", o.natoms, "atom count for --prep product");
    cmd->add_option("--cutoff", o.cutoff,
                    "Fock cutoff for per-point oracle cross-checks (0 = off)");
    cmd->add_flag("--weighted", o.weighted, "keep non-unitary branch growth factors");
    cmd->add_option("--theta", o.theta, "squeezed-vacuum phase for fidelity");
    cmd->add_option("--out", o.out, "output CSV path ('-' for stdout)");
    cmd->add_option("--config", o.config, "key=value defaults file (flags win)");
}

void apply_sweep_config(const std::map<std::string, std::string>& kv, CLI::App* cmd,
                        SweepOptions& o) {
    // command line beats config: only fill values the user did not pass
    auto fill = [&](const char* flag, const char* key, auto& var) {
        if (cmd->count(flag) == 0) apply_config(kv, key, var);
    };
    fill("--basis", "basis", o.basis);
    fill("--alpha-re", "alpha-re", o.alpha_re);
    fill("--alpha-im", "alpha-im", o.alpha_im);
    fill("--beta-re", "beta-re", o.beta_re);
    fill("--beta-im", "beta-im", o.beta_im);
    fill("--ratio", "ratio", o.ratio);
    fill("--tau-max", "tau-max", o.tau_max);
    fill("--steps", "steps", o.steps);
    fill("--parity", "parity", o.parity);
    fill("--prep", "prep", o.prep);
    fill("--natoms", "natoms", o.natoms);
    fill("--cutoff", "cutoff", o.cutoff);
    fill("--theta", "theta", o.theta);
    fill("--out", "out", o.out);
    if (cmd->count("--weighted") == 0) {
        int w = 0;
        apply_config(kv, "weighted", w);
        if (w) o.weighted = true;
    }
    o.beta_given = cmd->count("--beta-re") > 0 || cmd->count("--beta-im") > 0 ||
                   kv.count("beta-re") > 0 || kv.count("beta-im") > 0;
    if (!o.beta_given) {
        o.beta_re = o.alpha_re;
        o.beta_im = o.alpha_im;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polcat: conditioned polarization cat and entangled coherent state sweeps"};
    app.set_version_flag("--version", polcat_version());
    app.require_subcommand(1);

    SweepOptions common;
    std::string figure_id;
    std::string sweep_observable = "variance";

    CLI::App* fig = app.add_subcommand("figure", "built-in preset sweeps (ids 2a..6b, 7)");
    fig->add_option("id", figure_id, "preset id")->required();
    SweepOptions fig_o;
    register_sweep_options(fig, fig_o);

    CLI::App* var = app.add_subcommand("variance", "quadrature variances vs tau");
    SweepOptions var_o;
    register_sweep_options(var, var_o);

    CLI::App* crit = app.add_subcommand("criterion", "inseparability sum vs tau");
    SweepOptions crit_o;
    register_sweep_options(crit, crit_o);

    CLI::App* ent = app.add_subcommand("entropy", "reduced linear entropy vs tau");
    SweepOptions ent_o;
    register_sweep_options(ent, ent_o);

    CLI::App* fid = app.add_subcommand("fidelity", "best squeezed-vacuum fidelity vs tau");
    SweepOptions fid_o;
    register_sweep_options(fid, fid_o);

    CLI::App* swp = app.add_subcommand("sweep", "generic observable sweep");
    SweepOptions swp_o;
    register_sweep_options(swp, swp_o);
    swp->add_option("--observable", sweep_observable,
                    "variance|criterion|entropy|fidelity");

    CLI::App* adia = app.add_subcommand("adiabatic", "mean-field stationarity validator");
    AdiabaticOptions adia_o;
    adia->add_option("--g", adia_o.g, "atom-field coupling (rad/s)");
    adia->add_option("--gamma", adia_o.gamma, "dipole decay rate (rad/s)");
    adia->add_option("--gamma-par", adia_o.gamma_par, "parallel decay component");
    adia->add_option("--gamma-perp", adia_o.gamma_perp, "perpendicular decay component");
    adia->add_option("--delta", adia_o.delta, "detuning (rad/s)");
    adia->add_option("--aplus-re", adia_o.aplus_re, "Re a+ drive");
    adia->add_option("--aplus-im", adia_o.aplus_im, "Im a+ drive");
    adia->add_option("--aminus-re", adia_o.aminus_re, "Re a- drive");
    adia->add_option("--aminus-im", adia_o.aminus_im, "Im a- drive");
    adia->add_option("--t-end", adia_o.t_end, "integration end time (s)");
    adia->add_option("--dt", adia_o.dt, "step size (s)");
    adia->add_option("--stride", adia_o.stride, "write every n-th row")
        ->check(CLI::PositiveNumber);
    adia->add_flag("--no-vacuum-term", adia_o.no_vacuum_term,
                   "drop the symmetric-ordering vacuum exchange term");
    adia->add_option("--out", adia_o.out, "output CSV path ('-' for stdout)");
    adia->add_option("--config", adia_o.config, "key=value defaults file (flags win)");

    try {
        auto kv = load_config(argc, argv);
        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            int rc = app.exit(e);
            return rc == 0 ? 0 : kExitArgs;
        }

        if (*fig) {
            apply_sweep_config(kv, fig, fig_o);
            run_figure(figure_id, fig_o, fig->count("--ratio") > 0 || kv.count("ratio") > 0,
                       fig->count("--alpha-im") > 0 || kv.count("alpha-im") > 0);
        } else if (*var) {
            apply_sweep_config(kv, var, var_o);
            run_observable_sweep(var_o, "variance");
        } else if (*crit) {
            apply_sweep_config(kv, crit, crit_o);
            run_observable_sweep(crit_o, "criterion");
        } else if (*ent) {
            apply_sweep_config(kv, ent, ent_o);
            run_observable_sweep(ent_o, "entropy");
        } else if (*fid) {
            apply_sweep_config(kv, fid, fid_o);
            run_observable_sweep(fid_o, "fidelity");
        } else if (*swp) {
            apply_sweep_config(kv, swp, swp_o);
            if (swp->count("--observable") == 0) apply_config(kv, "observable", sweep_observable);
            run_observable_sweep(swp_o, sweep_observable);
        } else if (*adia) {
            auto fill = [&](const char* flag, const char* key, auto& v) {
                if (adia->count(flag) == 0) apply_config(kv, key, v);
            };
            fill("--g", "g", adia_o.g);
            fill("--gamma", "gamma", adia_o.gamma);
            fill("--gamma-par", "gamma-par", adia_o.gamma_par);
            fill("--gamma-perp", "gamma-perp", adia_o.gamma_perp);
            fill("--delta", "delta", adia_o.delta);
            fill("--aplus-re", "aplus-re", adia_o.aplus_re);
            fill("--aplus-im", "aplus-im", adia_o.aplus_im);
            fill("--aminus-re", "aminus-re", adia_o.aminus_re);
            fill("--aminus-im", "aminus-im", adia_o.aminus_im);
            fill("--t-end", "t-end", adia_o.t_end);
            fill("--dt", "dt", adia_o.dt);
            fill("--stride", "stride", adia_o.stride);
            run_adiabatic(adia_o);
        }
    } catch (const CliError& e) {
        std::cerr << "polcat: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "polcat: " << e.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
