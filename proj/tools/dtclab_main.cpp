// Command-line front end: seeded ensemble runs of the drive's measurement
// protocols plus offline analysis of the JSONL results.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "dtclab/ensemble.hpp"
#include "dtclab/stats.hpp"

namespace {

using dtc::ResultRow;
using dtc::RunConfig;

void add_common_options(CLI::App* cmd, RunConfig& cfg, std::string& g_grid) {
    cmd->add_option("--length,-L", cfg.lengths, "chain length(s)");
    cmd->add_option("--g", cfg.g_values, "kick parameter value(s)");
    cmd->add_option("--g-grid", g_grid, "g grid as lo:hi:step (overrides --g)");
    cmd->add_option("--cycles,-t", cfg.cycles, "number of drive cycles");
    cmd->add_option("--instances,-n", cfg.instances, "disorder instances");
    cmd->add_option("--seed,-s", cfg.master_seed, "master seed");
    cmd->add_option("--noise-p", cfg.noise_p, "depolarizing rate per qubit per 2q gate");
    cmd->add_option("--noise-placement", cfg.noise_placement, "after-2q | symmetric");
    cmd->add_option("--scrambler-depth,-K", cfg.scrambler_depth, "scrambler layers");
    cmd->add_option("--bitstring", cfg.bitstring_policy, "hex | polarized | neel | random | all");
    cmd->add_option("--bitstring-hex", cfg.bitstring_hex, "initial bitstring for --bitstring hex");
    cmd->add_option("--n-bitstrings", cfg.n_bitstrings, "bitstring samples per instance");
    cmd->add_option("--record-cycles", cfg.record_cycles, "persist only these cycles");
    cmd->add_option("--window", [&cfg](const std::vector<std::string>& vals) {
        if (vals.size() != 2) return false;
        cfg.window_lo = std::stoi(vals[0]);
        cfg.window_hi = std::stoi(vals[1]);
        return true;
    }, "measurement window t_lo t_hi")->expected(2);
    cmd->add_option("--qubit", cfg.qubit, "target qubit (default: center)");
    cmd->add_option("--flip-at", cfg.flip_at, "perturbation site (default: center)");
    cmd->add_option("--uniform-phi", [&cfg](const std::vector<std::string>& vals) {
        cfg.coupling_mode = "uniform";
        cfg.phi_bar = std::stod(vals[0]);
        return true;
    }, "use uniform couplings with this angle");
    cmd->add_flag("--emit-energy", cfg.emit_energy, "also record bitstring energies");
    cmd->add_flag("!--odd-times", cfg.even_times_only, "include odd cycles in chi windows");
    cmd->add_option("--workers,-w", cfg.workers, "worker threads (0 = hardware)");
    cmd->add_option("--out,-o", cfg.out_path, "output JSONL path");
}

std::vector<double> parse_grid(const std::string& spec) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw dtc::ConfigError("--g-grid expects lo:hi:step");
    const double lo = std::stod(spec.substr(0, c1));
    const double hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(spec.substr(c2 + 1));
    if (step <= 0.0) throw dtc::ConfigError("--g-grid step must be positive");
    std::vector<double> g;
    for (double v = lo; v <= hi + 1e-9; v += step) g.push_back(v);
    return g;
}

int run_protocol(RunConfig cfg, const std::string& g_grid) {
    if (!g_grid.empty()) cfg.g_values = parse_grid(g_grid);
    try {
        cfg.validate();
    } catch (const dtc::ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    }
    try {
        const auto outcome = dtc::run_ensemble(cfg);
        std::cout << "wrote " << outcome.rows.size() << " rows to " << outcome.path << "\n";
        if (!outcome.failures.empty()) {
            std::cerr << outcome.failures.size() << " instance(s) failed:\n";
            for (const auto& f : outcome.failures) std::cerr << "  " << f << "\n";
            return 1;
        }
        return 0;
    } catch (const dtc::ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "run failed: " << e.what() << "\n";
        return 1;
    }
}

// ---- analyze ----

struct AnalyzeOptions {
    std::string mode;  // jackknife | histogram | crossing | scatter
    std::string in_path;
    std::string csv_path;
    std::string name = "chi";
    int bins = 30;
};

std::vector<ResultRow> load_checked(const std::string& path) {
    dtc::read_manifest_checked(path);  // refuses mismatched manifests
    return dtc::read_rows(path);
}

int analyze_jackknife(const AnalyzeOptions& opt) {
    const auto rows = load_checked(opt.in_path);
    // group by (L, g): jackknife over instances
    std::map<std::pair<int, double>, std::map<std::uint64_t, std::vector<double>>> grouped;
    for (const auto& r : rows)
        if (r.name == opt.name) grouped[{r.length, r.g}][r.seed].push_back(r.value);
    std::ofstream csv(opt.csv_path);
    csv << "L,g,n,estimate,stderr\n";
    for (const auto& [key, by_seed] : grouped) {
        std::vector<double> per_instance;
        for (const auto& [seed, vals] : by_seed) {
            double m = 0.0;
            for (double v : vals) m += v;
            per_instance.push_back(m / static_cast<double>(vals.size()));
        }
        const auto jk = dtc::jackknife_mean(per_instance);
        csv << key.first << "," << key.second << "," << jk.n << "," << jk.estimate << "," << jk.stderr_ << "\n";
        std::cout << "L=" << key.first << " g=" << key.second << ": " << jk.estimate << " +- " << jk.stderr_
                  << " (n=" << jk.n << ")\n";
    }
    return 0;
}

int analyze_histogram(const AnalyzeOptions& opt) {
    const auto rows = load_checked(opt.in_path);
    std::vector<double> values;
    for (const auto& r : rows)
        if (r.name == opt.name) values.push_back(r.value);
    if (values.empty()) {
        std::cerr << "no rows named '" << opt.name << "'\n";
        return 2;
    }
    const auto st = dtc::histogram_stats(values, opt.bins);
    std::ofstream csv(opt.csv_path);
    csv << "bin_lo,bin_hi,count\n";
    for (std::size_t b = 0; b + 1 < st.bin_edges.size(); ++b)
        csv << st.bin_edges[b] << "," << st.bin_edges[b + 1] << "," << st.bin_counts[b] << "\n";
    std::cout << "n=" << st.n << " mu=" << st.mean << " sigma=" << st.sigma << " sigma/mu=" << st.ratio
              << (st.ratio_flagged ? " (flagged: degenerate mean)" : "") << "\n";
    return 0;
}

int analyze_crossing(const AnalyzeOptions& opt) {
    const auto rows = load_checked(opt.in_path);
    std::map<int, std::map<double, std::map<std::uint64_t, std::vector<double>>>> grouped;
    for (const auto& r : rows)
        if (r.name == opt.name) grouped[r.length][r.g][r.seed].push_back(r.value);
    std::vector<dtc::SizeCurve> curves;
    std::ofstream csv(opt.csv_path);
    csv << "L,g,value,stderr\n";
    for (const auto& [L, by_g] : grouped) {
        dtc::SizeCurve c;
        c.length = L;
        for (const auto& [g, by_seed] : by_g) {
            std::vector<double> per_instance;
            for (const auto& [seed, vals] : by_seed) {
                double m = 0.0;
                for (double v : vals) m += v;
                per_instance.push_back(m / static_cast<double>(vals.size()));
            }
            const auto jk = dtc::jackknife_mean(per_instance);
            c.g.push_back(g);
            c.value.push_back(jk.estimate);
            c.stderr_.push_back(jk.stderr_);
            csv << L << "," << g << "," << jk.estimate << "," << jk.stderr_ << "\n";
        }
        curves.push_back(std::move(c));
    }
    if (curves.size() < 2) {
        std::cerr << "need at least two chain lengths for a crossing\n";
        return 2;
    }
    const auto est = dtc::crossing_estimate(curves);
    if (!est.found) {
        std::cout << "no crossing on the scanned grid\n";
        return 0;
    }
    std::cout << "crossing interval [" << est.g_lo << ", " << est.g_hi << "], center " << est.center << "\n";
    for (const auto& p : est.pairs)
        std::cout << "  L=" << p.length_a << " x L=" << p.length_b << ": g=" << p.g << " +- " << p.stderr_ << "\n";
    return 0;
}

int analyze_scatter(const AnalyzeOptions& opt) {
    const auto rows = load_checked(opt.in_path);
    // join energy rows with |A| values per (seed, bitstring), averaging the
    // autocorrelator over its recorded cycles
    std::map<std::pair<std::uint64_t, std::string>, std::pair<double, int>> a_acc;
    std::map<std::pair<std::uint64_t, std::string>, double> e_val;
    for (const auto& r : rows) {
        if (r.name == "A") {
            auto& acc = a_acc[{r.seed, r.bitstring}];
            acc.first += std::abs(r.value);
            acc.second += 1;
        } else if (r.name == "E") {
            e_val[{r.seed, r.bitstring}] = r.value;
        }
    }
    std::vector<dtc::ScatterPoint> pts;
    for (const auto& [key, acc] : a_acc) {
        const auto it = e_val.find(key);
        if (it == e_val.end()) continue;
        pts.push_back({it->second, acc.first / acc.second});
    }
    if (pts.empty()) {
        std::cerr << "join failed: no (E, A) pairs; run autocorr with --emit-energy\n";
        return 2;
    }
    const auto an = dtc::energy_scatter(pts, 0.2);
    std::ofstream csv(opt.csv_path);
    csv << "window_center,mean,stderr,count\n";
    for (std::size_t i = 0; i < an.window_center.size(); ++i)
        csv << an.window_center[i] << "," << an.window_mean[i] << "," << an.window_stderr[i] << ","
            << an.window_count[i] << "\n";
    std::cout << pts.size() << " pairs, " << an.window_center.size() << " windows; slope " << an.slope
              << " +- " << an.slope_stderr << ", variation chi2 " << an.variation_chi2 << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kicked-Ising chain simulation lab"};
    app.require_subcommand(1);
    app.set_config("--config");

    RunConfig cfg;
    std::string g_grid;
    const std::set<std::string> protocols = {"autocorr", "echo",        "typicality",   "perturb",
                                             "chisg",    "heff-energy", "calibrate-sim"};
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : protocols) {
        CLI::App* cmd = app.add_subcommand(name, name + " ensemble run");
        add_common_options(cmd, cfg, g_grid);
        subs[name] = cmd;
    }

    AnalyzeOptions aopt;
    CLI::App* analyze = app.add_subcommand("analyze", "analyze a JSONL result file");
    analyze->add_option("--mode", aopt.mode, "jackknife | histogram | crossing | scatter")->required();
    analyze->add_option("--in", aopt.in_path, "input JSONL path")->required();
    analyze->add_option("--csv", aopt.csv_path, "output CSV path")->required();
    analyze->add_option("--name", aopt.name, "row name to analyze");
    analyze->add_option("--bins", aopt.bins, "histogram bin count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            if (aopt.mode == "jackknife") return analyze_jackknife(aopt);
            if (aopt.mode == "histogram") return analyze_histogram(aopt);
            if (aopt.mode == "crossing") return analyze_crossing(aopt);
            if (aopt.mode == "scatter") return analyze_scatter(aopt);
            std::cerr << "unknown analyze mode: " << aopt.mode << "\n";
            return 2;
        }
        for (const auto& [name, cmd] : subs) {
            if (cmd->parsed()) {
                cfg.protocol = name;
                return run_protocol(cfg, g_grid);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
