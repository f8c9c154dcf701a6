#include "dtclab/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <set>
#include <thread>

#include "dtclab/calibration.hpp"
#include "dtclab/heff.hpp"

namespace dtc {

namespace {

const std::set<std::string> kProtocols = {"autocorr", "echo",        "typicality",   "perturb",
                                          "chisg",    "heff-energy", "calibrate-sim"};

bool record_cycle(const RunConfig& cfg, int t) {
    if (cfg.record_cycles.empty()) return true;
    return std::find(cfg.record_cycles.begin(), cfg.record_cycles.end(), t) != cfg.record_cycles.end();
}

}  // namespace

void RunConfig::validate() const {
    if (!kProtocols.contains(protocol)) throw ConfigError("unknown protocol: " + protocol);
    if (lengths.empty()) throw ConfigError("no chain lengths given");
    if (g_values.empty()) throw ConfigError("no g values given");
    if (instances < 1) throw ConfigError("instance count must be at least 1");
    if (cycles < 0 || cycles > 10000) throw ConfigError("cycle count out of range");
    if (noise_p < 0.0 || noise_p > 0.75) throw ConfigError("noise rate must lie in [0, 0.75]");
    if (noise_placement != "after-2q" && noise_placement != "symmetric")
        throw ConfigError("noise placement must be 'after-2q' or 'symmetric'");
    if (coupling_mode != "disordered" && coupling_mode != "uniform")
        throw ConfigError("coupling mode must be 'disordered' or 'uniform'");
    const std::set<std::string> policies = {"hex", "polarized", "neel", "random", "all"};
    if (!policies.contains(bitstring_policy)) throw ConfigError("unknown bitstring policy: " + bitstring_policy);
    if (n_bitstrings < 1) throw ConfigError("bitstring sample count must be at least 1");
    if (scrambler_depth < 0) throw ConfigError("scrambler depth must be non-negative");
    if (workers < 0) throw ConfigError("worker count must be non-negative");
    for (double g : g_values)
        if (g < 0.0 || g > 1.0) throw ConfigError("g must lie in [0, 1]");
    const int max_len = uses_density_matrix() ? max_dm_qubits : max_sv_qubits;
    for (int L : lengths) {
        if (L < 2) throw ConfigError("chains need at least two qubits");
        if (L > max_len)
            throw ConfigError("L = " + std::to_string(L) + " exceeds the memory guard (max " +
                              std::to_string(max_len) + (uses_density_matrix() ? ", density-matrix mode)" : ")"));
        if (protocol == "typicality" && L + 1 > max_sv_qubits)
            throw ConfigError("typicality needs one ancilla: L + 1 exceeds the state-vector guard");
        if (bitstring_policy == "all" && L > 12) throw ConfigError("exhaustive bitstrings limited to L <= 12");
        if (bitstring_policy == "hex") hex_to_bits(bitstring_hex, L);  // parse check
    }
    if (protocol == "chisg") {
        if (window_lo < 0 || window_hi < window_lo) throw ConfigError("chisg needs a valid t window");
        if (window_hi > 10000) throw ConfigError("chisg window out of range");
        for (int L : lengths)
            if (L < 4) throw ConfigError("chisg needs at least four qubits");
    }
    if (protocol == "calibrate-sim" && (lengths.size() != 1 || g_values.size() != 1))
        throw ConfigError("calibrate-sim ignores L/g grids; give single placeholder values");
}

NoiseModel RunConfig::noise() const {
    NoiseModel n;
    n.p = noise_p;
    n.placement = noise_placement == "symmetric" ? NoiseModel::Placement::symmetric_per_cycle
                                                 : NoiseModel::Placement::after_two_qubit;
    return n;
}

bool RunConfig::uses_density_matrix() const {
    return noise_p > 0.0 && (protocol == "echo" || protocol == "chisg");
}

nlohmann::json RunConfig::to_json() const {
    return nlohmann::json{{"protocol", protocol},
                          {"lengths", lengths},
                          {"g_values", g_values},
                          {"cycles", cycles},
                          {"window_lo", window_lo},
                          {"window_hi", window_hi},
                          {"record_cycles", record_cycles},
                          {"instances", instances},
                          {"master_seed", master_seed},
                          {"noise_p", noise_p},
                          {"noise_placement", noise_placement},
                          {"bitstring_policy", bitstring_policy},
                          {"bitstring_hex", bitstring_hex},
                          {"n_bitstrings", n_bitstrings},
                          {"scrambler_depth", scrambler_depth},
                          {"qubit", qubit},
                          {"flip_at", flip_at},
                          {"coupling_mode", coupling_mode},
                          {"phi_bar", phi_bar},
                          {"emit_energy", emit_energy},
                          {"even_times_only", even_times_only},
                          {"out_path", out_path},
                          {"workers", workers},
                          {"max_sv_qubits", max_sv_qubits},
                          {"max_dm_qubits", max_dm_qubits}};
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    c.protocol = j.value("protocol", c.protocol);
    c.lengths = j.value("lengths", c.lengths);
    c.g_values = j.value("g_values", c.g_values);
    c.cycles = j.value("cycles", c.cycles);
    c.window_lo = j.value("window_lo", c.window_lo);
    c.window_hi = j.value("window_hi", c.window_hi);
    c.record_cycles = j.value("record_cycles", c.record_cycles);
    c.instances = j.value("instances", c.instances);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.noise_p = j.value("noise_p", c.noise_p);
    c.noise_placement = j.value("noise_placement", c.noise_placement);
    c.bitstring_policy = j.value("bitstring_policy", c.bitstring_policy);
    c.bitstring_hex = j.value("bitstring_hex", c.bitstring_hex);
    c.n_bitstrings = j.value("n_bitstrings", c.n_bitstrings);
    c.scrambler_depth = j.value("scrambler_depth", c.scrambler_depth);
    c.qubit = j.value("qubit", c.qubit);
    c.flip_at = j.value("flip_at", c.flip_at);
    c.coupling_mode = j.value("coupling_mode", c.coupling_mode);
    c.phi_bar = j.value("phi_bar", c.phi_bar);
    c.emit_energy = j.value("emit_energy", c.emit_energy);
    c.even_times_only = j.value("even_times_only", c.even_times_only);
    c.out_path = j.value("out_path", c.out_path);
    c.workers = j.value("workers", c.workers);
    c.max_sv_qubits = j.value("max_sv_qubits", c.max_sv_qubits);
    c.max_dm_qubits = j.value("max_dm_qubits", c.max_dm_qubits);
    return c;
}

std::uint64_t instance_seed(std::uint64_t master, int job_index) {
    return splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(job_index) + 0x9d4ab1ULL));
}

std::vector<int> bits_for_policy(const std::string& policy, const std::string& hex, int length,
                                 std::uint64_t instance_seed_value, int sample) {
    if (policy == "polarized") return std::vector<int>(static_cast<std::size_t>(length), 0);
    if (policy == "neel") {
        std::vector<int> bits(static_cast<std::size_t>(length));
        for (int q = 0; q < length; ++q) bits[static_cast<std::size_t>(q)] = q % 2;
        return bits;
    }
    if (policy == "hex") return hex_to_bits(hex, length);
    if (policy == "random") {
        Rng rng = Rng::substream(instance_seed_value, 0xb175 + static_cast<std::uint64_t>(sample));
        return random_bits(length, rng);
    }
    if (policy == "all") {
        std::vector<int> bits(static_cast<std::size_t>(length));
        for (int q = 0; q < length; ++q)
            bits[static_cast<std::size_t>(q)] = static_cast<int>((static_cast<std::uint64_t>(sample) >> (length - 1 - q)) & 1);
        return bits;
    }
    throw ConfigError("unknown bitstring policy: " + policy);
}

std::vector<ResultRow> run_jobs(int n_jobs, int workers,
                                const std::function<std::vector<ResultRow>(int)>& job,
                                std::vector<std::string>& failures) {
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = std::min(workers, std::max(1, n_jobs));

    std::vector<std::vector<ResultRow>> slots(static_cast<std::size_t>(n_jobs));
    std::vector<std::string> errors(static_cast<std::size_t>(n_jobs));
    std::atomic<int> next{0};
    auto work = [&]() {
        for (;;) {
            const int id = next.fetch_add(1);
            if (id >= n_jobs) return;
            try {
                slots[static_cast<std::size_t>(id)] = job(id);
            } catch (const std::exception& e) {
                errors[static_cast<std::size_t>(id)] = e.what();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    std::vector<ResultRow> rows;
    for (int id = 0; id < n_jobs; ++id) {
        auto& slot = slots[static_cast<std::size_t>(id)];
        rows.insert(rows.end(), slot.begin(), slot.end());
        if (!errors[static_cast<std::size_t>(id)].empty())
            failures.push_back("job " + std::to_string(id) + ": " + errors[static_cast<std::size_t>(id)]);
    }
    return rows;
}

namespace {

struct JobKey {
    int length;
    double g;
    int instance;
};

JobKey job_key(const RunConfig& cfg, int id) {
    const int per_length = static_cast<int>(cfg.g_values.size()) * cfg.instances;
    const int li = id / per_length;
    const int rest = id % per_length;
    const int gi = rest / cfg.instances;
    const int ii = rest % cfg.instances;
    return {cfg.lengths[static_cast<std::size_t>(li)], cfg.g_values[static_cast<std::size_t>(gi)], ii};
}

DisorderInstance instance_for(const RunConfig& cfg, const JobKey& key, std::uint64_t seed) {
    return cfg.coupling_mode == "uniform" ? uniform_instance(key.length, key.g, cfg.phi_bar, seed)
                                          : sample_disorder(key.length, key.g, seed);
}

int sample_count(const RunConfig& cfg, int length) {
    if (cfg.bitstring_policy == "all") return 1 << length;
    return cfg.n_bitstrings;
}

ResultRow base_row(const RunConfig& cfg, const DisorderInstance& inst) {
    ResultRow r;
    r.protocol = cfg.protocol;
    r.seed = inst.seed;
    r.length = inst.length;
    r.g = inst.g;
    return r;
}

std::vector<ResultRow> autocorr_job(const RunConfig& cfg, const DisorderInstance& inst) {
    std::vector<ResultRow> rows;
    ResultRow proto = base_row(cfg, inst);
    {
        ResultRow meta = proto;
        meta.name = "instance";
        meta.aux = instance_to_json(inst);
        rows.push_back(meta);
    }
    const int samples = sample_count(cfg, inst.length);
    for (int s = 0; s < samples; ++s) {
        const auto bits = bits_for_policy(cfg.bitstring_policy, cfg.bitstring_hex, inst.length, inst.seed, s);
        const auto series = run_autocorrelator(inst, bits, cfg.cycles);
        ResultRow r = proto;
        r.bitstring = bits_to_hex(bits);
        for (const auto& sq : series) {
            r.qubit = sq.qubit;
            r.name = "A";
            for (int t = 0; t <= cfg.cycles; ++t) {
                if (!record_cycle(cfg, t)) continue;
                r.cycle = t;
                r.value = sq.values[static_cast<std::size_t>(t)];
                rows.push_back(r);
            }
        }
        if (cfg.emit_energy) {
            ResultRow e = proto;
            e.bitstring = r.bitstring;
            e.name = "E";
            e.value = cfg.coupling_mode == "uniform"
                          ? bitstring_energy_uniform(bits, cfg.phi_bar)
                          : bitstring_energy_disordered(bits, delta_phi_of(inst));
            rows.push_back(e);
        }
    }
    return rows;
}

std::vector<ResultRow> echo_job(const RunConfig& cfg, const DisorderInstance& inst) {
    std::vector<ResultRow> rows;
    ResultRow proto = base_row(cfg, inst);
    const int samples = sample_count(cfg, inst.length);
    std::vector<int> ts = cfg.record_cycles;
    if (ts.empty()) ts.push_back(cfg.cycles);
    for (int s = 0; s < samples; ++s) {
        const auto bits = bits_for_policy(cfg.bitstring_policy, cfg.bitstring_hex, inst.length, inst.seed, s);
        for (int t : ts) {
            const EchoResult echo = run_echo_normalization(inst, bits, t, cfg.noise());
            ResultRow r = proto;
            r.bitstring = bits_to_hex(bits);
            r.cycle = t;
            for (int q = 0; q < inst.length; ++q) {
                r.qubit = q;
                r.name = "A0";
                r.value = echo.a0[static_cast<std::size_t>(q)];
                rows.push_back(r);
                r.name = "A0sq";
                r.value = echo.radicand[static_cast<std::size_t>(q)];
                rows.push_back(r);
            }
        }
    }
    return rows;
}

std::vector<ResultRow> typicality_job(const RunConfig& cfg, const DisorderInstance& inst) {
    std::vector<ResultRow> rows;
    ResultRow proto = base_row(cfg, inst);
    const int target = cfg.qubit >= 0 ? cfg.qubit : inst.length / 2;
    const SpreadStats st = typicality_spread(inst, cfg.scrambler_depth, target, cfg.cycles,
                                             std::max(2, cfg.n_bitstrings),
                                             splitmix64(inst.seed ^ 0x7f3a2bULL));
    ResultRow r = proto;
    r.qubit = target;
    r.cycle = cfg.cycles;
    for (std::size_t i = 0; i < st.samples.size(); ++i) {
        r.name = "Xa";
        r.value = st.samples[i];
        r.aux = nlohmann::json{{"sample", i}, {"K", cfg.scrambler_depth}};
        rows.push_back(r);
    }
    r.aux = nlohmann::json{{"K", cfg.scrambler_depth}, {"flagged", st.flagged}};
    r.name = "sigma";
    r.value = st.sigma;
    rows.push_back(r);
    r.name = "mu";
    r.value = st.mean;
    rows.push_back(r);
    r.name = "sigma_over_mu";
    r.value = st.ratio;
    rows.push_back(r);
    return rows;
}

std::vector<ResultRow> perturb_job(const RunConfig& cfg, const DisorderInstance& inst) {
    std::vector<ResultRow> rows;
    ResultRow proto = base_row(cfg, inst);
    const int flip = cfg.flip_at >= 0 ? cfg.flip_at : inst.length / 2;
    const auto bits = bits_for_policy(cfg.bitstring_policy, cfg.bitstring_hex, inst.length, inst.seed, 0);
    const ZetaField field = run_perturbation(inst, bits, flip, cfg.cycles);
    ResultRow r = proto;
    r.bitstring = bits_to_hex(bits);
    r.aux = nlohmann::json{{"flip_at", flip}};
    for (int t = 0; t <= cfg.cycles; ++t) {
        if (!record_cycle(cfg, t)) continue;
        r.cycle = t;
        for (int q = 0; q < inst.length; ++q) {
            r.qubit = q;
            r.name = "zeta_r";
            r.value = field.zeta_r[static_cast<std::size_t>(t)][static_cast<std::size_t>(q)];
            rows.push_back(r);
        }
    }
    if (cfg.window_lo >= 0 && cfg.window_hi >= cfg.window_lo && cfg.window_hi <= cfg.cycles) {
        const auto wm = field.window_mean(cfg.window_lo, cfg.window_hi);
        r.cycle = -1;
        r.aux = nlohmann::json{{"flip_at", flip}, {"window", {cfg.window_lo, cfg.window_hi}}};
        for (int q = 0; q < inst.length; ++q) {
            r.qubit = q;
            r.name = "zeta_r_window";
            r.value = wm[static_cast<std::size_t>(q)];
            rows.push_back(r);
        }
    }
    return rows;
}

std::vector<ResultRow> chisg_job(const RunConfig& cfg, const DisorderInstance& inst) {
    std::vector<ResultRow> rows;
    const auto bits = bits_for_policy(cfg.bitstring_policy, cfg.bitstring_hex, inst.length, inst.seed, 0);
    const SpinGlassResult res =
        spin_glass_chi(inst, bits, cfg.window_lo, cfg.window_hi, cfg.noise(), cfg.even_times_only);
    ResultRow r = base_row(cfg, inst);
    r.bitstring = bits_to_hex(bits);
    r.name = "chi";
    r.value = res.chi;
    r.aux = nlohmann::json{{"window", {cfg.window_lo, cfg.window_hi}}, {"even_only", cfg.even_times_only}};
    rows.push_back(r);
    return rows;
}

std::vector<ResultRow> heff_energy_job(const RunConfig& cfg, const DisorderInstance& inst) {
    std::vector<ResultRow> rows;
    ResultRow proto = base_row(cfg, inst);
    const int samples = sample_count(cfg, inst.length);
    for (int s = 0; s < samples; ++s) {
        const auto bits = bits_for_policy(cfg.bitstring_policy, cfg.bitstring_hex, inst.length, inst.seed, s);
        ResultRow r = proto;
        r.bitstring = bits_to_hex(bits);
        r.name = "E";
        r.value = cfg.coupling_mode == "uniform" ? bitstring_energy_uniform(bits, cfg.phi_bar)
                                                 : bitstring_energy_disordered(bits, delta_phi_of(inst));
        rows.push_back(r);
    }
    return rows;
}

std::vector<ResultRow> calibrate_job(const RunConfig& cfg, std::uint64_t seed) {
    // One random gate draw per job, in the regime the sequences identify:
    // phases extracted at theta = 0, the iSWAP angle from its own sequence.
    Rng rng = Rng::substream(seed, 0xca1);
    FsimParams truth;
    truth.phi = -rng.uniform(0.1, 1.5 * kPi);
    truth.delta_plus = truth.phi / 2.0 + rng.uniform(-0.1, 0.1);
    truth.delta_minus = rng.uniform(-0.15, 0.15);
    truth.delta_minus_off = rng.uniform(0.0, 2.0 * kPi);
    truth.theta = rng.uniform(0.0, 0.08);

    std::vector<ResultRow> rows;
    ResultRow r;
    r.protocol = cfg.protocol;
    r.seed = seed;
    r.length = 2;
    r.g = 0.0;

    FsimParams phase_gate = truth;
    phase_gate.theta = 0.0;
    std::vector<double> xi_grid;
    for (int i = 0; i < 16; ++i) xi_grid.push_back(2.0 * kPi * i / 16.0);
    const auto dm = simulate_delta_minus(phase_gate, 8, xi_grid);
    std::vector<int> depths;
    for (int d = 1; d <= 10; ++d) depths.push_back(d);
    const auto ps = simulate_phase_sums(phase_gate, depths, true);

    std::vector<double> psi_grid;
    for (int i = 0; i < 32; ++i) psi_grid.push_back(kPi * i / 32.0);
    const auto th = simulate_theta(truth, 17, psi_grid);

    auto emit = [&](const std::string& name, double estimate, double truth_value, bool flagged) {
        r.name = name;
        r.value = estimate;
        r.aux = nlohmann::json{{"true", truth_value}, {"error", estimate - truth_value}, {"flagged", flagged}};
        rows.push_back(r);
    };
    emit("delta_minus", dm.fit.estimate, truth.delta_minus, dm.fit.flagged);
    emit("delta_plus", ps.delta_plus.estimate, truth.delta_plus, ps.delta_plus.flagged);
    emit("phi", ps.phi.estimate, truth.phi, ps.phi.flagged);
    emit("theta", th.fit.estimate, truth.theta, th.fit.flagged);
    return rows;
}

}  // namespace

EnsembleOutcome run_ensemble(const RunConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const int n_jobs = static_cast<int>(cfg.lengths.size() * cfg.g_values.size()) * cfg.instances;

    auto job = [&cfg](int id) -> std::vector<ResultRow> {
        const JobKey key = job_key(cfg, id);
        const std::uint64_t seed = instance_seed(cfg.master_seed, id);
        if (cfg.protocol == "calibrate-sim") return calibrate_job(cfg, seed);
        const DisorderInstance inst = instance_for(cfg, key, seed);
        if (cfg.protocol == "autocorr") return autocorr_job(cfg, inst);
        if (cfg.protocol == "echo") return echo_job(cfg, inst);
        if (cfg.protocol == "typicality") return typicality_job(cfg, inst);
        if (cfg.protocol == "perturb") return perturb_job(cfg, inst);
        if (cfg.protocol == "chisg") return chisg_job(cfg, inst);
        if (cfg.protocol == "heff-energy") return heff_energy_job(cfg, inst);
        throw ConfigError("unknown protocol: " + cfg.protocol);
    };

    EnsembleOutcome out;
    out.rows = run_jobs(n_jobs, cfg.workers, job, out.failures);
    std::sort(out.rows.begin(), out.rows.end(), row_less);
    out.path = cfg.out_path;
    write_rows(cfg.out_path, out.rows);

    Manifest m;
    m.config = cfg.to_json();
    m.hash = config_hash(m.config);
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m.row_count = out.rows.size();
    m.failures = out.failures;
    write_manifest(cfg.out_path, m);
    return out;
}

}  // namespace dtc
