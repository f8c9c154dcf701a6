#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dtclab/protocols.hpp"
#include "dtclab/result_row.hpp"

namespace dtc {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Declarative description of one ensemble run: the protocol, its grids,
/// the seed, and output. Validated before any compute.
struct RunConfig {
    std::string protocol;  // autocorr | echo | typicality | perturb | chisg | heff-energy | calibrate-sim
    std::vector<int> lengths{12};
    std::vector<double> g_values{0.94};
    int cycles = 30;
    int window_lo = -1, window_hi = -1;   // chisg measurement window
    std::vector<int> record_cycles;       // autocorr/echo: cycles to persist (empty = all)
    int instances = 1;
    std::uint64_t master_seed = 1;
    double noise_p = 0.0;
    std::string noise_placement = "after-2q";  // after-2q | symmetric
    std::string bitstring_policy = "random";   // hex | polarized | neel | random | all
    std::string bitstring_hex;
    int n_bitstrings = 1;   // bitstring samples per instance
    int scrambler_depth = 0;
    int qubit = -1;    // typicality target; -1 = center
    int flip_at = -1;  // perturbation site; -1 = center
    std::string coupling_mode = "disordered";  // disordered | uniform
    double phi_bar = -0.4;
    bool emit_energy = false;
    bool even_times_only = true;
    std::string out_path = "rows.jsonl";
    int workers = 0;  // 0 = hardware concurrency
    int max_sv_qubits = kMaxPureQubits;
    int max_dm_qubits = kMaxMixedQubits;

    void validate() const;  // throws ConfigError
    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);

    NoiseModel noise() const;
    bool uses_density_matrix() const;
};

struct EnsembleOutcome {
    std::string path;
    std::vector<ResultRow> rows;  // canonically sorted
    std::vector<std::string> failures;
};

/// Runs the configured protocol over the instance ensemble. Deterministic
/// given (config, master seed) regardless of worker count; rows are sorted
/// canonically before writing; a manifest records config hash and failures.
EnsembleOutcome run_ensemble(const RunConfig& cfg);

/// Deterministic job pool: results collected per job slot, so scheduling
/// order cannot affect output.
std::vector<ResultRow> run_jobs(int n_jobs, int workers,
                                const std::function<std::vector<ResultRow>(int)>& job,
                                std::vector<std::string>& failures);

// Per-(config, job) instance seed.
std::uint64_t instance_seed(std::uint64_t master, int job_index);

std::vector<int> bits_for_policy(const std::string& policy, const std::string& hex, int length,
                                 std::uint64_t instance_seed_value, int sample);

}  // namespace dtc
