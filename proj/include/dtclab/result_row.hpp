#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dtclab/model.hpp"

namespace dtc {

inline constexpr int kRowSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";

/// One persisted measurement: a single (protocol, instance, qubit, cycle,
/// name) -> value record, plus free-form auxiliary data.
struct ResultRow {
    std::string protocol;
    std::uint64_t seed = 0;
    int length = 0;
    double g = 0.0;
    std::string bitstring;  // hex, most significant qubit first; "" if n/a
    int qubit = -1;
    int cycle = -1;
    std::string name;
    double value = 0.0;
    nlohmann::json aux;  // optional

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

bool row_less(const ResultRow& a, const ResultRow& b);

nlohmann::json to_json(const ResultRow& row);
ResultRow row_from_json(const nlohmann::json& j);

std::string bits_to_hex(const std::vector<int>& bits);
std::vector<int> hex_to_bits(const std::string& hex, int length);

// FNV-1a over the canonical (sorted-key) dump; stamped into manifests.
std::uint64_t config_hash(const nlohmann::json& config);

/// Sidecar metadata for a result file: the full config, its hash, code
/// version, wall time, and any per-instance failures.
struct Manifest {
    nlohmann::json config;
    std::uint64_t hash = 0;
    std::string version = kVersion;
    double wall_seconds = 0.0;
    std::uint64_t row_count = 0;
    std::vector<std::string> failures;
};

nlohmann::json to_json(const Manifest& m);
Manifest manifest_from_json(const nlohmann::json& j);

void write_rows(const std::string& path, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_rows(const std::string& path);

std::string manifest_path_for(const std::string& rows_path);
void write_manifest(const std::string& rows_path, const Manifest& m);
Manifest read_manifest(const std::string& rows_path);
// Throws when the stored hash does not match the stored config.
Manifest read_manifest_checked(const std::string& rows_path);

// Flat instance record for the JSONL schema; round-trips byte-stably.
nlohmann::json instance_to_json(const DisorderInstance& inst);
DisorderInstance instance_from_json(const nlohmann::json& j);

}  // namespace dtc
