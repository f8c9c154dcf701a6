#include "dtclab/result_row.hpp"

#include <fstream>
#include <stdexcept>
#include <tuple>

namespace dtc {

bool row_less(const ResultRow& a, const ResultRow& b) {
    return std::tie(a.protocol, a.length, a.g, a.seed, a.bitstring, a.name, a.qubit, a.cycle, a.value) <
           std::tie(b.protocol, b.length, b.g, b.seed, b.bitstring, b.name, b.qubit, b.cycle, b.value);
}

nlohmann::json to_json(const ResultRow& row) {
    nlohmann::json j{{"schema", kRowSchemaVersion}, {"protocol", row.protocol}, {"seed", row.seed},
                     {"L", row.length},             {"g", row.g},              {"bitstring", row.bitstring},
                     {"qubit", row.qubit},          {"cycle", row.cycle},      {"name", row.name},
                     {"value", row.value}};
    if (!row.aux.is_null()) j["aux"] = row.aux;
    return j;
}

ResultRow row_from_json(const nlohmann::json& j) {
    if (j.at("schema").get<int>() != kRowSchemaVersion)
        throw std::runtime_error("row_from_json: unsupported schema version");
    ResultRow row;
    row.protocol = j.at("protocol").get<std::string>();
    row.seed = j.at("seed").get<std::uint64_t>();
    row.length = j.at("L").get<int>();
    row.g = j.at("g").get<double>();
    row.bitstring = j.at("bitstring").get<std::string>();
    row.qubit = j.at("qubit").get<int>();
    row.cycle = j.at("cycle").get<int>();
    row.name = j.at("name").get<std::string>();
    row.value = j.at("value").get<double>();
    if (j.contains("aux")) row.aux = j.at("aux");
    return row;
}

std::string bits_to_hex(const std::vector<int>& bits) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    const int L = static_cast<int>(bits.size());
    const int nibbles = (L + 3) / 4;
    for (int n = 0; n < nibbles; ++n) {
        int v = 0;
        for (int k = 0; k < 4; ++k) {
            const int pos = 4 * n + k;
            v = (v << 1) | (pos < L ? bits[static_cast<std::size_t>(pos)] : 0);
        }
        out.push_back(digits[v]);
    }
    return out;
}

std::vector<int> hex_to_bits(const std::string& hex, int length) {
    std::vector<int> bits;
    bits.reserve(static_cast<std::size_t>(length));
    for (char c : hex) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw std::invalid_argument("hex_to_bits: not a hex digit");
        for (int k = 3; k >= 0; --k) bits.push_back((v >> k) & 1);
    }
    if (static_cast<int>(bits.size()) < length) throw std::invalid_argument("hex_to_bits: string too short");
    bits.resize(static_cast<std::size_t>(length));
    return bits;
}

std::uint64_t config_hash(const nlohmann::json& config) {
    const std::string s = config.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

nlohmann::json to_json(const Manifest& m) {
    return nlohmann::json{{"schema", kRowSchemaVersion}, {"config", m.config},       {"config_hash", m.hash},
                          {"version", m.version},        {"wall_seconds", m.wall_seconds},
                          {"rows", m.row_count},         {"failures", m.failures}};
}

Manifest manifest_from_json(const nlohmann::json& j) {
    Manifest m;
    m.config = j.at("config");
    m.hash = j.at("config_hash").get<std::uint64_t>();
    m.version = j.at("version").get<std::string>();
    m.wall_seconds = j.at("wall_seconds").get<double>();
    m.row_count = j.at("rows").get<std::uint64_t>();
    m.failures = j.at("failures").get<std::vector<std::string>>();
    return m;
}

void write_rows(const std::string& path, const std::vector<ResultRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_rows: cannot open " + path);
    for (const auto& r : rows) out << to_json(r).dump() << '\n';
}

std::vector<ResultRow> read_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_rows: cannot open " + path);
    std::vector<ResultRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(row_from_json(nlohmann::json::parse(line)));
    }
    return rows;
}

std::string manifest_path_for(const std::string& rows_path) { return rows_path + ".manifest.json"; }

void write_manifest(const std::string& rows_path, const Manifest& m) {
    std::ofstream out(manifest_path_for(rows_path));
    if (!out) throw std::runtime_error("write_manifest: cannot open " + manifest_path_for(rows_path));
    out << to_json(m).dump(2) << '\n';
}

Manifest read_manifest(const std::string& rows_path) {
    std::ifstream in(manifest_path_for(rows_path));
    if (!in) throw std::runtime_error("read_manifest: cannot open " + manifest_path_for(rows_path));
    nlohmann::json j;
    in >> j;
    return manifest_from_json(j);
}

Manifest read_manifest_checked(const std::string& rows_path) {
    Manifest m = read_manifest(rows_path);
    if (config_hash(m.config) != m.hash)
        throw std::runtime_error("manifest hash does not match its config: refusing " + rows_path);
    return m;
}

nlohmann::json instance_to_json(const DisorderInstance& inst) {
    return nlohmann::json{{"L", inst.length},
                          {"g", inst.g},
                          {"seed", inst.seed},
                          {"phi", inst.phi},
                          {"h", inst.h},
                          {"mode", inst.mode == CouplingMode::uniform ? "uniform" : "disordered"}};
}

DisorderInstance instance_from_json(const nlohmann::json& j) {
    return make_instance(j.at("L").get<int>(), j.at("g").get<double>(), j.at("seed").get<std::uint64_t>(),
                         j.at("phi").get<std::vector<double>>(), j.at("h").get<std::vector<double>>(),
                         j.at("mode").get<std::string>() == "uniform" ? CouplingMode::uniform
                                                                      : CouplingMode::disordered);
}

}  // namespace dtc
