#include "scdc/configio.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "scdc/constants.hpp"
#include "scdc/errors.hpp"

namespace scdc {

using nlohmann::json;

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

int parse_small_uint(const std::string& s, int max, const char* what) {
    if (!all_digits(s) || s.size() > 4) throw FormatError(std::string(what) + ": bad integer");
    int v = std::stoi(s);
    if (v > max) throw FormatError(std::string(what) + ": value too large");
    return v;
}

BitString bits_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw FormatError(std::string("sampler config: missing field ") + key);
    return BitString::from_string(j[key].get<std::string>());
}

uint64_t uint_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        throw FormatError(std::string("config: missing unsigned field ") + key);
    return j[key].get<uint64_t>();
}

std::string hex_of_bits(const BitString& b) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    uint8_t cur = 0;
    int used = 0;
    for (size_t i = 0; i < b.size(); ++i) {
        cur = static_cast<uint8_t>(cur << 1 | (b.bit(i) ? 1 : 0));
        if (++used == 4) {
            out.push_back(digits[cur]);
            cur = 0;
            used = 0;
        }
    }
    if (used) out.push_back(digits[cur << (4 - used)]);
    return out;
}

BitString bits_of_hex(const std::string& hex, uint64_t nbits) {
    if (nbits > 4096) throw FormatError("bytecode: too many bits");
    if (hex.size() != (nbits + 3) / 4) throw FormatError("bytecode: hex length mismatch");
    BitString out;
    for (uint64_t i = 0; i < nbits; ++i) {
        char c = hex[i / 4];
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw FormatError("bytecode: not hex");
        out.push_back((v >> (3 - i % 4)) & 1);
    }
    return out;
}

Rational rational_from_json(const json& j, const char* what) {
    if (j.is_string()) return parse_eps(j.get<std::string>());
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer())
        return Rational(j[0].get<int64_t>(), j[1].get<int64_t>());
    throw FormatError(std::string(what) + ": expected \"1/2^J\" or [num, den]");
}

}  // namespace

DyadicProb parse_delta(const std::string& s) {
    if (s.rfind("2^-", 0) != 0) throw FormatError("delta: expected the form 2^-Q");
    return DyadicProb::pow2_inv(parse_small_uint(s.substr(3), 4096, "delta"));
}

Rational parse_eps(const std::string& s) {
    if (s.rfind("1/2^", 0) != 0) throw FormatError("eps: expected the form 1/2^J");
    int j = parse_small_uint(s.substr(4), 62, "eps");
    if (j < 1) throw FormatError("eps: must be below 1");
    return Rational::pow2_inv(j);
}

uint64_t parse_seed_hex(const std::string& s) {
    if (s.empty() || s.size() > 16) throw FormatError("seed: expected 1..16 hex digits");
    uint64_t v = 0;
    for (char c : s) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw FormatError("seed: not hex");
        v = v << 4 | static_cast<uint64_t>(d);
    }
    return v;
}

SamplerSpec sampler_from_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw FormatError("sampler config: not a JSON object");
    if (j.contains("builtin")) return builtin_sampler(j["builtin"].get<std::string>());
    if (!j.contains("kind") || !j["kind"].is_string())
        throw FormatError("sampler config: missing kind");
    std::string kind = j["kind"].get<std::string>();

    if (kind == "uniform-subset") {
        if (!j.contains("subset") || !j["subset"].is_array())
            throw FormatError("sampler config: uniform-subset needs a subset array");
        std::vector<BitString> members;
        for (const auto& e : j["subset"]) members.push_back(BitString::from_string(e.get<std::string>()));
        return SamplerSpec::uniform_subset_of(std::move(members));
    }
    if (kind == "biased-bit") {
        return SamplerSpec::biased(static_cast<int>(uint_field(j, "n")),
                                   rational_from_json(j.at("bias"), "bias"));
    }
    if (kind == "dyadic-table") {
        if (!j.contains("table") || !j["table"].is_array())
            throw FormatError("sampler config: dyadic-table needs a table array");
        std::vector<DyadicEntry> entries;
        for (const auto& e : j["table"])
            entries.push_back({bits_field(e, "value"), rational_from_json(e.at("prob"), "prob")});
        return SamplerSpec::dyadic(std::move(entries));
    }
    if (kind == "prg-stretch") return SamplerSpec::prg(static_cast<int>(uint_field(j, "n")));
    if (kind == "micro-vm") {
        uint64_t nbits = uint_field(j, "bytecode_bits");
        BitString prog = bits_of_hex(j.at("bytecode_hex").get<std::string>(), nbits);
        return SamplerSpec::micro(static_cast<int>(uint_field(j, "n")), std::move(prog),
                                  uint_field(j, "step_budget"));
    }
    throw FormatError("sampler config: unknown kind " + kind);
}

std::string sampler_to_json_text(const SamplerSpec& spec) {
    json j;
    j["kind"] = spec.kind_name();
    switch (spec.kind) {
        case SamplerKind::uniform_subset: {
            json arr = json::array();
            for (const auto& v : spec.subset) arr.push_back(v.to_string());
            j["subset"] = arr;
            break;
        }
        case SamplerKind::biased_bit:
            j["n"] = spec.n;
            j["bias"] = json::array({spec.bias.num(), spec.bias.den()});
            break;
        case SamplerKind::dyadic_table: {
            json arr = json::array();
            for (const auto& e : spec.table)
                arr.push_back({{"value", e.value.to_string()},
                               {"prob", json::array({e.prob.num(), e.prob.den()})}});
            j["table"] = arr;
            break;
        }
        case SamplerKind::prg_stretch:
            j["n"] = spec.n;
            break;
        case SamplerKind::micro_vm:
            j["n"] = spec.n;
            j["bytecode_hex"] = hex_of_bits(spec.program);
            j["bytecode_bits"] = spec.program.size();
            j["step_budget"] = spec.step_budget;
            break;
    }
    return j.dump();
}

SamplerSpec load_sampler_file(const std::string& path) {
    return sampler_from_json_text(read_text_file(path));
}

HarnessConfig load_harness_config(const std::string& path) {
    json j = json::parse(read_text_file(path), nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw FormatError("harness config: not a JSON object");
    HarnessConfig cfg;
    cfg.sampler = sampler_from_json_text(j.at("sampler").dump());
    cfg.n = static_cast<int>(uint_field(j, "n"));
    cfg.ell = static_cast<int>(uint_field(j, "ell"));
    cfg.gamma_prime = j.value("gamma_prime", 1.0);
    cfg.length_c = static_cast<int>(j.value("C", 3));
    cfg.step_budget = uint_field(j, "step_budget");
    cfg.trials = static_cast<int>(uint_field(j, "trials"));
    if (j.contains("eps")) cfg.eps = rational_from_json(j["eps"], "eps");
    if (cfg.n != cfg.sampler.n) throw FormatError("harness config: n differs from the sampler's");
    return cfg;
}

std::vector<BatteryEntry> load_battery_file(const std::string& path) {
    json j = json::parse(read_text_file(path), nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw FormatError("battery file: not a JSON object");
    if (j.value("builtin", false)) return builtin_battery();
    if (!j.contains("entries") || !j["entries"].is_array())
        throw FormatError("battery file: needs entries or builtin=true");
    std::vector<BatteryEntry> out;
    for (const auto& e : j["entries"]) {
        BatteryEntry entry;
        entry.name = e.at("name").get<std::string>();
        entry.spec = sampler_from_json_text(e.at("sampler").dump());
        entry.x = bits_field(e, "x");
        entry.delta = parse_delta(e.at("delta").get<std::string>());
        entry.t = uint_field(e, "t");
        out.push_back(std::move(entry));
    }
    return out;
}

namespace {

json base_record(const char* type) {
    json j;
    j["schema"] = constants::kSchemaVersion;
    j["type"] = type;
    return j;
}

}  // namespace

std::string estimate_record(const Estimate& est, const BitString& x) {
    json j = base_record("estimate");
    j["x"] = x.to_string();
    j["p_tilde"] = json::array({est.p_tilde.num(), est.p_tilde.den()});
    j["calls"] = est.calls;
    j["mode"] = est.mode == Estimate::Mode::success_count ? "success-count" : "cap-hit";
    j["s"] = est.s;
    return j.dump();
}

std::string certificate_record(const Certificate& cert) {
    json j = base_record("certificate");
    j["representation_bits"] = cert.representation.size();
    j["codeword_bits"] = cert.codeword.serialized_bits();
    j["mode"] = cert.codeword.mode == CodewordMode::fingerprint ? "fingerprint" : "trivial";
    j["t_c"] = cert.t_c;
    j["t_d"] = cert.t_d;
    j["trials"] = cert.trials;
    j["successes"] = cert.successes;
    j["gamma_rkt"] = cert.gamma_rkt;
    j["gamma_two_sided"] = cert.gamma_two_sided;
    if (cert.codeword.mode == CodewordMode::fingerprint) {
        FingerprintParams p = fingerprint_params(cert.codeword.n, cert.codeword.fingerprint_k(),
                                                 cert.codeword.eps / Rational(3, 1));
        j["delta_overhead_bits"] = p.delta;
    }
    return j.dump();
}

std::string battery_record(const BatteryRow& row) {
    json j = base_record("battery-row");
    j["name"] = row.name;
    j["n"] = row.n;
    j["log2_inv_delta"] = row.log2_inv_delta;
    if (row.pkt) {
        j["pkt_k"] = row.pkt->k;
        j["witness_fraction"] =
            json::array({row.pkt->witness_fraction.num(), row.pkt->witness_fraction.den()});
        j["tapes"] = row.pkt->tapes;
        j["tapes_exhaustive"] = row.pkt->tapes_exhaustive;
    }
    if (row.plain_k) j["plain_k"] = *row.plain_k;
    j["ell"] = row.ell;
    j["hitting_fraction"] =
        json::array({row.hitting_fraction.num(), row.hitting_fraction.den()});
    j["coding_bound_ok"] = row.coding_bound_ok;
    j["hitting_ok"] = row.hitting_ok;
    j["description_gap_ok"] = row.description_gap_ok;
    return j.dump();
}

std::string distinguisher_record(const DistinguisherReport& rep) {
    json j = base_record("distinguisher");
    j["trials"] = rep.trials;
    j["ell"] = rep.ell;
    j["accept_structured"] =
        json::array({rep.accept_structured.num(), rep.accept_structured.den()});
    j["accept_uniform"] = json::array({rep.accept_uniform.num(), rep.accept_uniform.den()});
    j["gap"] = json::array({rep.gap.num(), rep.gap.den()});
    json per = json::array();
    for (size_t q = 0; q < rep.per_guess.size(); ++q)
        per.push_back({{"q", q},
                       {"structured", rep.per_guess[q][0]},
                       {"uniform", rep.per_guess[q][1]}});
    j["per_guess"] = per;
    return j.dump();
}

std::string manifest_record(const std::string& command,
                            const std::vector<std::pair<std::string, std::string>>& params,
                            uint64_t seed) {
    json j = base_record("manifest");
    j["command"] = command;
    json p = json::object();
    for (const auto& [k, v] : params) p[k] = v;
    j["params"] = p;
    char seed_hex[32];
    std::snprintf(seed_hex, sizeof seed_hex, "%016llx", static_cast<unsigned long long>(seed));
    j["seed"] = seed_hex;
    j["constants_version"] = constants::kConstantsVersion;
    j["timestamp_unix"] = std::chrono::duration_cast<std::chrono::seconds>(
                              std::chrono::system_clock::now().time_since_epoch())
                              .count();
    return j.dump();
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw FormatError("cannot open for writing: " + path);
    f << text;
    if (!f) throw FormatError("write failed: " + path);
}

}  // namespace scdc
