#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "scdc/codec.hpp"
#include "scdc/configio.hpp"
#include "scdc/constants.hpp"
#include "scdc/errors.hpp"
#include "scdc/estimator.hpp"
#include "scdc/harness.hpp"
#include "scdc/pktlab.hpp"

namespace {

using namespace scdc;
using nlohmann::json;

BitString read_bits_file(const std::string& path) {
    std::string text = read_text_file(path);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
        text.pop_back();
    return BitString::from_string(text);
}

struct ManifestSink {
    std::string path;  // empty = disabled
    std::vector<std::string> lines;

    void record(const std::string& line) {
        if (!path.empty()) lines.push_back(line);
        std::cout << line << "\n";
    }
    void flush() {
        if (path.empty() || lines.empty()) return;
        std::string all;
        for (const auto& l : lines) all += l + "\n";
        std::ofstream f(path, std::ios::app);
        if (!f) throw FormatError("cannot open manifest: " + path);
        f << all;
    }
};

int run(int argc, char** argv) {
    CLI::App app{"compression lab for polynomial-time samplers"};
    app.require_subcommand(1);

    std::string in_path, out_path, sampler_path, code_path, target_path, battery_path,
        config_path, manifest_path;
    std::string delta_str, eps_str = "1/2^3", seed_str;
    int trials = 64;

    auto add_seed = [&seed_str](CLI::App* cmd) {
        cmd->add_option("--seed", seed_str, "master seed, hex")->required();
    };
    auto add_manifest = [&manifest_path](CLI::App* cmd) {
        cmd->add_option("--manifest", manifest_path, "append run records to this JSONL file");
    };

    CLI::App* c_compress = app.add_subcommand("compress", "codeword from a bit-string file");
    c_compress->add_option("--in", in_path)->required();
    c_compress->add_option("--delta", delta_str, "2^-Q")->required();
    c_compress->add_option("--eps", eps_str, "1/2^J");
    c_compress->add_option("--out", out_path)->required();
    add_seed(c_compress);
    add_manifest(c_compress);

    CLI::App* c_decompress = app.add_subcommand("decompress", "recover a string via its sampler");
    c_decompress->add_option("--sampler", sampler_path)->required();
    c_decompress->add_option("--code", code_path)->required();
    c_decompress->add_option("--out", out_path)->required();
    add_seed(c_decompress);
    add_manifest(c_decompress);

    CLI::App* c_estimate = app.add_subcommand("estimate", "sampling probability of a target");
    c_estimate->add_option("--sampler", sampler_path)->required();
    c_estimate->add_option("--target", target_path)->required();
    c_estimate->add_option("--eps", eps_str, "1/2^J");
    add_seed(c_estimate);
    add_manifest(c_estimate);

    CLI::App* c_certify = app.add_subcommand("certify", "complexity certificate for a string");
    c_certify->add_option("--sampler", sampler_path)->required();
    c_certify->add_option("--in", in_path)->required();
    c_certify->add_option("--delta", delta_str, "2^-Q")->required();
    c_certify->add_option("--eps", eps_str, "1/2^J");
    c_certify->add_option("--trials", trials);
    add_seed(c_certify);
    add_manifest(c_certify);

    CLI::App* c_pktlab = app.add_subcommand("pktlab", "program-enumeration battery");
    c_pktlab->add_option("--battery", battery_path, "battery JSON, or omit for the builtin set");
    add_seed(c_pktlab);
    add_manifest(c_pktlab);

    CLI::App* c_harness = app.add_subcommand("harness", "compressor-vs-uniform distinguisher");
    c_harness->add_option("--config", config_path)->required();
    add_seed(c_harness);
    add_manifest(c_harness);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    RngSeed seed(parse_seed_hex(seed_str));
    ManifestSink sink;
    sink.path = manifest_path;
    auto manifest = [&](const std::string& cmd,
                        std::vector<std::pair<std::string, std::string>> params) {
        if (!sink.path.empty())
            sink.lines.push_back(manifest_record(cmd, params, parse_seed_hex(seed_str)));
    };

    if (c_compress->parsed()) {
        BitString x = read_bits_file(in_path);
        CompressResult r = compress(x, parse_delta(delta_str), parse_eps(eps_str), seed);
        write_codeword_file(out_path, r.codeword);
        manifest("compress", {{"in", in_path}, {"delta", delta_str}, {"eps", eps_str},
                              {"out", out_path}});
        json j = {{"schema", constants::kSchemaVersion},
                  {"type", "compress"},
                  {"n", r.codeword.n},
                  {"mode", r.codeword.mode == CodewordMode::fingerprint ? "fingerprint" : "trivial"},
                  {"codeword_bits", r.codeword.serialized_bits()},
                  {"steps", r.steps}};
        sink.record(j.dump());
        sink.flush();
        return 0;
    }
    if (c_decompress->parsed()) {
        SamplerSpec spec = load_sampler_file(sampler_path);
        Codeword cw = read_codeword_file(code_path);
        DecompressResult d = decompress(spec, cw, seed);
        manifest("decompress", {{"sampler", sampler_path}, {"code", code_path}, {"out", out_path}});
        json j = {{"schema", constants::kSchemaVersion},
                  {"type", "decompress"},
                  {"found", bool(d.output)},
                  {"steps", d.steps},
                  {"prune_degraded", d.prune_degraded}};
        sink.record(j.dump());
        sink.flush();
        if (!d.output) {
            std::cerr << "decompress: no candidate matched the fingerprint\n";
            return 2;
        }
        write_text_file(out_path, d.output->to_string() + "\n");
        return 0;
    }
    if (c_estimate->parsed()) {
        SamplerSpec spec = load_sampler_file(sampler_path);
        BitString x = read_bits_file(target_path);
        Estimate est = estimate_probability(spec, x, parse_eps(eps_str), seed);
        manifest("estimate", {{"sampler", sampler_path}, {"target", target_path},
                              {"eps", eps_str}});
        sink.record(estimate_record(est, x));
        sink.flush();
        return 0;
    }
    if (c_certify->parsed()) {
        SamplerSpec spec = load_sampler_file(sampler_path);
        BitString x = read_bits_file(in_path);
        Certificate cert =
            certify(x, parse_delta(delta_str), parse_eps(eps_str), spec, seed, trials);
        manifest("certify", {{"sampler", sampler_path}, {"in", in_path},
                             {"delta", delta_str}, {"eps", eps_str}});
        sink.record(certificate_record(cert));
        sink.flush();
        return 0;
    }
    if (c_pktlab->parsed()) {
        std::vector<BatteryEntry> battery =
            battery_path.empty() ? builtin_battery() : load_battery_file(battery_path);
        manifest("pktlab", {{"battery", battery_path.empty() ? "builtin" : battery_path}});
        bool all_ok = true;
        for (size_t i = 0; i < battery.size(); ++i) {
            BatteryRow row = run_battery_entry(battery[i], seed.derive("entry", i));
            all_ok = all_ok && row.coding_bound_ok && row.hitting_ok && row.description_gap_ok;
            sink.record(battery_record(row));
        }
        sink.flush();
        return all_ok ? 0 : 2;
    }
    if (c_harness->parsed()) {
        HarnessConfig cfg = load_harness_config(config_path);
        CompressorUnderTest cut = make_codec_cut(cfg.sampler, cfg.eps);
        DistinguisherReport rep = distinguisher_report(
            cut, cfg.sampler, cfg.n, cfg.ell,
            power_length_budget(cfg.gamma_prime, cfg.length_c, cfg.n), cfg.step_budget,
            cfg.trials, seed);
        manifest("harness", {{"config", config_path}});
        sink.record(distinguisher_record(rep));
        sink.flush();
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CertifyError& e) {
        std::cerr << "error: " << e.what() << " (rate " << e.measured_rate << ")\n";
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
