#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "edgemark/attacks.hpp"
#include "edgemark/detector.hpp"
#include "edgemark/embedder.hpp"
#include "edgemark/error.hpp"
#include "edgemark/evaluation.hpp"
#include "edgemark/image.hpp"
#include "edgemark/metrics.hpp"
#include "edgemark/payload.hpp"

namespace edgemark::cli {
namespace {

constexpr std::uint64_t kDefaultPayloadSeed = 42;

struct SchemeOptions {
  double lambda = 20.0;
  int block = 8;
  std::string wavelet = "haar";
  std::string statistic = "half_difference";

  void add_to(CLI::App& app) {
    app.add_option("--lambda", lambda, "Embedding strength")->capture_default_str();
    app.add_option("--block", block, "Edge block side (even)")->capture_default_str();
    app.add_option("--wavelet", wavelet, "haar | db2")->capture_default_str();
    app.add_option("--statistic", statistic, "half_difference | telescoping")
        ->capture_default_str();
  }

  EmbedConfig config() const {
    EmbedConfig cfg;
    cfg.lambda = lambda;
    cfg.block = block;
    cfg.wavelet = parse_wavelet(wavelet);
    cfg.statistic = parse_statistic(statistic);
    cfg.validate();
    return cfg;
  }
};

struct PayloadOptions {
  std::string path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> bits;

  void add_to(CLI::App& app, bool with_bits = true) {
    auto* p = app.add_option("--payload", path, "Payload file (*.hex = hex text, else raw bytes)");
    auto* s = app.add_option("--payload-seed", seed, "Seed for a pseudo-random payload");
    p->excludes(s);
    if (with_bits) app.add_option("--bits", bits, "Number of payload bits");
  }

  bool given() const { return !path.empty() || seed.has_value(); }

  /// Resolves the payload; `fallback_bits` is used when --bits is absent for
  /// a seeded payload.
  WatermarkBits load(std::size_t fallback_bits, std::string* source = nullptr) const {
    if (!path.empty()) {
      const auto data = read_file(path);
      const bool hex = path.size() >= 4 && path.compare(path.size() - 4, 4, ".hex") == 0;
      const auto bytes = hex ? parse_hex(std::string(data.begin(), data.end())) : data;
      if (bytes.empty()) throw Error(ErrorKind::kInvalidArgument, "payload file '" + path + "' is empty");
      WatermarkBits all = bits_from_bytes(bytes);
      if (source) *source = "file:" + path;
      if (!bits) return all;
      if (*bits > all.size()) {
        throw Error(ErrorKind::kInvalidArgument, "--bits " + std::to_string(*bits) +
                                                     " exceeds the " + std::to_string(all.size()) +
                                                     " bits in '" + path + "'");
      }
      return all.prefix(*bits);
    }
    const std::uint64_t s = seed.value_or(kDefaultPayloadSeed);
    if (source) *source = "seed:" + std::to_string(s);
    return bits_from_seed(bits.value_or(fallback_bits), s);
  }
};

std::string fmt_db(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void check_capacity(std::size_t requested, std::size_t cap) {
  if (requested > cap) {
    throw Error(ErrorKind::kCapacity, "requested " + std::to_string(requested) +
                                          " bits but capacity is " + std::to_string(cap));
  }
}

void write_bits(const std::string& path, const WatermarkBits& bits) {
  const auto bytes = bytes_from_bits(bits);
  const bool hex = path.size() >= 4 && path.compare(path.size() - 4, 4, ".hex") == 0;
  if (hex) {
    const std::string text = to_hex(bytes) + "\n";
    write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                      text.size()));
  } else {
    write_file_atomic(path, bytes);
  }
}

CellSpec parse_cell(const std::string& text) {
  const auto colon = text.find(':');
  CellSpec c;
  c.kind = parse_attack(text.substr(0, colon));
  if (colon != std::string::npos) {
    try {
      c.parameter = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidArgument, "bad attack parameter in '" + text + "'");
    }
  }
  AttackSpec{c.kind, c.parameter, 0}.validate();
  return c;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Blind edge-insertion watermarking in the wavelet HH band", "edgemark"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "Embed a payload into a PGM image");
  std::string embed_in, embed_out;
  SchemeOptions embed_scheme;
  PayloadOptions embed_payload;
  embed_cmd->add_option("--in", embed_in, "Host image (PGM P5)")->required();
  embed_cmd->add_option("--out", embed_out, "Watermarked image (PGM P5)")->required();
  embed_scheme.add_to(*embed_cmd);
  embed_payload.add_to(*embed_cmd);

  // extract
  auto* extract_cmd = app.add_subcommand("extract", "Blindly extract a payload");
  std::string extract_in, extract_out;
  std::size_t extract_bits = 0;
  SchemeOptions extract_scheme;
  PayloadOptions extract_ref;
  extract_cmd->add_option("--in", extract_in, "Watermarked image (PGM P5)")->required();
  extract_cmd->add_option("--out", extract_out, "Write bits (*.hex = hex text, else raw bytes)");
  extract_cmd->add_option("--bits", extract_bits, "Number of bits to extract")->required();
  extract_scheme.add_to(*extract_cmd);
  extract_ref.add_to(*extract_cmd, false);

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "Apply a single attack");
  std::string attack_in, attack_out, attack_kind;
  double attack_param = 0.0;
  std::uint64_t attack_seed = 1;
  attack_cmd->add_option("--in", attack_in, "Input image (PGM P5)")->required();
  attack_cmd->add_option("--out", attack_out, "Attacked image (PGM P5)")->required();
  attack_cmd->add_option("--attack", attack_kind,
                         "salt_pepper | gaussian | median | jpeg | gif | hist_eq | rotation")
      ->required();
  attack_cmd->add_option("--param", attack_param, "Attack parameter");
  attack_cmd->add_option("--seed", attack_seed, "Seed for noise attacks")->capture_default_str();

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "Run the robustness suite");
  std::vector<std::string> eval_in, eval_attacks;
  std::string eval_report;
  SchemeOptions eval_scheme;
  PayloadOptions eval_payload;
  int eval_trials = 5;
  int eval_jobs = 1;
  std::uint64_t eval_seed = 1;
  eval_cmd->add_option("--in", eval_in, "Host images (PGM P5)")->required();
  eval_cmd->add_option("--report", eval_report, "Write the JSON report here");
  eval_cmd->add_option("--attack", eval_attacks,
                       "Restrict the suite to these cells, e.g. jpeg:50 (baseline always runs)");
  eval_cmd->add_option("--trials", eval_trials, "Trials per noise cell")->capture_default_str();
  eval_cmd->add_option("--jobs", eval_jobs, "Worker threads")->capture_default_str();
  eval_cmd->add_option("--seed", eval_seed, "Master seed")->capture_default_str();
  eval_scheme.add_to(*eval_cmd);
  eval_payload.add_to(*eval_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*embed_cmd) {
      const EmbedConfig cfg = embed_scheme.config();
      const Image host = read_pgm_file(embed_in);
      const std::size_t cap = capacity(host.width(), host.height(), cfg.block);
      const WatermarkBits bits = embed_payload.load(cap);
      check_capacity(bits.size(), cap);
      const Image marked = embed(host, bits, cfg);
      write_file_atomic(embed_out, save_pgm(marked));
      out << "wrote " << embed_out << "\n";
      out << "capacity " << cap << " bits, embedded " << bits.size() << " bits\n";
      out << "PSNR " << fmt_db(psnr(host, marked)) << " dB\n";
      return 0;
    }
    if (*extract_cmd) {
      const EmbedConfig cfg = extract_scheme.config();
      const Image img = read_pgm_file(extract_in);
      const std::size_t cap = capacity(img.width(), img.height(), cfg.block);
      check_capacity(extract_bits, cap);
      const auto result = extract(img, cfg, extract_bits);
      if (!extract_out.empty()) {
        write_bits(extract_out, result.bits);
        out << "wrote " << extract_out << "\n";
      } else {
        out << "bits " << to_hex(bytes_from_bits(result.bits)) << "\n";
      }
      out << "extracted " << result.bits.size() << " bits, ambiguous " << result.ambiguous_count
          << "\n";
      if (extract_ref.given()) {
        const WatermarkBits ref = extract_ref.load(extract_bits);
        if (ref.size() < extract_bits) {
          throw Error(ErrorKind::kInvalidArgument, "reference payload has fewer bits than --bits");
        }
        const auto r = ref.prefix(extract_bits);
        out << "BER " << fmt_db(ber(r, result.bits)) << " (" << bit_errors(r, result.bits) << "/"
            << extract_bits << ")\n";
      }
      return 0;
    }
    if (*attack_cmd) {
      const AttackSpec spec{parse_attack(attack_kind), attack_param, attack_seed};
      spec.validate();
      const Image img = read_pgm_file(attack_in);
      const Image attacked = apply_attack(img, spec);
      write_file_atomic(attack_out, save_pgm(attacked));
      out << "wrote " << attack_out << " (" << spec.label() << ")\n";
      out << "PSNR " << fmt_db(psnr(img, attacked)) << " dB\n";
      return 0;
    }
    if (*eval_cmd) {
      RunConfig cfg;
      cfg.embed = eval_scheme.config();
      cfg.trials = eval_trials;
      cfg.jobs = eval_jobs;
      cfg.master_seed = eval_seed;
      if (!eval_attacks.empty()) {
        cfg.cells = {CellSpec{AttackKind::kNone, 0}};
        for (const auto& a : eval_attacks) {
          const CellSpec c = parse_cell(a);
          if (c.kind != AttackKind::kNone) cfg.cells.push_back(c);
        }
      }
      std::vector<HostInput> hosts;
      for (const auto& path : eval_in) hosts.push_back({path, read_pgm_file(path)});
      std::size_t cap = capacity(hosts.front().image.width(), hosts.front().image.height(),
                                 cfg.embed.block);
      for (const auto& h : hosts) {
        try {
          cap = std::min(cap, capacity(h.image.width(), h.image.height(), cfg.embed.block));
        } catch (const Error& e) {
          throw Error(e.kind(), h.id + ": " + e.what());
        }
      }
      cfg.payload = eval_payload.load(cap, &cfg.payload_source);
      check_capacity(cfg.payload.size(), cap);
      const auto report = run_evaluation(hosts, cfg);
      if (!eval_report.empty()) {
        const std::string json = report_to_json(report);
        write_file_atomic(eval_report, std::span(reinterpret_cast<const std::uint8_t*>(json.data()),
                                                 json.size()));
      }
      out << format_table(report);
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace edgemark::cli
