#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "edgemark/attacks.hpp"
#include "edgemark/embedder.hpp"
#include "edgemark/image.hpp"
#include "edgemark/payload.hpp"

namespace edgemark {

inline constexpr int kReportSchemaVersion = 1;
std::string_view tool_version() noexcept;

/// One attack cell of the robustness grid. Seeded attacks run `trials`
/// times with derived seeds; deterministic attacks always run once.
struct CellSpec {
  AttackKind kind = AttackKind::kNone;
  double parameter = 0.0;

  std::string label() const { return AttackSpec{kind, parameter, 0}.label(); }
};

/// No-attack baseline followed by the robustness grid: salt & pepper
/// {0.05, 0.1, 0.2}, Gaussian {0.01, 0.05, 0.1}, median {3, 5, 7},
/// JPEG {10, 50, 90}, GIF 256 levels, histogram equalization, rotation
/// {+0.25, -0.25}.
std::vector<CellSpec> default_suite();

/// Seed for trial `trial` of the cell labelled `label`: derived from the
/// master seed and a hash of the label, so cells are independent of their
/// position in the suite.
std::uint64_t trial_seed(std::uint64_t master_seed, const std::string& label, int trial);

struct HostInput {
  std::string id;
  Image image;
};

struct RunConfig {
  EmbedConfig embed;
  WatermarkBits payload{std::vector<std::uint8_t>{0}};
  /// Free-form provenance of the payload, echoed in the report.
  std::string payload_source = "inline";
  std::vector<CellSpec> cells = default_suite();
  int trials = 5;
  std::uint64_t master_seed = 1;
  int jobs = 1;

  /// Throws on invalid embed parameters, trials < 1, jobs < 1, or a bad cell.
  void validate() const;
};

struct TrialResult {
  std::uint64_t seed = 0;
  double ber = 0.0;
  /// BER under the statistic that was not configured.
  double ber_alternate = 0.0;
  double psnr_db = 0.0;
  std::size_t ambiguous_count = 0;
};

struct CellResult {
  CellSpec cell;
  std::vector<TrialResult> trials;
  double ber = 0.0;            ///< mean over trials
  double ber_alternate = 0.0;  ///< mean over trials
  double psnr_db = 0.0;        ///< mean PSNR(watermarked, attacked); +inf when unchanged
  std::size_t ambiguous_count = 0;  ///< summed over trials
};

struct HostReport {
  std::string id;
  int width = 0;
  int height = 0;
  double baseline_psnr_db = 0.0;  ///< PSNR(host, watermarked)
  std::vector<CellResult> cells;
};

struct EvaluationReport {
  RunConfig config;
  std::vector<HostReport> hosts;

  /// Mean over hosts of the cell's BER (configured statistic).
  double mean_ber(const std::string& label) const;
  const CellResult& cell(std::size_t host, const std::string& label) const;
};

/// Embeds the payload into every host, applies each cell, extracts, and
/// collects BER/PSNR. Cells run on up to `jobs` threads; results do not
/// depend on the thread count.
EvaluationReport run_evaluation(const std::vector<HostInput>& hosts, const RunConfig& cfg);

/// Mean over hosts and both angles of the +0.25/-0.25 degree rotation cells,
/// when the suite contains them.
std::optional<double> rotation_pair_mean(const EvaluationReport& report);

/// Schema-versioned JSON, deterministic for a given report.
std::string report_to_json(const EvaluationReport& report);

/// Human-readable table laid out as a 3-column grid of attack cells per host.
std::string format_table(const EvaluationReport& report);

}  // namespace edgemark
