#include "edgemark/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "edgemark/detector.hpp"
#include "edgemark/error.hpp"
#include "edgemark/metrics.hpp"
#include "edgemark/rng.hpp"

#ifndef EDGEMARK_VERSION
#define EDGEMARK_VERSION "0.0.0"
#endif

namespace edgemark {
namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

StatisticKind other(StatisticKind k) {
  return k == StatisticKind::kHalfDifference ? StatisticKind::kTelescoping
                                             : StatisticKind::kHalfDifference;
}

double mean_of(const std::vector<TrialResult>& trials, double TrialResult::*field) {
  double s = 0.0;
  for (const auto& t : trials) s += t.*field;
  return s / static_cast<double>(trials.size());
}

CellResult run_cell(const Image& marked, const CellSpec& cell, const RunConfig& cfg) {
  CellResult out;
  out.cell = cell;
  const int runs = is_seeded(cell.kind) ? cfg.trials : 1;
  EmbedConfig alt = cfg.embed;
  alt.statistic = other(cfg.embed.statistic);
  const std::string label = cell.label();
  for (int t = 0; t < runs; ++t) {
    TrialResult tr;
    tr.seed = is_seeded(cell.kind) ? trial_seed(cfg.master_seed, label, t) : 0;
    const Image attacked = apply_attack(marked, AttackSpec{cell.kind, cell.parameter, tr.seed});
    const auto primary = extract(attacked, cfg.embed, cfg.payload.size());
    const auto secondary = extract(attacked, alt, cfg.payload.size());
    tr.ber = ber(cfg.payload, primary.bits);
    tr.ber_alternate = ber(cfg.payload, secondary.bits);
    tr.psnr_db = psnr(marked, attacked);
    tr.ambiguous_count = primary.ambiguous_count;
    out.ambiguous_count += tr.ambiguous_count;
    out.trials.push_back(tr);
  }
  out.ber = mean_of(out.trials, &TrialResult::ber);
  out.ber_alternate = mean_of(out.trials, &TrialResult::ber_alternate);
  out.psnr_db = mean_of(out.trials, &TrialResult::psnr_db);
  return out;
}

nlohmann::ordered_json number_or_inf(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

bool has_cell(const RunConfig& cfg, const std::string& label) {
  return std::any_of(cfg.cells.begin(), cfg.cells.end(),
                     [&](const CellSpec& c) { return c.label() == label; });
}

}  // namespace

std::optional<double> rotation_pair_mean(const EvaluationReport& report) {
  const std::string plus = CellSpec{AttackKind::kRotation, 0.25}.label();
  const std::string minus = CellSpec{AttackKind::kRotation, -0.25}.label();
  if (!has_cell(report.config, plus) || !has_cell(report.config, minus)) return std::nullopt;
  return (report.mean_ber(plus) + report.mean_ber(minus)) / 2.0;
}

std::string_view tool_version() noexcept { return "edgemark " EDGEMARK_VERSION; }

std::vector<CellSpec> default_suite() {
  using K = AttackKind;
  return {
      {K::kNone, 0},        {K::kSaltPepper, 0.05}, {K::kSaltPepper, 0.1}, {K::kSaltPepper, 0.2},
      {K::kGaussian, 0.01}, {K::kGaussian, 0.05},   {K::kGaussian, 0.1},   {K::kMedian, 3},
      {K::kMedian, 5},      {K::kMedian, 7},        {K::kJpeg, 10},        {K::kJpeg, 50},
      {K::kJpeg, 90},       {K::kGif, 256},         {K::kHistEq, 0},       {K::kRotation, 0.25},
      {K::kRotation, -0.25},
  };
}

std::uint64_t trial_seed(std::uint64_t master_seed, const std::string& label, int trial) {
  return derive_seed(derive_seed(master_seed, fnv1a(label)), static_cast<std::uint64_t>(trial));
}

void RunConfig::validate() const {
  embed.validate();
  if (trials < 1) throw Error(ErrorKind::kInvalidArgument, "trials must be >= 1");
  if (jobs < 1) throw Error(ErrorKind::kInvalidArgument, "jobs must be >= 1");
  if (cells.empty()) throw Error(ErrorKind::kInvalidArgument, "attack suite is empty");
  for (const auto& c : cells) {
    try {
      AttackSpec{c.kind, c.parameter, 0}.validate();
    } catch (const Error& e) {
      throw Error(e.kind(), "cell " + c.label() + ": " + e.what());
    }
  }
}

double EvaluationReport::mean_ber(const std::string& label) const {
  if (hosts.empty()) throw Error(ErrorKind::kInvalidArgument, "report has no hosts");
  double s = 0.0;
  for (std::size_t h = 0; h < hosts.size(); ++h) s += cell(h, label).ber;
  return s / static_cast<double>(hosts.size());
}

const CellResult& EvaluationReport::cell(std::size_t host, const std::string& label) const {
  for (const auto& c : hosts.at(host).cells) {
    if (c.cell.label() == label) return c;
  }
  throw Error(ErrorKind::kInvalidArgument, "report has no cell '" + label + "'");
}

EvaluationReport run_evaluation(const std::vector<HostInput>& hosts, const RunConfig& cfg) {
  cfg.validate();
  if (hosts.empty()) throw Error(ErrorKind::kInvalidArgument, "no host images given");

  EvaluationReport report;
  report.config = cfg;
  std::vector<Image> marked;
  for (const auto& h : hosts) {
    HostReport hr;
    hr.id = h.id;
    hr.width = h.image.width();
    hr.height = h.image.height();
    try {
      marked.push_back(embed(h.image, cfg.payload, cfg.embed));
    } catch (const Error& e) {
      throw Error(e.kind(), h.id + ": " + e.what());
    }
    hr.baseline_psnr_db = psnr(h.image, marked.back());
    hr.cells.resize(cfg.cells.size());
    report.hosts.push_back(std::move(hr));
  }

  const std::size_t tasks = hosts.size() * cfg.cells.size();
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  std::size_t first_error_task = tasks;

  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      const std::size_t h = t / cfg.cells.size();
      const std::size_t c = t % cfg.cells.size();
      try {
        report.hosts[h].cells[c] = run_cell(marked[h], cfg.cells[c], cfg);
      } catch (const std::exception& e) {
        std::lock_guard lock(err_mu);
        if (t < first_error_task) {
          first_error_task = t;
          first_error = std::make_exception_ptr(
              Error(ErrorKind::kInvalidArgument,
                    "cell " + cfg.cells[c].label() + " on " + hosts[h].id + ": " + e.what()));
        }
      }
    }
  };

  const auto n_threads = static_cast<std::size_t>(std::min<std::size_t>(
      static_cast<std::size_t>(cfg.jobs), std::max<std::size_t>(tasks, 1)));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);
  return report;
}

std::string report_to_json(const EvaluationReport& report) {
  using nlohmann::ordered_json;
  const auto& cfg = report.config;
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool_version"] = tool_version();
  j["config"] = {
      {"lambda", cfg.embed.lambda},
      {"block", cfg.embed.block},
      {"wavelet", to_string(cfg.embed.wavelet)},
      {"statistic", to_string(cfg.embed.statistic)},
      {"alternate_statistic", to_string(other(cfg.embed.statistic))},
      {"trials", cfg.trials},
      {"master_seed", cfg.master_seed},
  };
  j["payload"] = {
      {"source", cfg.payload_source},
      {"bits", cfg.payload.size()},
      {"hex", to_hex(bytes_from_bits(cfg.payload))},
  };

  ordered_json hosts = ordered_json::array();
  for (const auto& h : report.hosts) {
    ordered_json cells = ordered_json::array();
    for (const auto& c : h.cells) {
      ordered_json trials = ordered_json::array();
      for (const auto& t : c.trials) {
        trials.push_back({{"seed", t.seed},
                          {"ber", t.ber},
                          {"ber_alternate", t.ber_alternate},
                          {"psnr_db", number_or_inf(t.psnr_db)},
                          {"ambiguous_count", t.ambiguous_count}});
      }
      cells.push_back({{"attack", c.cell.label()},
                       {"kind", to_string(c.cell.kind)},
                       {"parameter", c.cell.parameter},
                       {"ber", c.ber},
                       {"ber_alternate", c.ber_alternate},
                       {"psnr_db", number_or_inf(c.psnr_db)},
                       {"ambiguous_count", c.ambiguous_count},
                       {"trials", std::move(trials)}});
    }
    hosts.push_back({{"id", h.id},
                     {"width", h.width},
                     {"height", h.height},
                     {"baseline_psnr_db", number_or_inf(h.baseline_psnr_db)},
                     {"cells", std::move(cells)}});
  }
  j["hosts"] = std::move(hosts);

  ordered_json summary = ordered_json::array();
  for (const auto& cell : cfg.cells) {
    const auto label = cell.label();
    double alt = 0.0;
    for (std::size_t h = 0; h < report.hosts.size(); ++h) alt += report.cell(h, label).ber_alternate;
    summary.push_back({{"attack", label},
                       {"mean_ber", report.mean_ber(label)},
                       {"mean_ber_alternate", alt / static_cast<double>(report.hosts.size())}});
  }
  if (const auto pair = rotation_pair_mean(report)) {
    summary.push_back({{"attack", "rotation:+-0.25"}, {"mean_ber", *pair}});
  }
  j["summary"] = std::move(summary);
  return j.dump(2) + "\n";
}

std::string format_table(const EvaluationReport& report) {
  std::ostringstream os;
  const auto& cfg = report.config;
  os << tool_version() << "  lambda=" << cfg.embed.lambda << " block=" << cfg.embed.block
     << " wavelet=" << to_string(cfg.embed.wavelet)
     << " statistic=" << to_string(cfg.embed.statistic) << " bits=" << cfg.payload.size()
     << " trials=" << cfg.trials << " seed=" << cfg.master_seed << "\n";
  constexpr int kColumns = 3;
  constexpr int kWidth = 26;
  for (const auto& h : report.hosts) {
    os << "\n" << h.id << " (" << h.width << "x" << h.height
       << ")  PSNR host/watermarked = " << fmt("%.2f", h.baseline_psnr_db) << " dB\n";
    int col = 0;
    std::string names;
    std::string values;
    auto flush = [&] {
      os << names << "\n" << values << "\n";
      names.clear();
      values.clear();
      col = 0;
    };
    for (const auto& c : h.cells) {
      std::string n = c.cell.label();
      std::string v = "BER = " + fmt("%.4f", c.ber);
      n.resize(kWidth, ' ');
      v.resize(kWidth, ' ');
      names += n;
      values += v;
      if (++col == kColumns) flush();
    }
    if (col != 0) flush();
  }
  if (report.hosts.size() > 1) {
    os << "\nmean over " << report.hosts.size() << " hosts\n";
    for (const auto& cell : cfg.cells) {
      std::string n = cell.label();
      n.resize(kWidth, ' ');
      os << "  " << n << fmt("%.4f", report.mean_ber(cell.label())) << "\n";
    }
  }
  if (const auto pair = rotation_pair_mean(report)) {
    os << "\nrotation +0.25/-0.25 mean BER = " << fmt("%.4f", *pair) << "\n";
  }
  return os.str();
}

}  // namespace edgemark
