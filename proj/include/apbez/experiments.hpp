#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "apbez/error.hpp"
#include "apbez/interpolator.hpp"
#include "apbez/metrics.hpp"
#include "apbez/targets.hpp"

namespace apbez {

/// How a level n partitions the study interval [lo, hi]: `Uniform` splits it
/// into n equal pieces, `Shrinking` interpolates the single piece [lo, lo + (hi - lo)/n].
enum class Layout { Uniform, Shrinking };

struct StudyConfig {
  std::string target;
  Mode mode = StandardAP{};
  std::vector<int> levels;
  Metric metric = Metric::Linf;
  double area_perturbation = 0.0;
  Layout layout = Layout::Uniform;
  std::optional<std::pair<double, double>> interval;  // defaults to the target domain
  int linf_samples = kDefaultLinfSamples;
  int hausdorff_samples = kDefaultHausdorffSamples;
};

struct LevelRow {
  int level = 0;
  int n_subintervals = 0;  // after any refinement
  ErrorRecord record;      // maxima over the level's segments; h is the largest h
  std::optional<double> fitted_order_cumulative;

  friend bool operator==(const LevelRow&, const LevelRow&) = default;
};

struct StudyResult {
  nlohmann::json config = nlohmann::json::object();
  std::vector<LevelRow> rows;
  std::optional<double> fitted_order;
  std::optional<double> last_interval_order;

  std::vector<ErrorRecord> records() const {
    std::vector<ErrorRecord> out;
    for (const auto& r : rows) out.push_back(r.record);
    return out;
  }

  friend bool operator==(const StudyResult&, const StudyResult&) = default;
};

inline std::string to_string(const Mode& mode) {
  if (std::holds_alternative<StandardAP>(mode)) return "standard";
  if (std::holds_alternative<OptimizedAP>(mode)) return "optimized";
  return "hermite";
}

inline std::string to_string(Metric m) { return m == Metric::Linf ? "linf" : "hausdorff"; }
inline std::string to_string(Layout l) { return l == Layout::Uniform ? "uniform" : "shrinking"; }

inline nlohmann::json config_json(const StudyConfig& cfg, std::pair<double, double> interval) {
  nlohmann::json j;
  j["target"] = cfg.target;
  j["mode"] = to_string(cfg.mode);
  if (const auto* s = std::get_if<StandardAP>(&cfg.mode)) {
    if (s->P)
      j["P"] = *s->P;
    else
      j["P"] = "avg";
  }
  if (const auto* o = std::get_if<OptimizedAP>(&cfg.mode)) {
    j["grid_n"] = o->grid_n;
    j["samples"] = o->samples;
    if (o->objective) j["objective"] = to_string(*o->objective);
  }
  j["levels"] = cfg.levels;
  j["metric"] = to_string(cfg.metric);
  j["area_perturbation"] = cfg.area_perturbation;
  j["layout"] = to_string(cfg.layout);
  j["interval"] = {interval.first, interval.second};
  j["linf_samples"] = cfg.linf_samples;
  j["hausdorff_samples"] = cfg.hausdorff_samples;
  return j;
}

inline void validate(const StudyConfig& cfg) {
  validate(cfg.mode);
  if (!std::isfinite(cfg.area_perturbation)) throw Error(ErrorCode::InvalidConfig, "area perturbation must be finite");
  for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
    if (cfg.levels[i] < 1) throw Error(ErrorCode::InvalidConfig, "levels must be positive");
    if (i > 0 && cfg.levels[i] <= cfg.levels[i - 1])
      throw Error(ErrorCode::InvalidConfig, "levels must be strictly increasing");
  }
  if (cfg.linf_samples < 2 || cfg.hausdorff_samples < 2)
    throw Error(ErrorCode::InvalidConfig, "sample counts must be at least 2");
  if (cfg.interval && !(cfg.interval->first < cfg.interval->second))
    throw Error(ErrorCode::InvalidConfig, "study interval must be increasing");
}

/// Summary of a set of segments as one table row.
inline LevelRow summarize(int level, const std::vector<Segment>& segs) {
  LevelRow row;
  row.level = level;
  row.n_subintervals = static_cast<int>(segs.size());
  ErrorRecord& r = row.record;
  for (const auto& s : segs) {
    const ErrorRecord& d = s.diagnostics;
    r.h = std::max(r.h, d.h);
    r.linf = std::isnan(d.linf) || std::isnan(r.linf) ? std::numeric_limits<double>::quiet_NaN()
                                                       : std::max(r.linf, d.linf);
    if (d.hausdorff) r.hausdorff = std::max(r.hausdorff.value_or(0.0), *d.hausdorff);
    r.area_residual = std::max(r.area_residual, d.area_residual);
  }
  return row;
}

inline std::vector<double> level_breakpoints(Layout layout, int n, double lo, double hi) {
  if (layout == Layout::Shrinking) return {lo, lo + (hi - lo) / n};
  std::vector<double> b(n + 1);
  for (int i = 0; i <= n; ++i) b[i] = lo + (hi - lo) * i / n;
  b.back() = hi;
  return b;
}

namespace detail {

inline std::optional<double> try_order(std::span<const ErrorRecord> recs, Metric m) {
  try {
    return estimate_order(recs, m);
  } catch (const Error&) {
    return std::nullopt;
  }
}

inline void fit_orders(StudyResult& res, Metric m) {
  const auto recs = res.records();
  for (std::size_t k = 0; k < res.rows.size(); ++k)
    if (k > 0) res.rows[k].fitted_order_cumulative = try_order(std::span(recs).first(k + 1), m);
  if (recs.size() >= 2) {
    res.fitted_order = try_order(recs, m);
    res.last_interval_order = try_order(std::span(recs).last(2), m);
  }
}

}  // namespace detail

/// Runs the configured convergence study: one piecewise interpolation per level.
inline StudyResult run_study(const StudyConfig& cfg) {
  validate(cfg);
  const Target target = make_builtin(cfg.target);
  const auto interval = cfg.interval.value_or(target.domain());
  SegmentOptions opt;
  opt.area_perturbation = cfg.area_perturbation;
  opt.linf_samples = cfg.linf_samples;
  opt.hausdorff_samples = cfg.hausdorff_samples;
  opt.hausdorff_for_graphs = cfg.metric == Metric::Hausdorff;

  StudyResult res;
  res.config = config_json(cfg, interval);
  for (int n : cfg.levels) {
    const auto breaks = level_breakpoints(cfg.layout, n, interval.first, interval.second);
    std::vector<Segment> segs;
    try {
      segs = interpolate_piecewise(target, breaks, cfg.mode, opt);
    } catch (const InfeasibleError& e) {
      throw InfeasibleError(e.s0(), e.s1(), "level " + std::to_string(n) + ": " + e.what());
    }
    res.rows.push_back(summarize(n, segs));
  }
  detail::fit_orders(res, cfg.metric);
  return res;
}

/// Same pipeline with the prescribed area of each segment replaced by C + M h^5.
inline StudyResult run_perturbed_area_study(const StudyConfig& cfg) {
  if (cfg.area_perturbation == 0.0)
    throw Error(ErrorCode::InvalidConfig, "perturbed-area study needs a nonzero area perturbation");
  return run_study(cfg);
}

/// A single interpolation over explicit breakpoints, summarised as one row.
inline LevelRow run_breakpoints(const std::string& target_name, const std::vector<double>& breakpoints,
                                const Mode& mode, const SegmentOptions& opt = {}) {
  const Target target = make_builtin(target_name);
  return summarize(static_cast<int>(breakpoints.size()) - 1, interpolate_piecewise(target, breakpoints, mode, opt));
}

// ---------------------------------------------------------------------------
// Canned configurations

inline StudyConfig table1_config(const Mode& mode) {
  StudyConfig c;
  c.target = "circle";
  c.mode = mode;
  c.levels = {2, 4, 8, 16};
  c.interval = std::pair{0.0, std::numbers::pi};
  return c;
}

inline StudyConfig table1_standard_config() { return table1_config(StandardAP{}); }
inline StudyConfig table1_optimized_config() { return table1_config(OptimizedAP{}); }

inline const std::vector<std::vector<double>>& table2_splits() {
  static const std::vector<std::vector<double>> splits = {{0.0, 0.3678, 1.0}, {0.0, 0.48, 1.0}};
  return splits;
}

inline std::vector<LevelRow> run_table2(const Mode& mode = StandardAP{}) {
  std::vector<LevelRow> rows;
  for (const auto& b : table2_splits()) rows.push_back(run_breakpoints("cve", b, mode));
  return rows;
}

inline const std::vector<int>& convergence_levels() {
  static const std::vector<int> levels = {4, 8, 16, 32, 64};
  return levels;
}

/// Piecewise convergence on [0, 1]. The standard method uses r1 = h.
inline StudyConfig piecewise_config(const std::string& target, const Mode& mode = StandardAP{0.0}) {
  StudyConfig c;
  c.target = target;
  c.mode = mode;
  c.levels = convergence_levels();
  return c;
}

/// A single segment [0, 1/n] with the averaged P, so that the vanishing
/// curvature at x = 0 governs every level.
inline StudyConfig vanishing_config() {
  StudyConfig c;
  c.target = "vanishing";
  c.mode = StandardAP{};
  c.levels = convergence_levels();
  c.layout = Layout::Shrinking;
  return c;
}

inline StudyConfig perturbed_area_config(double M = 1.0) {
  StudyConfig c = piecewise_config("piecewise1");
  c.area_perturbation = M;
  return c;
}

/// Hermite, standard (P = 0) and optimized interpolants of one target over
/// its whole domain.
struct ComparisonSet {
  Segment hermite, standard, optimized;
};

inline ComparisonSet optimized_example(const std::string& target_name = "optimized", const OptimizedAP& cfg = {}) {
  const Target t = make_builtin(target_name);
  const auto [lo, hi] = t.domain();
  return {interpolate_hermite(t, lo, hi), interpolate_standard(t, lo, hi, 0.0), interpolate_optimized(t, lo, hi, cfg)};
}

/// Published reference values, for side-by-side display only.
namespace published {
inline const std::vector<int> table1_points = {4, 8, 16, 32};
inline const std::vector<double> table1_curvature_matching = {1.4e-3, 2.1e-5, 3.2e-7, 4.9e-9};
inline const std::vector<double> table1_standard = {2.9e-3, 5.7e-5, 1.0e-6, 1.6e-8};
inline const std::vector<double> table1_optimized = {2.6e-4, 4.5e-6, 8.2e-8, 3.3e-9};
inline const std::vector<double> table2_standard = {6.9e-4, 2.4e-3};
}  // namespace published

// ---------------------------------------------------------------------------
// Reports

enum class ReportFormat { CSV, JSON };

inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

inline constexpr const char* kCsvHeader =
    "level,n_subintervals,h_max,linf,hausdorff,area_residual_max,fitted_order_cumulative";

inline std::string to_csv(const StudyResult& r) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& row : r.rows) {
    out << row.level << ',' << row.n_subintervals << ',' << format_real(row.record.h) << ','
        << format_real(row.record.linf) << ',' << format_real(row.record.hausdorff) << ','
        << format_real(row.record.area_residual) << ',' << format_real(row.fitted_order_cumulative) << '\n';
  }
  return out.str();
}

namespace detail {

inline nlohmann::json real_json(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }
inline nlohmann::json real_json(const std::optional<double>& v) { return v ? real_json(*v) : nlohmann::json(nullptr); }

inline std::optional<double> opt_real(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

inline double real(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const StudyResult& r) {
  nlohmann::ordered_json j;
  j["config"] = nlohmann::ordered_json::parse(r.config.dump());
  j["levels"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o;
    o["level"] = row.level;
    o["n_subintervals"] = row.n_subintervals;
    o["h_max"] = detail::real_json(row.record.h);
    o["linf"] = detail::real_json(row.record.linf);
    o["hausdorff"] = detail::real_json(row.record.hausdorff);
    o["area_residual_max"] = detail::real_json(row.record.area_residual);
    o["fitted_order_cumulative"] = detail::real_json(row.fitted_order_cumulative);
    j["levels"].push_back(std::move(o));
  }
  j["fitted_order"] = detail::real_json(r.fitted_order);
  j["last_interval_order"] = detail::real_json(r.last_interval_order);
  return j;
}

inline StudyResult study_from_json(const nlohmann::json& j) {
  StudyResult r;
  r.config = j.at("config");
  for (const auto& o : j.at("levels")) {
    LevelRow row;
    row.level = o.at("level").get<int>();
    row.n_subintervals = o.at("n_subintervals").get<int>();
    row.record.h = detail::real(o.at("h_max"));
    row.record.linf = detail::real(o.at("linf"));
    row.record.hausdorff = detail::opt_real(o.at("hausdorff"));
    row.record.area_residual = detail::real(o.at("area_residual_max"));
    row.fitted_order_cumulative = detail::opt_real(o.at("fitted_order_cumulative"));
    r.rows.push_back(row);
  }
  r.fitted_order = detail::opt_real(j.at("fitted_order"));
  r.last_interval_order = detail::opt_real(j.at("last_interval_order"));
  return r;
}

inline std::string emit_report(const StudyResult& r, ReportFormat fmt) {
  if (fmt == ReportFormat::CSV) return to_csv(r);
  return to_json(r).dump(2) + "\n";
}

}  // namespace apbez
