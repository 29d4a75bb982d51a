// Command-line front end: single segments, convergence studies and the
// canned table reproductions.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "apbez/apbez.hpp"

namespace {

using namespace apbez;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Output {
  std::string path = "-";
  std::string format = "csv";

  ReportFormat report_format() const { return format == "json" ? ReportFormat::JSON : ReportFormat::CSV; }
};

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("--out", out.path, "output file, '-' for standard output")->capture_default_str();
  cmd->add_option("--format", out.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
}

bool known_target(const std::string& name) {
  const auto& names = builtin_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

int unknown_target(const std::string& name) {
  std::cerr << "unknown target '" << name << "'; available targets: " << catalog_listing() << "\n";
  return kExitUsage;
}

struct ModeFlags {
  std::string mode = "standard";
  std::optional<double> P;
  int grid_n = 256;
  int samples = 2000;

  Mode build() const {
    if (mode == "optimized") return OptimizedAP{grid_n, samples, std::nullopt};
    if (mode == "hermite") return HermiteBaseline{};
    return StandardAP{P};
  }
};

void add_mode(CLI::App* cmd, ModeFlags& m) {
  cmd->add_option("--mode", m.mode, "standard, optimized or hermite")
      ->check(CLI::IsMember({"standard", "optimized", "hermite"}))
      ->capture_default_str();
  cmd->add_option("--P", m.P, "family parameter for standard mode (default: averaged)");
  cmd->add_option("--grid-n", m.grid_n, "optimizer grid size")->check(CLI::Range(8, 1 << 20))->capture_default_str();
  cmd->add_option("--samples", m.samples, "optimizer objective samples")
      ->check(CLI::Range(100, 1 << 22))
      ->capture_default_str();
}

// --------------------------------------------------------------------------- interp

struct InterpArgs {
  std::string target;
  double from = 0.0, to = 0.0;
  ModeFlags mode;
  std::string svg;
  Output out;
};

std::string segment_report(const InterpArgs& a, const Segment& s, ReportFormat fmt) {
  const auto& d = s.diagnostics;
  if (fmt == ReportFormat::JSON) {
    nlohmann::ordered_json j;
    j["target"] = a.target;
    j["from"] = a.from;
    j["to"] = a.to;
    j["mode"] = a.mode.mode;
    j["h"] = d.h;
    j["r1"] = s.r1;
    j["r2"] = s.r2;
    j["linf"] = std::isfinite(d.linf) ? nlohmann::ordered_json(d.linf) : nlohmann::ordered_json(nullptr);
    j["hausdorff"] = d.hausdorff ? nlohmann::ordered_json(*d.hausdorff) : nlohmann::ordered_json(nullptr);
    j["area_residual"] = d.area_residual;
    j["control_points"] = {{s.bezier.p0.x, s.bezier.p0.y},
                           {s.bezier.c1.x, s.bezier.c1.y},
                           {s.bezier.c2.x, s.bezier.c2.y},
                           {s.bezier.p3.x, s.bezier.p3.y}};
    return j.dump(2) + "\n";
  }
  std::ostringstream o;
  o << "target,from,to,mode,h,r1,r2,linf,hausdorff,area_residual\n"
    << a.target << ',' << format_real(a.from) << ',' << format_real(a.to) << ',' << a.mode.mode << ','
    << format_real(d.h) << ',' << format_real(s.r1) << ',' << format_real(s.r2) << ',' << format_real(d.linf) << ','
    << format_real(d.hausdorff) << ',' << format_real(d.area_residual) << '\n';
  return o.str();
}

int cmd_interp(const InterpArgs& a) {
  if (!known_target(a.target)) return unknown_target(a.target);
  const Target t = make_builtin(a.target);
  const Mode mode = a.mode.build();
  validate(mode);
  Segment seg;
  try {
    seg = interpolate_segment(t, a.from, a.to, mode);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NeedsRefinement) throw;
    std::cerr << "segment [" << a.from << ", " << a.to << "] has no admissible interpolant\n";
    try {
      const auto g = hermite_segment_data(t, a.from, a.to);
      std::cerr << "feasibility: " << describe(classify_feasibility(g.data, g.spec)) << "\n";
    } catch (const Error&) {
    }
    std::cerr << e.what() << "\n";
    return kExitFailure;
  }
  if (!a.svg.empty()) write_text(a.svg, render_svg(t, {seg}));
  write_text(a.out.path, segment_report(a, seg, a.out.report_format()));
  return 0;
}

// --------------------------------------------------------------------------- study

struct StudyArgs {
  std::string target;
  ModeFlags mode;
  std::vector<int> levels = convergence_levels();
  std::string metric = "linf";
  std::string layout = "uniform";
  double M = 0.0;
  std::optional<double> from, to;
  Output out;
};

int cmd_study(const StudyArgs& a) {
  if (!known_target(a.target)) return unknown_target(a.target);
  StudyConfig c;
  c.target = a.target;
  c.mode = a.mode.build();
  c.levels = a.levels;
  c.metric = a.metric == "hausdorff" ? Metric::Hausdorff : Metric::Linf;
  c.layout = a.layout == "shrinking" ? Layout::Shrinking : Layout::Uniform;
  c.area_perturbation = a.M;
  if (a.from || a.to) {
    const auto dom = make_builtin(a.target).domain();
    c.interval = std::pair{a.from.value_or(dom.first), a.to.value_or(dom.second)};
  }
  validate(c);
  const StudyResult r = run_study(c);
  write_text(a.out.path, emit_report(r, a.out.report_format()));
  if (r.fitted_order) std::cerr << "fitted order " << format_real(*r.fitted_order) << "\n";
  return 0;
}

// --------------------------------------------------------------------------- tables

int cmd_table1(const Output& out) {
  const StudyResult standard = run_study(table1_standard_config());
  const StudyResult optimized = run_study(table1_optimized_config());
  const auto& ps = published::table1_standard;
  const auto& po = published::table1_optimized;
  const auto& pc = published::table1_curvature_matching;
  if (out.report_format() == ReportFormat::JSON) {
    nlohmann::ordered_json j;
    j["standard"] = to_json(standard);
    j["optimized"] = to_json(optimized);
    j["published"] = {{"points", published::table1_points},
                      {"curvature_matching", pc},
                      {"standard", ps},
                      {"optimized", po}};
    write_text(out.path, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream o;
  o << "points,subintervals,standard_linf,optimized_linf,published_standard,published_optimized,"
       "published_curvature_matching\n";
  for (std::size_t i = 0; i < standard.rows.size(); ++i) {
    o << published::table1_points[i] << ',' << standard.rows[i].level << ','
      << format_real(standard.rows[i].record.linf) << ',' << format_real(optimized.rows[i].record.linf) << ','
      << format_real(ps[i]) << ',' << format_real(po[i]) << ',' << format_real(pc[i]) << '\n';
  }
  write_text(out.path, o.str());
  return 0;
}

int cmd_table2(const Output& out) {
  const auto rows = run_table2();
  std::ostringstream o;
  if (out.report_format() == ReportFormat::JSON) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rows.size(); ++i)
      j.push_back({{"breakpoints", table2_splits()[i]},
                   {"hausdorff", rows[i].record.hausdorff.value_or(0.0)},
                   {"area_residual_max", rows[i].record.area_residual},
                   {"published", published::table2_standard[i]}});
    write_text(out.path, j.dump(2) + "\n");
    return 0;
  }
  o << "breakpoints,hausdorff,area_residual_max,published\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string b;
    for (double x : table2_splits()[i]) b += (b.empty() ? "" : " ") + format_real(x);
    o << b << ',' << format_real(rows[i].record.hausdorff) << ',' << format_real(rows[i].record.area_residual)
      << ',' << format_real(published::table2_standard[i]) << '\n';
  }
  write_text(out.path, o.str());
  return 0;
}

// --------------------------------------------------------------------------- optimize

struct OptimizeArgs {
  std::string target = "optimized";
  int grid_n = 256;
  int samples = 2000;
  std::string svg;
  std::string curves;
  Output out;
};

int cmd_optimize(const OptimizeArgs& a) {
  if (!known_target(a.target)) return unknown_target(a.target);
  const Target t = make_builtin(a.target);
  const ComparisonSet set = optimized_example(a.target, OptimizedAP{a.grid_n, a.samples, std::nullopt});
  const std::pair<const char*, const Segment*> named[] = {
      {"hermite", &set.hermite}, {"standard", &set.standard}, {"optimized", &set.optimized}};

  std::ostringstream o;
  o << "method,r1,r2,linf,area_residual\n";
  for (const auto& [name, s] : named)
    o << name << ',' << format_real(s->r1) << ',' << format_real(s->r2) << ',' << format_real(s->diagnostics.linf)
      << ',' << format_real(s->diagnostics.area_residual) << '\n';
  write_text(a.out.path, o.str());

  if (!a.curves.empty()) {
    // Figure data: each curve sampled at the same parameters.
    std::ostringstream c;
    c << "t,target_x,target_y,hermite_x,hermite_y,standard_x,standard_y,optimized_x,optimized_y\n";
    const auto [lo, hi] = t.domain();
    for (int i = 0; i < kSvgSamples; ++i) {
      const double u = static_cast<double>(i) / (kSvgSamples - 1);
      const Vec2 p = t.eval(lo + (hi - lo) * u);
      c << format_real(u) << ',' << format_real(p.x) << ',' << format_real(p.y);
      for (const auto& [name, s] : named) {
        const Vec2 q = s->bezier.eval(u);
        c << ',' << format_real(q.x) << ',' << format_real(q.y);
      }
      c << '\n';
    }
    write_text(a.curves, c.str());
  }
  if (!a.svg.empty()) write_text(a.svg, render_svg(t, {set.hermite, set.standard, set.optimized}));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Area-preserving cubic Bezier interpolation"};
  app.require_subcommand(1);

  InterpArgs ia;
  auto* interp = app.add_subcommand("interp", "interpolate one segment of a target");
  interp->add_option("--target", ia.target, "target name")->required();
  interp->add_option("--from", ia.from, "segment start parameter")->required();
  interp->add_option("--to", ia.to, "segment end parameter")->required();
  add_mode(interp, ia.mode);
  interp->add_option("--svg", ia.svg, "write an SVG overlay to this path");
  add_output(interp, ia.out);

  StudyArgs sa;
  auto* study = app.add_subcommand("study", "convergence study over refined partitions");
  study->add_option("--target", sa.target, "target name")->required();
  add_mode(study, sa.mode);
  study->add_option("--levels", sa.levels, "partition sizes, e.g. 4,8,16")->delimiter(',')->capture_default_str();
  study->add_option("--metric", sa.metric, "linf or hausdorff")
      ->check(CLI::IsMember({"linf", "hausdorff"}))
      ->capture_default_str();
  study->add_option("--layout", sa.layout, "uniform or shrinking")
      ->check(CLI::IsMember({"uniform", "shrinking"}))
      ->capture_default_str();
  study->add_option("--M", sa.M, "area perturbation: prescribed area C + M h^5")->capture_default_str();
  study->add_option("--from", sa.from, "study interval start (default: target domain)");
  study->add_option("--to", sa.to, "study interval end (default: target domain)");
  add_output(study, sa.out);

  Output t1out, t2out;
  auto* table1 = app.add_subcommand("table1", "circle table: standard and optimized columns");
  add_output(table1, t1out);
  auto* table2 = app.add_subcommand("table2", "CVE-target splits, Hausdorff errors");
  add_output(table2, t2out);

  OptimizeArgs oa;
  auto* optimize = app.add_subcommand("optimize", "Hermite, standard and optimized interpolants of one target");
  optimize->add_option("--target", oa.target, "target name")->capture_default_str();
  optimize->add_option("--grid-n", oa.grid_n, "optimizer grid size")->check(CLI::Range(8, 1 << 20));
  optimize->add_option("--samples", oa.samples, "optimizer objective samples")->check(CLI::Range(100, 1 << 22));
  optimize->add_option("--svg", oa.svg, "write an SVG overlay to this path");
  optimize->add_option("--curves", oa.curves, "write sampled curves as CSV to this path");
  add_output(optimize, oa.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*interp) return cmd_interp(ia);
    if (*study) return cmd_study(sa);
    if (*table1) return cmd_table1(t1out);
    if (*table2) return cmd_table2(t2out);
    if (*optimize) return cmd_optimize(oa);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == ErrorCode::InvalidConfig || e.code() == ErrorCode::Catalog ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
