#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "angles.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "svg.hpp"
#include "w2bounds/w2bounds.h"

namespace w2b::cli {
namespace {

using MeasurePtr = std::unique_ptr<w2b_measure, decltype(&w2b_measure_free)>;
using PlanPtr = std::unique_ptr<w2b_plan, decltype(&w2b_plan_free)>;

struct Options {
  std::string shape;
  std::size_t n = 100;
  std::string angles;
  std::string alpha = "0,0";
  std::string lambda = "1,1";
  std::uint64_t seed = 0;
  std::size_t trials = 20;
  std::string metric = "emd";
  std::string out = ".";
  std::string cov = "8,4,4";
  std::string mean = "0,0";
  std::string moments = "auto";
  std::string mode = "equality";
  std::size_t dim = 2;
  std::string file_a;
  std::string file_b;
  std::string plan;
};

MeasurePtr adopt(w2b_measure* m) { return MeasurePtr(m, &w2b_measure_free); }

w2b_shape resolve_shape(const Options& o) {
  w2b_shape s{};
  check(w2b_shape_parse(o.shape.c_str(), &s.kind));
  const auto cov = parse_tuple(o.cov, 3);
  const auto mean = parse_tuple(o.mean, 2);
  s.cov = {cov[0], cov[1], cov[2]};
  s.mean[0] = mean[0];
  s.mean[1] = mean[1];
  s.seed = o.seed;
  return s;
}

MeasurePtr make_measure(const w2b_shape& s, std::size_t n) {
  w2b_measure* m = nullptr;
  check(w2b_measure_from_shape(&s, n, &m));
  return adopt(m);
}

MeasurePtr push(const w2b_measure* m, const w2b_affine& f) {
  w2b_measure* out = nullptr;
  check(w2b_measure_pushforward(m, &f, &out));
  return adopt(out);
}

double w2_between(const w2b_measure* a, const w2b_measure* b) {
  double v = 0.0;
  check(w2b_w2(a, b, &v));
  return v;
}

bool use_empirical(const Options& o, const w2b_shape& s) {
  if (o.moments == "auto") return s.kind == W2B_SHAPE_GAUSSIAN;
  return o.moments == "empirical";
}

w2b_moments moments_for(const Options& o, const w2b_shape& s, const w2b_measure* m) {
  w2b_moments out{};
  if (use_empirical(o, s)) {
    check(w2b_measure_moments(m, &out));
  } else {
    check(w2b_analytic_moments(&s, &out));
  }
  return out;
}

std::vector<double> angle_values(const Options& o, const std::string& fallback) {
  return parse_angle_grid(o.angles.empty() ? fallback : o.angles).values();
}

std::filesystem::path output_dir(const Options& o) {
  std::filesystem::path dir(o.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir)) {
    throw UsageError("cannot create output directory '" + o.out + "'");
  }
  return dir;
}

void emit(const std::filesystem::path& path, const std::string& content) {
  write_text_file(path.string(), content);
  std::cout << "wrote " << path.string() << "\n";
}

// Rotation by theta is numerically the identity; relative errors there are
// dominated by solver round-off.
bool trivial_rotation(double theta) { return 1.0 - std::cos(theta) < 1e-12; }

int cmd_rotate_bound(const Options& o) {
  const w2b_shape s = resolve_shape(o);
  const auto thetas = angle_values(o, "50:0:pi/2");
  const MeasurePtr x = make_measure(s, o.n);
  const w2b_moments m = moments_for(o, s, x.get());

  CsvTable table({"theta", "w2", "lower_bound", "rel_err"});
  Series w2_series{"W2 (exact)", {}, {}, {}};
  Series lb_series{"lower bound", {}, {}, {}};
  Series rel_series{"relative error", {}, {}, {}};
  for (double theta : thetas) {
    const MeasurePtr y = push(x.get(), w2b_rotation(theta));
    const double w2 = w2_between(x.get(), y.get());
    double lb_sq = 0.0;
    check(w2b_rotation_lower_bound_sq(&m, theta, 0.0, &lb_sq));
    const double lb = std::sqrt(std::max(lb_sq, 0.0));
    std::optional<double> rel;
    if (!trivial_rotation(theta) && w2 > 1e-12) rel = (w2 - lb) / w2;
    table.add_row({theta, w2, lb, rel});
    w2_series.x.push_back(theta);
    w2_series.y.push_back(w2);
    lb_series.x.push_back(theta);
    lb_series.y.push_back(lb);
    if (rel) {
      rel_series.x.push_back(theta);
      rel_series.y.push_back(*rel);
    }
  }

  const auto dir = output_dir(o);
  const std::string stem = "rotate-bound_" + o.shape;
  emit(dir / (stem + ".csv"), table.str());
  emit(dir / (stem + ".svg"),
       render_svg({"W2(X, R X) for " + o.shape, "theta", "distance", false},
                  {w2_series, lb_series}));
  emit(dir / (stem + "_rel_err.svg"),
       render_svg({"relative error for " + o.shape, "theta", "(W2 - bound) / W2", false},
                  {rel_series}));
  return kExitOk;
}

struct Stats {
  std::vector<double> values;

  void add(double v) { values.push_back(v); }
  std::optional<double> mean() const {
    if (values.empty()) return std::nullopt;
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
  }
  // Sample standard deviation; zero for a single observation.
  std::optional<double> stddev() const {
    const auto mu = mean();
    if (!mu) return std::nullopt;
    if (values.size() < 2) return 0.0;
    double s = 0.0;
    for (double v : values) s += (v - *mu) * (v - *mu);
    return std::sqrt(s / static_cast<double>(values.size() - 1));
  }
};

int cmd_composition(const Options& o) {
  w2b_shape s = resolve_shape(o);
  const auto thetas = angle_values(o, "50:0:pi/2");
  const auto alpha = parse_tuple(o.alpha, 2);
  const auto lambda = parse_tuple(o.lambda, 2);
  const w2b_composition_mode mode =
      o.mode == "general" ? W2B_COMPOSITION_GENERAL : W2B_COMPOSITION_EQUALITY;
  const bool random = s.kind == W2B_SHAPE_GAUSSIAN;
  const std::size_t trials = random ? o.trials : 1;

  w2b_affine scale{};
  check(w2b_scaling(lambda[0], lambda[1], &scale));
  const w2b_affine shift = w2b_translation(alpha[0], alpha[1]);

  std::vector<Stats> w2s(thetas.size());
  std::vector<Stats> ubs(thetas.size());
  std::vector<Stats> rels(thetas.size());
  for (std::size_t t = 0; t < trials; ++t) {
    if (random) s.seed = w2b_derive_seed(o.seed, t);
    const MeasurePtr x = make_measure(s, o.n);
    const w2b_moments m = moments_for(o, s, x.get());
    for (std::size_t k = 0; k < thetas.size(); ++k) {
      const w2b_affine rot = w2b_rotation(thetas[k]);
      const w2b_affine inner = w2b_compose(&rot, &scale);
      const w2b_affine map = w2b_compose(&shift, &inner);
      const MeasurePtr y = push(x.get(), map);
      const double w2 = w2_between(x.get(), y.get());
      double ub = 0.0;
      check(w2b_composition_upper_bound(&m, alpha.data(), lambda.data(), thetas[k], mode, &ub));
      w2s[k].add(w2);
      ubs[k].add(ub);
      if (w2 > 1e-12) rels[k].add((ub - w2) / w2);
    }
  }

  CsvTable table({"theta", "w2_mean", "w2_std", "upper_bound", "rel_err_mean", "rel_err_std"});
  Series w2_series{"W2 (exact)", {}, {}, {}};
  Series ub_series{"upper bound", {}, {}, {}};
  Series rel_series{"relative error", {}, {}, {}};
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    const auto rm = rels[k].mean();
    table.add_row({thetas[k], w2s[k].mean(), w2s[k].stddev(), ubs[k].mean(), rm,
                   rels[k].stddev()});
    w2_series.x.push_back(thetas[k]);
    w2_series.y.push_back(*w2s[k].mean());
    w2_series.err.push_back(*w2s[k].stddev());
    ub_series.x.push_back(thetas[k]);
    ub_series.y.push_back(*ubs[k].mean());
    if (rm) {
      rel_series.x.push_back(thetas[k]);
      rel_series.y.push_back(*rm);
      rel_series.err.push_back(*rels[k].stddev());
    }
  }

  const auto dir = output_dir(o);
  const std::string stem = "composition_" + o.shape;
  emit(dir / (stem + ".csv"), table.str());
  emit(dir / (stem + ".svg"),
       render_svg({"composition for " + o.shape, "theta", "distance", false},
                  {w2_series, ub_series}));
  emit(dir / (stem + "_rel_err.svg"),
       render_svg({"relative error for " + o.shape, "theta", "(bound - W2) / W2", false},
                  {rel_series}));
  return kExitOk;
}

int cmd_wassmap(const Options& o) {
  const w2b_shape s = resolve_shape(o);
  const auto thetas = angle_values(o, "50:0:2pi)");
  const std::size_t count = thetas.size();
  if (count < 3) throw UsageError("wassmap needs at least 3 angles");
  if (o.dim < 2 || o.dim > count) throw UsageError("--dim must lie in [2, angle count]");

  const MeasurePtr x = make_measure(s, o.n);
  std::vector<double> d(count * count, 0.0);
  if (o.metric == "emd") {
    std::vector<MeasurePtr> family;
    std::vector<const w2b_measure*> raw;
    family.reserve(count);
    for (double theta : thetas) {
      family.push_back(push(x.get(), w2b_rotation(theta)));
      raw.push_back(family.back().get());
    }
    check(w2b_distance_matrix(raw.data(), count, d.data()));
  } else {
    const w2b_moments m = moments_for(o, s, x.get());
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        double v = 0.0;
        check(w2b_rotation_lower_bound_sq(&m, thetas[i], thetas[j], &v));
        d[i * count + j] = d[j * count + i] = std::max(v, 0.0);
      }
    }
  }

  std::vector<double> coords(count * o.dim);
  std::vector<double> eig(o.dim);
  std::size_t negative = 0;
  check(w2b_mds(d.data(), count, o.dim, coords.data(), eig.data(), &negative));

  CsvTable table({"index", "theta", "x", "y"});
  Series pts{o.shape + " (" + o.metric + ")", {}, {}, {}};
  std::vector<double> plane(2 * count);
  for (std::size_t i = 0; i < count; ++i) {
    const double px = coords[i * o.dim];
    const double py = coords[i * o.dim + 1];
    plane[2 * i] = px;
    plane[2 * i + 1] = py;
    table.add_row({static_cast<double>(i), thetas[i], px, py});
    pts.x.push_back(px);
    pts.y.push_back(py);
  }

  const auto dir = output_dir(o);
  const std::string stem = "wassmap_" + o.shape + "_" + o.metric;
  emit(dir / (stem + ".csv"), table.str());
  emit(dir / (stem + ".svg"),
       render_svg({"MDS embedding of rotated " + o.shape, "x", "y", true}, {pts}));

  double cx = 0.0, cy = 0.0, r = 0.0, rms = 0.0;
  check(w2b_circle_fit(plane.data(), count, &cx, &cy, &r, &rms));
  CsvTable summary({"center_x", "center_y", "radius", "rms_residual", "neg_eigs"});
  summary.add_row({cx, cy, r, rms, static_cast<double>(negative)});
  emit(dir / (stem + "_summary.csv"), summary.str());
  return kExitOk;
}

MeasurePtr measure_from_file(const std::string& path) {
  const PointCloud cloud = read_point_cloud(path);
  w2b_measure* m = nullptr;
  check(w2b_measure_create(cloud.xy.data(), cloud.weights.empty() ? nullptr : cloud.weights.data(),
                           cloud.size(), &m));
  return adopt(m);
}

int cmd_emd(const Options& o) {
  const MeasurePtr a = measure_from_file(o.file_a);
  const MeasurePtr b = measure_from_file(o.file_b);
  double cost = 0.0;
  w2b_plan* raw = nullptr;
  check(w2b_emd(a.get(), b.get(), &cost, o.plan.empty() ? nullptr : &raw));
  const PlanPtr plan(raw, &w2b_plan_free);

  CsvTable result({"w2", "cost"});
  result.add_row({std::sqrt(std::max(cost, 0.0)), cost});
  std::cout << result.str();

  if (plan) {
    CsvTable table({"source", "target", "mass"});
    for (std::size_t k = 0; k < w2b_plan_size(plan.get()); ++k) {
      std::size_t i = 0, j = 0;
      double mass = 0.0;
      check(w2b_plan_entry(plan.get(), k, &i, &j, &mass));
      table.add_raw_row({std::to_string(i), std::to_string(j), format_value(mass)});
    }
    write_text_file(o.plan, table.str());
  }
  return kExitOk;
}

int cmd_moments(const Options& o) {
  const w2b_shape s = resolve_shape(o);
  const MeasurePtr x = make_measure(s, o.n);
  w2b_moments analytic{};
  w2b_moments discrete{};
  check(w2b_analytic_moments(&s, &analytic));
  check(w2b_measure_moments(x.get(), &discrete));

  const std::pair<const char*, double w2b_moments::*> fields[] = {
      {"m1", &w2b_moments::m1}, {"m2", &w2b_moments::m2},     {"a", &w2b_moments::a},
      {"b", &w2b_moments::b},   {"c", &w2b_moments::c},       {"e1sq", &w2b_moments::e1sq},
      {"e2sq", &w2b_moments::e2sq}};
  CsvTable table({"moment", "analytic", "discretized", "abs_diff"});
  for (const auto& [name, field] : fields) {
    const double va = analytic.*field;
    const double vd = discrete.*field;
    table.add_raw_row({name, format_value(va), format_value(vd), format_value(std::abs(va - vd))});
  }
  std::cout << table.str();
  return kExitOk;
}

void add_shape_options(CLI::App* cmd, Options& o, const std::string& default_shape) {
  o.shape = default_shape;
  cmd->add_option("--shape", o.shape, "Shape name")->capture_default_str();
  cmd->add_option("--n", o.n, "Support points per measure")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Seed for Gaussian samples")->capture_default_str();
  cmd->add_option("--cov", o.cov, "Gaussian covariance XX,XY,YY")->capture_default_str();
  cmd->add_option("--mean", o.mean, "Gaussian mean X,Y")->capture_default_str();
}

void add_moment_option(CLI::App* cmd, Options& o) {
  cmd->add_option("--moments", o.moments,
                  "Moments fed to the bounds: auto (empirical for gaussian), analytic, empirical")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "analytic", "empirical"}));
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Exact W2 distances and closed-form bounds for planar measures"};
  app.require_subcommand(1);
  Options o;

  auto* rotate = app.add_subcommand("rotate-bound", "W2(X, R X) against the rotation lower bound");
  add_shape_options(rotate, o, "unit-square");
  add_moment_option(rotate, o);
  rotate->add_option("--angles", o.angles, "COUNT:MIN:MAX, trailing ')' excludes MAX")
      ->default_str("50:0:pi/2");
  rotate->add_option("--out", o.out, "Output directory")->capture_default_str();

  auto* comp = app.add_subcommand("composition", "W2 under T o R o S against the upper bound");
  add_shape_options(comp, o, "circle");
  add_moment_option(comp, o);
  comp->add_option("--angles", o.angles, "COUNT:MIN:MAX, trailing ')' excludes MAX")
      ->default_str("50:0:pi/2");
  comp->add_option("--alpha", o.alpha, "Translation X,Y")->capture_default_str();
  comp->add_option("--lambda", o.lambda, "Scaling L1,L2")->capture_default_str();
  comp->add_option("--trials", o.trials, "Repeated trials for gaussian shapes")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  comp->add_option("--mode", o.mode, "Bound variant")
      ->capture_default_str()
      ->check(CLI::IsMember({"equality", "general"}));
  comp->add_option("--out", o.out, "Output directory")->capture_default_str();

  auto* wass = app.add_subcommand("wassmap", "MDS embedding of a rotated family");
  add_shape_options(wass, o, "letter-t1");
  add_moment_option(wass, o);
  wass->add_option("--angles", o.angles, "COUNT:MIN:MAX, trailing ')' excludes MAX")
      ->default_str("50:0:2pi)");
  wass->add_option("--metric", o.metric, "Distance used for the matrix")
      ->capture_default_str()
      ->check(CLI::IsMember({"emd", "lower-bound"}));
  wass->add_option("--dim", o.dim, "Embedding dimension")->capture_default_str();
  wass->add_option("--out", o.out, "Output directory")->capture_default_str();

  auto* emd = app.add_subcommand("emd", "Exact W2 between two point-cloud CSV files");
  emd->add_option("file_a", o.file_a, "First point cloud (x,y[,w])")->required();
  emd->add_option("file_b", o.file_b, "Second point cloud (x,y[,w])")->required();
  emd->add_option("--plan", o.plan, "Write the transport plan to this CSV");

  auto* mom = app.add_subcommand("moments", "Analytic versus discretized moments");
  add_shape_options(mom, o, "unit-square");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (rotate->parsed()) return cmd_rotate_bound(o);
    if (comp->parsed()) return cmd_composition(o);
    if (wass->parsed()) return cmd_wassmap(o);
    if (emd->parsed()) return cmd_emd(o);
    if (mom->parsed()) return cmd_moments(o);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitInput;
}

}  // namespace w2b::cli
