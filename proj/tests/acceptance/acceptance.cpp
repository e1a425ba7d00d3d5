// Acceptance suite: prints one [PASS]/[FAIL] line per criterion.
//
//   w2bounds_acceptance            run every criterion
//   w2bounds_acceptance AC3 AC7    run the named criteria
//
// Exit status is 0 only when every selected criterion passes.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "w2bounds/bounds.hpp"
#include "w2bounds/measures.hpp"
#include "w2bounds/ot.hpp"
#include "w2bounds/shapes.hpp"
#include "w2bounds/symmat2.hpp"
#include "w2bounds/transforms.hpp"
#include "w2bounds/wassmap.hpp"

namespace fs = std::filesystem;
using w2b::Moments2;
using w2b::Shape;
using w2b::ShapeId;
using w2b::SymMat2;
using w2b::Vec2;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> grid(std::size_t count, double lo, double hi, bool include_hi) {
  std::vector<double> out(count);
  const double steps = include_hi ? static_cast<double>(count - 1) : static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / steps;
  return out;
}

Moments2 random_moments(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mean(-2, 2);
  const SymMat2 cov = oracle::random_psd(rng, 1.5);
  return Moments2::from_centered(mean(rng), mean(rng), cov.xx, cov.yy, cov.xy);
}

// ---------------------------------------------------------------------------

Outcome ac1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  double worst = 0;
  int ok = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto xs = oracle::random_points(rng, 6);
    const auto ys = oracle::random_points(rng, 6);
    const double got = w2b::emd(w2b::from_points(xs), w2b::from_points(ys)).cost;
    const double diff = std::abs(got - oracle::brute_force_uniform_cost(xs, ys));
    worst = std::max(worst, diff);
    ok += diff <= 1e-9;
  }
  const double t = seconds_since(t0);
  return {ok == 200 && t < 5.0,
          fmt("%d/200 pairs within 1e-9, max |diff| %.2e, %.2f s (limit 5 s)", ok, worst, t)};
}

Outcome ac2() {
  std::mt19937_64 rng(1002);
  double worst_sq = 0, worst_tr = 0;
  for (int i = 0; i < 1000; ++i) {
    const SymMat2 m = oracle::random_psd(rng, 3.0);
    const SymMat2 r = w2b::sqrt_psd(m);
    const Eigen::Matrix2d re = oracle::to_eigen(r);
    const Eigen::Matrix2d me = oracle::to_eigen(m);
    worst_sq = std::max(worst_sq, (re * re - me).norm() / me.norm());
    const double det = std::max(0.0, m.xx * m.yy - m.xy * m.xy);
    worst_tr = std::max(worst_tr, std::abs(r.trace() - std::sqrt(m.xx + m.yy + 2 * std::sqrt(det))));
  }
  return {worst_sq <= 1e-9 && worst_tr <= 1e-12,
          fmt("max rel Frobenius |R^2 - M| %.2e (tol 1e-9), max trace gap %.2e (tol 1e-12)",
              worst_sq, worst_tr)};
}

Outcome ac3() {
  std::mt19937_64 rng(1003);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const SymMat2 p = oracle::random_psd(rng);
    const SymMat2 q = oracle::random_psd(rng);
    worst = std::max(worst, std::abs(w2b::trace_sqrt_product(p, q) -
                                     oracle::eigen_trace_sqrt_product(p, q)));
  }
  return {worst <= 1e-10, fmt("max |scalar - eigen oracle| %.2e over 1000 pairs (tol 1e-10)", worst)};
}

Outcome ac4() {
  std::mt19937_64 rng(1004);
  std::uniform_real_distribution<double> u(-3, 3);
  const auto mu = w2b::discretize_box(0, 1, 0, 1, 10);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const Vec2 alpha{u(rng), u(rng)};
    const double got = w2b::w2(mu, w2b::pushforward(mu, w2b::translation(alpha)));
    worst = std::max(worst, std::abs(got - w2b::w2_translation(alpha, {0, 0})));
  }
  return {worst <= 1e-6, fmt("max | W2 - |alpha| | %.2e over 20 shifts (tol 1e-6)", worst)};
}

Outcome ac5() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1005);
  std::uniform_real_distribution<double> u(0.25, 2.5);
  const auto mu = w2b::make_shape(ShapeId::of(Shape::UnitSquare), 2500);
  const Moments2 m = w2b::analytic_moments(ShapeId::of(Shape::UnitSquare));
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const Vec2 l{u(rng), u(rng)}, lp{u(rng), u(rng)};
    const double exact = w2b::emd(w2b::pushforward(mu, w2b::scaling(l)),
                                  w2b::pushforward(mu, w2b::scaling(lp)))
                             .cost;
    worst = std::max(worst, std::abs(exact - w2b::w2_dilation_sq(m, l, lp)));
  }
  return {worst <= 5e-3, fmt("50x50 grid, 20 pairs: max |emd^2 - formula| %.2e (tol 5e-3), %.1f s",
                             worst, seconds_since(t0))};
}

Outcome ac6() {
  const Shape shapes[] = {Shape::UnitSquare, Shape::Rectangle2x1, Shape::LetterA,
                          Shape::LetterT1, Shape::LetterT2};
  const auto thetas = grid(50, kPi / 2, 0, false);  // 50 angles in (0, pi/2]
  double worst_analytic = 1e300, worst_empirical = 1e300;
  std::string worst_shape;
  for (Shape s : shapes) {
    const auto id = ShapeId::of(s);
    const auto mu = w2b::make_shape(id, 100);
    const Moments2 ma = w2b::analytic_moments(id);
    const Moments2 me = w2b::moments(mu);
    for (double t : thetas) {
      const double c = w2b::emd(mu, w2b::pushforward(mu, w2b::rotation(t))).cost;
      const double margin = c - w2b::rotation_lower_bound_sq(ma, t, 0);
      if (margin < worst_analytic) {
        worst_analytic = margin;
        worst_shape = std::string(w2b::shape_name(s));
      }
      worst_empirical = std::min(worst_empirical, c - w2b::rotation_lower_bound_sq(me, t, 0));
    }
  }
  const Moments2 sq = w2b::analytic_moments(ShapeId::of(Shape::UnitSquare));
  double worst_cos = 0;
  for (double t : thetas) {
    worst_cos = std::max(worst_cos, std::abs(w2b::rotation_lower_bound_sq(sq, t, 0) - (1 - std::cos(t))));
  }
  return {worst_analytic >= -1e-2 && worst_empirical >= -1e-2 && worst_cos <= 1e-12,
          fmt("min emd^2 - bound: %.2e analytic moments (%s), %.2e empirical (tol -1e-2); "
              "unit-square |bound - (1-cos)| %.1e",
              worst_analytic, worst_shape.c_str(), worst_empirical, worst_cos)};
}

Outcome ac7() {
  const auto t0 = std::chrono::steady_clock::now();
  const SymMat2 covs[] = {{8, 4, 4}, {8, 2, 4}, {8, 0, 4}};
  const auto thetas = grid(10, 0.2, kPi / 2, true);
  std::string detail;
  bool pass = true;
  for (int k = 0; k < 3; ++k) {
    double sum = 0;
    std::size_t count = 0;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
      const auto id = ShapeId::gaussian_of(covs[k], {0, 0}, w2b::derive_seed(7000 + k, trial));
      const auto mu = w2b::make_shape(id, 500);
      const Moments2 m = w2b::moments(mu);
      for (double t : thetas) {
        const double c = w2b::emd(mu, w2b::pushforward(mu, w2b::rotation(t))).cost;
        sum += std::abs(c - w2b::rotation_lower_bound_sq(m, t, 0)) / c;
        ++count;
      }
    }
    const double mean = sum / static_cast<double>(count);
    pass = pass && mean <= 0.1;
    detail += fmt("Sigma%d %.4f%s", k + 1, mean, k < 2 ? ", " : "");
  }
  const double t = seconds_since(t0);
  pass = pass && t < 180;
  return {pass, "mean |emd^2 - bound| / emd^2: " + detail + fmt(" (tol 0.1), %.1f s (limit 180 s)", t)};
}

struct UnimodalScan {
  double peak_theta = 0;
  double worst_violation = 0;  // largest step against the expected direction
};

UnimodalScan scan_centered_square(std::size_t n, const std::vector<double>& thetas) {
  const auto mu = w2b::make_shape(ShapeId::of(Shape::CenteredSquare), n);
  std::vector<double> w;
  for (double t : thetas) w.push_back(w2b::w2(mu, w2b::pushforward(mu, w2b::rotation(t))));
  const std::size_t peak = static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin());
  UnimodalScan s{thetas[peak], 0};
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const double against = i < peak ? w[i] - w[i + 1] : w[i + 1] - w[i];
    s.worst_violation = std::max(s.worst_violation, against);
  }
  return s;
}

Outcome ac8() {
  const auto thetas = grid(25, 0, kPi / 2, true);
  const double step = thetas[1] - thetas[0];
  const UnimodalScan s = scan_centered_square(100, thetas);
  const bool peak_ok = std::abs(s.peak_theta - kPi / 4) <= step + 1e-12;
  std::string detail =
      fmt("n=100: peak at theta=%.4f (pi/4=%.4f, step %.4f), worst step against trend %.3e (slack 1e-3)",
          s.peak_theta, kPi / 4, step, s.worst_violation);
  // Informational only: finer grids, not part of the verdict.
  for (std::size_t n : {400u, 900u}) {
    detail += fmt("; n=%zu worst %.3e", n, scan_centered_square(n, thetas).worst_violation);
  }
  return {peak_ok && s.worst_violation <= 1e-3, detail};
}

Outcome ac9() {
  std::mt19937_64 rng(1009);
  int tuples = 0;
  double worst_low = 1e300, worst_high = 1e300;
  while (tuples < 200) {
    const Moments2 m = random_moments(rng);
    const auto k = w2b::equivalence_constants(m);
    if (!k.c_high) continue;
    ++tuples;
    for (int i = 1; i <= 25; ++i) {
      const double d = kPi / 2 * i / 25.0;
      const double g = w2b::rotation_lower_bound_sq(m, d, 0);
      worst_low = std::min(worst_low, g - k.c_low * d * d);
      worst_high = std::min(worst_high, *k.c_high * d * d - g);
    }
  }
  return {worst_low >= -1e-10 && worst_high >= -1e-10,
          fmt("min(bound - c_low d^2) %.2e, min(c_high d^2 - bound) %.2e (tol -1e-10)", worst_low,
              worst_high)};
}

Outcome ac10() {
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> var(0.05, 3.0), ang(0, 2 * kPi);
  double worst_det = 0, worst_cost = 0;
  for (int i = 0; i < 100; ++i) {
    const double a = var(rng), b = var(rng), theta = ang(rng);
    const double s1 = std::sqrt(3 * a), s2 = std::sqrt(3 * b);
    const auto mu = w2b::discretize_box(-s1, s1, -s2, s2, 20);
    const Moments2 m = w2b::moments(mu);
    const SymMat2 sx{m.a, 0.0, m.b};
    const SymMat2 sy = w2b::congruence(w2b::rotation(theta).linear, sx);
    const w2b::Mat2 t = w2b::optimal_map(sx, sy);
    worst_det = std::max(worst_det, std::abs(t.det() - 1));
    double cost = 0;
    for (std::size_t k = 0; k < mu.size(); ++k) {
      const Vec2 x = mu.points()[k] - m.mean();
      cost += mu.weights()[k] * w2b::norm_sq(t * x - x);
    }
    const double c = std::cos(theta);
    const double want =
        2 * (m.a + m.b) - 2 * std::sqrt(4 * m.a * m.b + (m.a - m.b) * (m.a - m.b) * c * c);
    worst_cost = std::max(worst_cost, std::abs(cost - want));
  }
  return {worst_det <= 1e-10 && worst_cost <= 1e-6,
          fmt("max |det T - 1| %.2e (tol 1e-10), max |E|Tx-x|^2 - formula| %.2e (tol 1e-6)",
              worst_det, worst_cost)};
}

Outcome ac11() {
  struct Setup {
    Shape shape;
    Vec2 alpha, lambda;
    std::vector<double> thetas;
  };
  const Setup setups[] = {
      {Shape::UnitCircle, {-0.5, 1}, {2, 0.5}, grid(50, 0, 2 * kPi, false)},
      {Shape::Segment, {-0.25, 0.1}, {2, 0.5}, grid(50, 0, kPi / 2, true)},
  };
  double worst_ub = 1e300, worst_order = 1e300;
  for (const auto& s : setups) {
    const auto id = ShapeId::of(s.shape);
    const auto mu = w2b::make_shape(id, 100);
    const Moments2 m = w2b::analytic_moments(id);
    for (double t : s.thetas) {
      const auto map = w2b::compose(w2b::translation(s.alpha),
                                    w2b::compose(w2b::rotation(t), w2b::scaling(s.lambda)));
      const double w = w2b::w2(mu, w2b::pushforward(mu, map));
      const double eq =
          w2b::composition_upper_bound(m, s.alpha, s.lambda, t, w2b::CompositionMode::EqualityCase);
      const double gen =
          w2b::composition_upper_bound(m, s.alpha, s.lambda, t, w2b::CompositionMode::General);
      worst_ub = std::min(worst_ub, eq - w);
      worst_order = std::min(worst_order, gen - eq);
    }
  }
  return {worst_ub >= -1e-2 && worst_order >= 0,
          fmt("min(bound - W2) %.2e (tol -1e-2), min(general - equality) %.2e", worst_ub,
              worst_order)};
}

Outcome ac12() {
  struct Check {
    std::string what;
    double got;
    double num, den;
  };
  const auto am = [](Shape s) { return w2b::analytic_moments(ShapeId::of(s)); };
  const Moments2 sq = am(Shape::UnitSquare), rect = am(Shape::Rectangle2x1),
                 circ = am(Shape::UnitCircle), a = am(Shape::LetterA), t2 = am(Shape::LetterT2);
  const std::vector<Check> checks = {
      {"unit-square m1", sq.m1, 1, 2},     {"unit-square m2", sq.m2, 1, 2},
      {"unit-square a", sq.a, 1, 12},      {"unit-square b", sq.b, 1, 12},
      {"rectangle m1", rect.m1, 1, 1},     {"rectangle m2", rect.m2, 1, 2},
      {"rectangle a", rect.a, 1, 3},       {"rectangle b", rect.b, 1, 12},
      {"circle m1", circ.m1, 0, 1},        {"circle m2", circ.m2, 0, 1},
      {"circle a", circ.a, 1, 2},          {"circle b", circ.b, 1, 2},
      {"letter-a m1", a.m1, 0, 1},         {"letter-a m2", a.m2, 0, 1},
      {"letter-a e1sq", a.e1sq, 1, 1},     {"letter-a e2sq", a.e2sq, 2, 9},
      {"letter-t2 m1", t2.m1, 0, 1},       {"letter-t2 m2", t2.m2, 1, 2},
      {"letter-t2 e1sq", t2.e1sq, 1, 6},   {"letter-t2 e2sq", t2.e2sq, 4, 3},
  };
  std::string failures;
  for (const auto& c : checks) {
    const double want = c.num / c.den;
    // Exact up to the rounding of the rational itself.
    if (std::abs(c.got - want) > 4.5e-16 * std::abs(want)) {
      failures += fmt(" %s=%.12g vs stated %g/%g;", c.what.c_str(), c.got, c.num, c.den);
    }
  }
  double worst_disc = 0;
  std::string worst_disc_shape;
  for (Shape s : {Shape::UnitSquare, Shape::Rectangle2x1, Shape::UnitCircle, Shape::LetterA,
                  Shape::LetterT2}) {
    const auto id = ShapeId::of(s);
    const Moments2 d = w2b::moments(w2b::make_shape(id, 10000));
    const Moments2 x = w2b::analytic_moments(id);
    for (auto f : {&Moments2::m1, &Moments2::m2, &Moments2::a, &Moments2::b, &Moments2::c,
                   &Moments2::e1sq, &Moments2::e2sq}) {
      if (std::abs(d.*f - x.*f) > worst_disc) {
        worst_disc = std::abs(d.*f - x.*f);
        worst_disc_shape = std::string(w2b::shape_name(s));
      }
    }
  }
  const bool pass = failures.empty() && worst_disc <= 1e-3;
  return {pass, fmt("%zu stated values checked; discretized max gap %.2e (%s, tol 1e-3)",
                    checks.size(), worst_disc, worst_disc_shape.c_str()) +
                    (failures.empty() ? std::string() : "; mismatches:" + failures)};
}

Outcome ac13() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto thetas = grid(50, 0, 2 * kPi, false);
  const auto fit_family = [&](Shape s) {
    const auto base = w2b::make_shape(ShapeId::of(s), 100);
    std::vector<w2b::DiscreteMeasure> family;
    for (double t : thetas) family.push_back(w2b::pushforward(base, w2b::rotation(t)));
    const auto e = w2b::mds(w2b::distance_matrix(family), 2);
    std::vector<Vec2> pts;
    for (std::size_t i = 0; i < e.n; ++i) pts.push_back({e.coord(i, 0), e.coord(i, 1)});
    return w2b::circle_fit(pts);
  };
  const auto t1 = fit_family(Shape::LetterT1);
  const auto t2 = fit_family(Shape::LetterT2);
  const double rel = std::abs(t2.radius - t1.radius) / t1.radius;
  const double t = seconds_since(t0);
  return {t1.rms_relative_residual <= 0.1 && rel <= 0.1 && t < 600,
          fmt("t1 residual %.2e (tol 0.1); radii t1 %.4f t2 %.4f, relative gap %.3f (tol 0.1); "
              "%.1f s (limit 600 s)",
              t1.rms_relative_residual, t1.radius, t2.radius, rel, t)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome ac14() {
  const fs::path root = fs::temp_directory_path() / "w2bounds_acceptance_ac14";
  fs::remove_all(root);
  fs::create_directories(root);
  {
    std::ofstream(root / "a.csv") << "x,y,w\n0,0,1\n1,0,2\n0.5,1,1\n2,2,0.5\n";
    std::ofstream(root / "b.csv") << "x,y\n0,1\n1,1\n3,0\n";
  }
  const std::string cli = W2B_CLI_PATH;
  const std::vector<std::string> commands = {
      "rotate-bound --shape letter-t1 --n 100",
      "rotate-bound --shape gaussian --n 200 --seed 4",
      "composition --shape circle --alpha=-0.5,1 --lambda 2,0.5 --angles '50:0:2pi)'",
      "composition --shape gaussian --lambda 0.5,1 --n 200 --trials 5 --seed 11",
      "wassmap --shape letter-t2 --n 64 --angles '30:0:2pi)'",
      "wassmap --shape letter-t1 --metric lower-bound",
      "moments --shape letter-c --n 1000",
      "emd " + (root / "a.csv").string() + " " + (root / "b.csv").string(),
  };
  int identical = 0;
  std::string bad;
  for (std::size_t k = 0; k < commands.size(); ++k) {
    std::vector<std::string> snapshots;
    for (int run = 0; run < 2; ++run) {
      const fs::path out = root / fmt("c%zu_r%d", k, run);
      fs::create_directories(out);
      std::string cmd = cli + " " + commands[k];
      if (commands[k].rfind("moments", 0) == 0 || commands[k].rfind("emd", 0) == 0) {
        if (commands[k].rfind("emd", 0) == 0) cmd += " --plan " + (out / "plan.csv").string();
        cmd += " > " + (out / "stdout.csv").string();
      } else {
        cmd += " --out " + out.string() + " > /dev/null";
      }
      if (std::system(cmd.c_str()) != 0) {
        bad += " [" + commands[k] + " failed]";
      }
      std::string snap;
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(out)) {
        if (e.path().extension() == ".csv") files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) snap += f.filename().string() + "\n" + slurp(f);
      snapshots.push_back(snap);
    }
    if (!snapshots[0].empty() && snapshots[0] == snapshots[1]) {
      ++identical;
    } else {
      bad += " [" + commands[k] + " differs]";
    }
  }
  fs::remove_all(root);
  const int total = static_cast<int>(commands.size());
  return {identical == total && bad.empty(),
          fmt("%d/%d commands byte-identical across reruns", identical, total) + bad};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"AC1", "exact transport vs permutation brute force", ac1},
      {"AC2", "closed-form PSD square root", ac2},
      {"AC3", "scalar trace of (PQ)^(1/2) vs eigen oracle", ac3},
      {"AC4", "translation distance is exact", ac4},
      {"AC5", "dilation distance is exact", ac5},
      {"AC6", "rotation lower bound is dominated by exact W2", ac6},
      {"AC7", "Gaussian equality case", ac7},
      {"AC8", "centered-square rotation curve is unimodal at pi/4", ac8},
      {"AC9", "equivalence constants sandwich the bound", ac9},
      {"AC10", "optimal map identity", ac10},
      {"AC11", "composition upper bound validity", ac11},
      {"AC12", "moment tables", ac12},
      {"AC13", "Wassmap circle structure", ac13},
      {"AC14", "CLI determinism", ac14},
  };
  std::set<std::string> selected(argv + 1, argv + argc);
  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    ++ran;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double t = seconds_since(t0);
    failed += !o.pass;
    std::printf("[%s] %-5s %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id.c_str(),
                c.title.c_str(), o.detail.c_str(), t);
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion matched\n");
    return 2;
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
