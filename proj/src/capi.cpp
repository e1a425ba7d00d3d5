#include "w2bounds/w2bounds.h"

#include <exception>
#include <new>
#include <string>

#include "w2bounds/bounds.hpp"
#include "w2bounds/error.hpp"
#include "w2bounds/measures.hpp"
#include "w2bounds/ot.hpp"
#include "w2bounds/shapes.hpp"
#include "w2bounds/symmat2.hpp"
#include "w2bounds/transforms.hpp"
#include "w2bounds/wassmap.hpp"

struct w2b_measure {
  w2b::DiscreteMeasure measure;
};

struct w2b_plan {
  w2b::TransportPlan plan;
};

namespace {

thread_local std::string g_last_error;

w2b_status fail(w2b_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <class F>
w2b_status guarded(F&& body) {
  try {
    body();
    return W2B_OK;
  } catch (const w2b::Error& e) {
    return fail(e.kind() == w2b::ErrorKind::Input ? W2B_ERROR_INPUT : W2B_ERROR_NUMERICAL,
                e.what());
  } catch (const std::bad_alloc&) {
    return fail(W2B_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(W2B_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(W2B_ERROR_INTERNAL, "unknown exception");
  }
}

#define W2B_REQUIRE(ptr)                                                          \
  do {                                                                            \
    if ((ptr) == nullptr) return fail(W2B_ERROR_INPUT, #ptr " must not be null"); \
  } while (0)

w2b::SymMat2 to_cpp(const w2b_symmat2& m) { return {m.xx, m.xy, m.yy}; }
w2b_symmat2 to_c(const w2b::SymMat2& m) { return {m.xx, m.xy, m.yy}; }

w2b::Moments2 to_cpp(const w2b_moments& m) { return {m.m1, m.m2, m.a, m.b, m.c, m.e1sq, m.e2sq}; }
w2b_moments to_c(const w2b::Moments2& m) { return {m.m1, m.m2, m.a, m.b, m.c, m.e1sq, m.e2sq}; }

w2b::AffineMap2 to_cpp(const w2b_affine& f) {
  return {{f.linear[0], f.linear[1], f.linear[2], f.linear[3]}, {f.offset[0], f.offset[1]}};
}
w2b_affine to_c(const w2b::AffineMap2& f) {
  return {{f.linear.a11, f.linear.a12, f.linear.a21, f.linear.a22}, {f.offset.x, f.offset.y}};
}

w2b::Vec2 vec(const double v[2]) { return {v[0], v[1]}; }

bool valid_kind(w2b_shape_kind k) {
  return static_cast<int>(k) >= W2B_SHAPE_UNIT_SQUARE && static_cast<int>(k) <= W2B_SHAPE_GAUSSIAN;
}

w2b::ShapeId to_cpp(const w2b_shape& s) {
  if (!valid_kind(s.kind)) w2b::throw_input("unknown shape kind");
  w2b::ShapeId id = w2b::ShapeId::of(static_cast<w2b::Shape>(s.kind));
  id.gaussian = {to_cpp(s.cov), {s.mean[0], s.mean[1]}, s.seed};
  return id;
}

}  // namespace

extern "C" {

W2B_API const char* w2b_last_error(void) { return g_last_error.c_str(); }

W2B_API const char* w2b_version(void) { return "0.1.0"; }

W2B_API w2b_status w2b_shape_parse(const char* name, w2b_shape_kind* out) {
  W2B_REQUIRE(name);
  W2B_REQUIRE(out);
  const auto s = w2b::parse_shape(name);
  if (!s) return fail(W2B_ERROR_INPUT, ("unknown shape '" + std::string(name) + "'").c_str());
  *out = static_cast<w2b_shape_kind>(*s);
  return W2B_OK;
}

W2B_API const char* w2b_shape_name(w2b_shape_kind kind) {
  if (!valid_kind(kind)) return "unknown";
  return w2b::shape_name(static_cast<w2b::Shape>(kind)).data();
}

W2B_API int w2b_shape_is_region(w2b_shape_kind kind) {
  return valid_kind(kind) && w2b::is_region(static_cast<w2b::Shape>(kind)) ? 1 : 0;
}

W2B_API w2b_status w2b_analytic_moments(const w2b_shape* shape, w2b_moments* out) {
  W2B_REQUIRE(shape);
  W2B_REQUIRE(out);
  return guarded([&] { *out = to_c(w2b::analytic_moments(to_cpp(*shape))); });
}

W2B_API uint64_t w2b_derive_seed(uint64_t seed, uint64_t stream) {
  return w2b::derive_seed(seed, stream);
}

W2B_API w2b_status w2b_measure_create(const double* xy, const double* weights, size_t n,
                                      w2b_measure** out) {
  W2B_REQUIRE(out);
  if (n > 0) W2B_REQUIRE(xy);
  return guarded([&] {
    std::vector<w2b::Vec2> pts(n);
    for (size_t i = 0; i < n; ++i) pts[i] = {xy[2 * i], xy[2 * i + 1]};
    std::optional<std::vector<double>> w;
    if (weights != nullptr) w.emplace(weights, weights + n);
    *out = new w2b_measure{w2b::from_points(std::move(pts), std::move(w))};
  });
}

W2B_API w2b_status w2b_measure_from_shape(const w2b_shape* shape, size_t n, w2b_measure** out) {
  W2B_REQUIRE(shape);
  W2B_REQUIRE(out);
  return guarded([&] { *out = new w2b_measure{w2b::make_shape(to_cpp(*shape), n)}; });
}

W2B_API void w2b_measure_free(w2b_measure* measure) { delete measure; }

W2B_API size_t w2b_measure_size(const w2b_measure* measure) {
  return measure ? measure->measure.size() : 0;
}

W2B_API w2b_status w2b_measure_get(const w2b_measure* measure, double* xy, double* weights) {
  W2B_REQUIRE(measure);
  const auto& pts = measure->measure.points();
  const auto& w = measure->measure.weights();
  for (size_t i = 0; i < pts.size(); ++i) {
    if (xy) {
      xy[2 * i] = pts[i].x;
      xy[2 * i + 1] = pts[i].y;
    }
    if (weights) weights[i] = w[i];
  }
  return W2B_OK;
}

W2B_API w2b_status w2b_measure_pushforward(const w2b_measure* measure, const w2b_affine* map,
                                           w2b_measure** out) {
  W2B_REQUIRE(measure);
  W2B_REQUIRE(map);
  W2B_REQUIRE(out);
  return guarded(
      [&] { *out = new w2b_measure{w2b::pushforward(measure->measure, to_cpp(*map))}; });
}

W2B_API w2b_status w2b_measure_moments(const w2b_measure* measure, w2b_moments* out) {
  W2B_REQUIRE(measure);
  W2B_REQUIRE(out);
  *out = to_c(w2b::moments(measure->measure));
  return W2B_OK;
}

W2B_API w2b_affine w2b_affine_identity(void) { return to_c(w2b::AffineMap2::identity()); }

W2B_API w2b_affine w2b_translation(double ax, double ay) {
  return to_c(w2b::translation({ax, ay}));
}

W2B_API w2b_status w2b_scaling(double l1, double l2, w2b_affine* out) {
  W2B_REQUIRE(out);
  return guarded([&] { *out = to_c(w2b::scaling({l1, l2})); });
}

W2B_API w2b_affine w2b_rotation(double theta) { return to_c(w2b::rotation(theta)); }

W2B_API w2b_affine w2b_compose(const w2b_affine* f, const w2b_affine* g) {
  const w2b::AffineMap2 id = w2b::AffineMap2::identity();
  return to_c(w2b::compose(f ? to_cpp(*f) : id, g ? to_cpp(*g) : id));
}

W2B_API w2b_status w2b_sqrt_psd(const w2b_symmat2* m, w2b_symmat2* out) {
  W2B_REQUIRE(m);
  W2B_REQUIRE(out);
  return guarded([&] { *out = to_c(w2b::sqrt_psd(to_cpp(*m))); });
}

W2B_API w2b_status w2b_trace_sqrt_product(const w2b_symmat2* p, const w2b_symmat2* q,
                                          double* out) {
  W2B_REQUIRE(p);
  W2B_REQUIRE(q);
  W2B_REQUIRE(out);
  return guarded([&] { *out = w2b::trace_sqrt_product(to_cpp(*p), to_cpp(*q)); });
}

W2B_API w2b_status w2b_bures_sq(const w2b_symmat2* p, const w2b_symmat2* q, double* out) {
  W2B_REQUIRE(p);
  W2B_REQUIRE(q);
  W2B_REQUIRE(out);
  return guarded([&] { *out = w2b::bures_sq(to_cpp(*p), to_cpp(*q)); });
}

W2B_API w2b_status w2b_optimal_map(const w2b_symmat2* sigma_x, const w2b_symmat2* sigma_y,
                                   double out[4]) {
  W2B_REQUIRE(sigma_x);
  W2B_REQUIRE(sigma_y);
  W2B_REQUIRE(out);
  return guarded([&] {
    const w2b::Mat2 t = w2b::optimal_map(to_cpp(*sigma_x), to_cpp(*sigma_y));
    out[0] = t.a11;
    out[1] = t.a12;
    out[2] = t.a21;
    out[3] = t.a22;
  });
}

W2B_API w2b_symmat2 w2b_project_psd(const w2b_symmat2* m) {
  return m ? to_c(w2b::project_psd(to_cpp(*m))) : w2b_symmat2{0.0, 0.0, 0.0};
}

W2B_API w2b_status w2b_emd(const w2b_measure* mu, const w2b_measure* nu, double* cost,
                           w2b_plan** plan) {
  W2B_REQUIRE(mu);
  W2B_REQUIRE(nu);
  W2B_REQUIRE(cost);
  return guarded([&] {
    w2b::EmdResult r = w2b::emd(mu->measure, nu->measure);
    *cost = r.cost;
    if (plan) *plan = new w2b_plan{std::move(r.plan)};
  });
}

W2B_API w2b_status w2b_w2(const w2b_measure* mu, const w2b_measure* nu, double* out) {
  W2B_REQUIRE(mu);
  W2B_REQUIRE(nu);
  W2B_REQUIRE(out);
  return guarded([&] { *out = w2b::w2(mu->measure, nu->measure); });
}

W2B_API size_t w2b_plan_size(const w2b_plan* plan) { return plan ? plan->plan.entries.size() : 0; }

W2B_API w2b_status w2b_plan_entry(const w2b_plan* plan, size_t k, size_t* source, size_t* target,
                                  double* mass) {
  W2B_REQUIRE(plan);
  if (k >= plan->plan.entries.size()) return fail(W2B_ERROR_INPUT, "plan entry out of range");
  const auto& e = plan->plan.entries[k];
  if (source) *source = e.source;
  if (target) *target = e.target;
  if (mass) *mass = e.mass;
  return W2B_OK;
}

W2B_API void w2b_plan_free(w2b_plan* plan) { delete plan; }

W2B_API double w2b_w2_translation(const double alpha[2], const double alpha_prime[2]) {
  if (!alpha || !alpha_prime) return 0.0;
  return w2b::w2_translation(vec(alpha), vec(alpha_prime));
}

W2B_API w2b_status w2b_w2_dilation_sq(const w2b_moments* m, const double lambda[2],
                                      const double lambda_prime[2], double* out) {
  W2B_REQUIRE(m);
  W2B_REQUIRE(lambda);
  W2B_REQUIRE(lambda_prime);
  W2B_REQUIRE(out);
  return guarded(
      [&] { *out = w2b::w2_dilation_sq(to_cpp(*m), vec(lambda), vec(lambda_prime)); });
}

W2B_API w2b_status w2b_rotation_mean_term(const w2b_moments* m, double theta, double phi,
                                          double* out) {
  W2B_REQUIRE(m);
  W2B_REQUIRE(out);
  *out = w2b::rotation_mean_term(to_cpp(*m), theta, phi);
  return W2B_OK;
}

W2B_API w2b_status w2b_rotation_lower_bound_sq(const w2b_moments* m, double theta, double phi,
                                               double* out) {
  W2B_REQUIRE(m);
  W2B_REQUIRE(out);
  *out = w2b::rotation_lower_bound_sq(to_cpp(*m), theta, phi);
  return W2B_OK;
}

W2B_API w2b_status w2b_equivalence_constants(const w2b_moments* m, double* c_low, double* c_high,
                                             int* c_high_available) {
  W2B_REQUIRE(m);
  const w2b::EquivalenceConstants k = w2b::equivalence_constants(to_cpp(*m));
  if (c_low) *c_low = k.c_low;
  if (c_high) *c_high = k.c_high.value_or(0.0);
  if (c_high_available) *c_high_available = k.c_high.has_value() ? 1 : 0;
  return W2B_OK;
}

W2B_API w2b_status w2b_composition_upper_bound(const w2b_moments* m, const double alpha[2],
                                               const double lambda[2], double theta,
                                               w2b_composition_mode mode, double* out) {
  W2B_REQUIRE(m);
  W2B_REQUIRE(alpha);
  W2B_REQUIRE(lambda);
  W2B_REQUIRE(out);
  if (mode != W2B_COMPOSITION_EQUALITY && mode != W2B_COMPOSITION_GENERAL) {
    return fail(W2B_ERROR_INPUT, "unknown composition mode");
  }
  const auto cpp_mode = mode == W2B_COMPOSITION_EQUALITY ? w2b::CompositionMode::EqualityCase
                                                         : w2b::CompositionMode::General;
  return guarded([&] {
    *out = w2b::composition_upper_bound(to_cpp(*m), vec(alpha), vec(lambda), theta, cpp_mode);
  });
}

W2B_API w2b_status w2b_distance_matrix(const w2b_measure* const* measures, size_t count,
                                       double* out) {
  W2B_REQUIRE(measures);
  W2B_REQUIRE(out);
  for (size_t i = 0; i < count; ++i) W2B_REQUIRE(measures[i]);
  return guarded([&] {
    const w2b::DistanceMatrix d = w2b::distance_matrix(count, [&](size_t i, size_t j) {
      return w2b::emd(measures[i]->measure, measures[j]->measure).cost;
    });
    std::copy(d.entries.begin(), d.entries.end(), out);
  });
}

W2B_API w2b_status w2b_mds(const double* d, size_t n, size_t k, double* coords,
                           double* eigenvalues, size_t* negative_eigenvalues) {
  W2B_REQUIRE(d);
  W2B_REQUIRE(coords);
  return guarded([&] {
    const w2b::DistanceMatrix dm{n, std::vector<double>(d, d + n * n)};
    const w2b::Embedding e = w2b::mds(dm, k);
    std::copy(e.coords.begin(), e.coords.end(), coords);
    if (eigenvalues) std::copy(e.eigenvalues.begin(), e.eigenvalues.end(), eigenvalues);
    if (negative_eigenvalues) *negative_eigenvalues = e.negative_eigenvalues;
  });
}

W2B_API w2b_status w2b_circle_fit(const double* xy, size_t n, double* center_x, double* center_y,
                                  double* radius, double* rms_relative_residual) {
  W2B_REQUIRE(xy);
  return guarded([&] {
    std::vector<w2b::Vec2> pts(n);
    for (size_t i = 0; i < n; ++i) pts[i] = {xy[2 * i], xy[2 * i + 1]};
    const w2b::CircleFit f = w2b::circle_fit(pts);
    if (center_x) *center_x = f.center.x;
    if (center_y) *center_y = f.center.y;
    if (radius) *radius = f.radius;
    if (rms_relative_residual) *rms_relative_residual = f.rms_relative_residual;
  });
}

}  // extern "C"
