/* C interface to the w2bounds library.
 *
 * Every fallible call returns a w2b_status; on failure a description is
 * available from w2b_last_error() on the calling thread until the next
 * failing call. Handles are opaque and owned by the caller, who releases
 * them with the matching *_free function. Planar points are passed as
 * interleaved x, y pairs.
 */
#ifndef W2BOUNDS_W2BOUNDS_H
#define W2BOUNDS_W2BOUNDS_H

#include <stddef.h>
#include <stdint.h>

#if defined(W2B_BUILDING_LIBRARY)
#define W2B_API __attribute__((visibility("default")))
#else
#define W2B_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum w2b_status {
  W2B_OK = 0,
  W2B_ERROR_INPUT = 1,     /* precondition violated */
  W2B_ERROR_NUMERICAL = 2, /* solver failure or degenerate configuration */
  W2B_ERROR_INTERNAL = 3   /* allocation failure or unexpected exception */
} w2b_status;

W2B_API const char* w2b_last_error(void);
W2B_API const char* w2b_version(void);

/* ---- value types ---------------------------------------------------- */

/* m1, m2: means; a, b, c: Var[X1], Var[X2], Cov(X1, X2);
 * e1sq, e2sq: raw second moments. */
typedef struct w2b_moments {
  double m1, m2, a, b, c, e1sq, e2sq;
} w2b_moments;

typedef struct w2b_symmat2 {
  double xx, xy, yy;
} w2b_symmat2;

/* x -> linear * x + offset, linear row-major. */
typedef struct w2b_affine {
  double linear[4];
  double offset[2];
} w2b_affine;

typedef enum w2b_shape_kind {
  W2B_SHAPE_UNIT_SQUARE = 0,
  W2B_SHAPE_CENTERED_SQUARE,
  W2B_SHAPE_RECTANGLE,
  W2B_SHAPE_CIRCLE,
  W2B_SHAPE_SEGMENT,
  W2B_SHAPE_LETTER_C,
  W2B_SHAPE_LETTER_A,
  W2B_SHAPE_LETTER_T1,
  W2B_SHAPE_LETTER_T2,
  W2B_SHAPE_GAUSSIAN
} w2b_shape_kind;

/* cov, mean and seed are read only for W2B_SHAPE_GAUSSIAN. */
typedef struct w2b_shape {
  w2b_shape_kind kind;
  w2b_symmat2 cov;
  double mean[2];
  uint64_t seed;
} w2b_shape;

typedef enum w2b_composition_mode {
  W2B_COMPOSITION_EQUALITY = 0,
  W2B_COMPOSITION_GENERAL = 1
} w2b_composition_mode;

typedef struct w2b_measure w2b_measure;
typedef struct w2b_plan w2b_plan;

/* ---- shapes ----------------------------------------------------------- */

W2B_API w2b_status w2b_shape_parse(const char* name, w2b_shape_kind* out);
W2B_API const char* w2b_shape_name(w2b_shape_kind kind);
/* Nonzero for grid-discretized regions (n must be a perfect square). */
W2B_API int w2b_shape_is_region(w2b_shape_kind kind);
W2B_API w2b_status w2b_analytic_moments(const w2b_shape* shape, w2b_moments* out);
W2B_API uint64_t w2b_derive_seed(uint64_t seed, uint64_t stream);

/* ---- measures --------------------------------------------------------- */

/* weights may be NULL for uniform weights; given weights are renormalized. */
W2B_API w2b_status w2b_measure_create(const double* xy, const double* weights, size_t n,
                                      w2b_measure** out);
W2B_API w2b_status w2b_measure_from_shape(const w2b_shape* shape, size_t n, w2b_measure** out);
W2B_API void w2b_measure_free(w2b_measure* measure);
W2B_API size_t w2b_measure_size(const w2b_measure* measure);
/* xy must hold 2 * size doubles, weights size doubles; either may be NULL. */
W2B_API w2b_status w2b_measure_get(const w2b_measure* measure, double* xy, double* weights);
W2B_API w2b_status w2b_measure_pushforward(const w2b_measure* measure, const w2b_affine* map,
                                           w2b_measure** out);
W2B_API w2b_status w2b_measure_moments(const w2b_measure* measure, w2b_moments* out);

/* ---- affine maps ------------------------------------------------------ */

W2B_API w2b_affine w2b_affine_identity(void);
W2B_API w2b_affine w2b_translation(double ax, double ay);
W2B_API w2b_status w2b_scaling(double l1, double l2, w2b_affine* out);
W2B_API w2b_affine w2b_rotation(double theta);
/* (f o g)(x) = f(g(x)) */
W2B_API w2b_affine w2b_compose(const w2b_affine* f, const w2b_affine* g);

/* ---- 2x2 PSD algebra -------------------------------------------------- */

W2B_API w2b_status w2b_sqrt_psd(const w2b_symmat2* m, w2b_symmat2* out);
W2B_API w2b_status w2b_trace_sqrt_product(const w2b_symmat2* p, const w2b_symmat2* q, double* out);
W2B_API w2b_status w2b_bures_sq(const w2b_symmat2* p, const w2b_symmat2* q, double* out);
/* out receives T = Sx^{-1} (Sx Sy)^{1/2}, row-major. */
W2B_API w2b_status w2b_optimal_map(const w2b_symmat2* sigma_x, const w2b_symmat2* sigma_y,
                                   double out[4]);
W2B_API w2b_symmat2 w2b_project_psd(const w2b_symmat2* m);

/* ---- exact transport -------------------------------------------------- */

/* Squared-Euclidean optimal cost. plan may be NULL. */
W2B_API w2b_status w2b_emd(const w2b_measure* mu, const w2b_measure* nu, double* cost,
                           w2b_plan** plan);
W2B_API w2b_status w2b_w2(const w2b_measure* mu, const w2b_measure* nu, double* out);
W2B_API size_t w2b_plan_size(const w2b_plan* plan);
W2B_API w2b_status w2b_plan_entry(const w2b_plan* plan, size_t k, size_t* source, size_t* target,
                                  double* mass);
W2B_API void w2b_plan_free(w2b_plan* plan);

/* ---- closed-form distances and bounds --------------------------------- */

W2B_API double w2b_w2_translation(const double alpha[2], const double alpha_prime[2]);
W2B_API w2b_status w2b_w2_dilation_sq(const w2b_moments* m, const double lambda[2],
                                      const double lambda_prime[2], double* out);
W2B_API w2b_status w2b_rotation_mean_term(const w2b_moments* m, double theta, double phi,
                                          double* out);
W2B_API w2b_status w2b_rotation_lower_bound_sq(const w2b_moments* m, double theta, double phi,
                                               double* out);
/* *c_high_available is set to 0 when ab - c^2 is degenerate. */
W2B_API w2b_status w2b_equivalence_constants(const w2b_moments* m, double* c_low, double* c_high,
                                             int* c_high_available);
W2B_API w2b_status w2b_composition_upper_bound(const w2b_moments* m, const double alpha[2],
                                               const double lambda[2], double theta,
                                               w2b_composition_mode mode, double* out);

/* ---- Wassmap ---------------------------------------------------------- */

/* out receives count * count squared W2 distances, row-major. */
W2B_API w2b_status w2b_distance_matrix(const w2b_measure* const* measures, size_t count,
                                       double* out);
/* d: n * n squared distances. coords: n * k; eigenvalues: k (may be NULL). */
W2B_API w2b_status w2b_mds(const double* d, size_t n, size_t k, double* coords,
                           double* eigenvalues, size_t* negative_eigenvalues);
W2B_API w2b_status w2b_circle_fit(const double* xy, size_t n, double* center_x, double* center_y,
                                  double* radius, double* rms_relative_residual);

#ifdef __cplusplus
}
#endif

#endif /* W2BOUNDS_W2BOUNDS_H */
