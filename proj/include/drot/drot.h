/* SPDX-License-Identifier: Apache-2.0 */
#ifndef DROT_DROT_H
#define DROT_DROT_H

/*
 * C interface to the discretized-rotation library.
 *
 * Every call returns a drot_status. On failure the message of the last error
 * on the calling thread is available from drot_last_error(). Strings returned
 * through `char**` outputs are owned by the caller and must be released with
 * drot_string_free(). Coefficients use the text grammar "rat:a/c" or
 * "quad:a,b,c,d" for (a + b*sqrt(d))/c. A radius argument is the radius R
 * as an exact rational "p/q", an integer or a terminating decimal; the
 * prefix "sq:" gives R^2 instead.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(DROT_BUILDING_LIBRARY)
#define DROT_API __attribute__((visibility("default")))
#else
#define DROT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum drot_status {
  DROT_OK = 0,
  DROT_ERR_PARSE = 1,
  DROT_ERR_DOMAIN = 2,
  DROT_ERR_PRECONDITION = 3,
  DROT_ERR_ARGUMENT = 4,
  DROT_ERR_OVERFLOW = 5,
  DROT_ERR_INTERNAL = 6
} drot_status;

typedef struct drot_params drot_params;
typedef struct drot_report drot_report;

typedef enum drot_symmetry {
  DROT_ASYMMETRIC = 0,
  DROT_PHI_SYMMETRIC = 1,
  DROT_G_SYMMETRIC = 2,
  DROT_DOUBLY_SYMMETRIC = 3
} drot_symmetry;

typedef struct drot_budget {
  uint64_t max_steps;      /* 0 selects the default of 10^7 */
  const char* max_norm_sq; /* NULL for no norm cap */
} drot_budget;

typedef struct drot_orbit_info {
  int periodic;
  uint64_t period;
  uint64_t steps_used;
  int64_t canonical_x; /* valid when periodic and canonical_fits */
  int64_t canonical_y;
  int canonical_fits;
} drot_orbit_info;

typedef struct drot_census_counts {
  uint64_t periodic_orbits;
  uint64_t unresolved_seeds;
  uint64_t seeds_scanned;
  uint64_t fix_phi_seeds;
  uint64_t fix_g_seeds;
  uint64_t trap_points;
  uint64_t trap_points_mod_reflection;
} drot_census_counts;

DROT_API const char* drot_version(void);
DROT_API const char* drot_last_error(void);
DROT_API void drot_string_free(char* s);

/* Parameters. */
DROT_API drot_status drot_params_create(const char* lambda, const char* eta, drot_params** out);
DROT_API void drot_params_destroy(drot_params* p);
DROT_API drot_status drot_params_json(const drot_params* p, char** out);

/* Dynamics on 64-bit states. DROT_ERR_OVERFLOW when the image leaves int64. */
DROT_API drot_status drot_step(const drot_params* p, int64_t x, int64_t y, int64_t* ox, int64_t* oy);
DROT_API drot_status drot_step_back(const drot_params* p, int64_t x, int64_t y, int64_t* ox,
                                    int64_t* oy);
DROT_API drot_status drot_involution_g(const drot_params* p, int64_t x, int64_t y, int64_t* ox,
                                       int64_t* oy);
DROT_API drot_status drot_in_fix_g(const drot_params* p, int64_t x, int64_t y, int* out);

/* Orbits. Seeds are decimal integer strings so that large states pass through. */
DROT_API drot_status drot_detect_period(const drot_params* p, const char* x, const char* y,
                                        const drot_budget* b, drot_orbit_info* out);
DROT_API drot_status drot_detect_period_symmetric(const drot_params* p, const char* x,
                                                  const char* y, const drot_budget* b,
                                                  drot_orbit_info* out);
DROT_API drot_status drot_classify_symmetry(const drot_params* p, const char* x, const char* y,
                                            const drot_budget* b, drot_symmetry* out);
/* Full JSON description of one orbit, listing its states when the period is
 * at most max_listed. */
DROT_API drot_status drot_orbit_json(const drot_params* p, const char* x, const char* y,
                                     const drot_budget* b, uint64_t max_listed, char** out);

/* Geometry. */
DROT_API drot_status drot_radius_sq(const char* radius, char** out);
DROT_API drot_status drot_trap_count(const drot_params* p, const char* radius, unsigned threads,
                                     uint64_t* out);
DROT_API drot_status drot_trap_json(const drot_params* p, const char* radius, unsigned threads,
                                    char** out);

/* Census. */
DROT_API drot_status drot_census_run(const drot_params* p, const char* radius,
                                     const drot_budget* b, unsigned threads, drot_report** out);
/* One part of a partitioned scan: seeds with index = part_index mod part_count. */
DROT_API drot_status drot_census_run_part(const drot_params* p, const char* radius,
                                          const drot_budget* b, unsigned threads,
                                          size_t part_index, size_t part_count, drot_report** out);
DROT_API drot_status drot_census_merge(const drot_report* a, const drot_report* b,
                                       drot_report** out);
DROT_API drot_status drot_census_from_json(const char* json, drot_report** out);
DROT_API drot_status drot_census_json(const drot_report* r, char** out);
DROT_API drot_status drot_census_csv(const drot_report* r, char** out);
DROT_API drot_status drot_census_get_counts(const drot_report* r, drot_census_counts* out);
DROT_API drot_status drot_census_equal(const drot_report* a, const drot_report* b, int* out);
DROT_API void drot_report_destroy(drot_report* r);

/* Experiments, each returning a JSON document. */
DROT_API drot_status drot_verify_json(const drot_params* p, const char* radius, unsigned threads,
                                      char** out);
/* radii: comma-separated list of R values. */
DROT_API drot_status drot_growth_json(const drot_params* p, const char* radii,
                                      const drot_budget* b, unsigned threads, char** out);
DROT_API drot_status drot_equidist_json(const drot_params* p, const char* radius, char** out);
/* radius NULL: the complete search inside the period's bounding ball. */
DROT_API drot_status drot_enumerate_period_json(const drot_params* p, uint64_t period,
                                                const char* radius, const drot_budget* b,
                                                unsigned threads, char** out);

/* SVG 1.1 figure of the trap region. */
DROT_API drot_status drot_plot_svg(const drot_params* p, const char* radius, unsigned size_px,
                                   unsigned threads, char** out);

#ifdef __cplusplus
}
#endif

#endif /* DROT_DROT_H */
