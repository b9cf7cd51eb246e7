/* C interface of the cpnsurf shared library.
 *
 * All functions return cpn_status; CPN_OK means success. On failure,
 * cpn_last_error() holds a human-readable message (thread-local storage,
 * valid until the next failing call on the same thread). Strings returned
 * through char** out parameters are heap-allocated and must be released
 * with cpn_string_free().
 */
#ifndef CPNSURF_CAPI_H
#define CPNSURF_CAPI_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cpn_status {
    CPN_OK = 0,
    CPN_ERR_INVALID_ARGUMENT = 1,
    CPN_ERR_PARSE = 2,
    CPN_ERR_POLE_AT_BASE = 3,
    CPN_ERR_SHAPE_MISMATCH = 4,
    CPN_ERR_DIVISION_BY_SINGULAR_JET = 5,
    CPN_ERR_ORDER_EXHAUSTED = 6,
    CPN_ERR_BRANCH_CUT = 7,
    CPN_ERR_ZERO_BASE = 8,
    CPN_ERR_INVALID_DIMENSION = 9,
    CPN_ERR_NULL_VECTOR = 10,
    CPN_ERR_TOWER_DEPTH = 11,
    CPN_ERR_QUADRATURE_DIVERGENCE = 12,
    CPN_ERR_PATH_SINGULARITY = 13,
    CPN_ERR_NON_CONVERGENT = 14,
    CPN_ERR_NOT_ANTI_HERMITIAN = 15,
    CPN_ERR_DEGENERATE_METRIC = 16,
    CPN_ERR_ZERO_OF_F = 17,
    CPN_ERR_ROOT_FINDING = 18,
    CPN_ERR_CLUSTERED_ROOTS = 19,
    CPN_ERR_SEED_AT_CRITICAL_POINT = 20,
    CPN_ERR_STEP_TOO_LARGE = 21,
    CPN_ERR_INTERNAL = 22
} cpn_status;

/* 1 if the status stems from numerical non-convergence rather than bad
 * input; useful for mapping to process exit codes. */
int cpn_status_is_numerical(cpn_status status);

const char* cpn_version(void);
const char* cpn_last_error(void);
void cpn_string_free(char* s);

/* ---- models ---------------------------------------------------------- */

typedef struct cpn_model cpn_model;

cpn_status cpn_model_from_json(const char* json_text, cpn_model** out_model);
void cpn_model_free(cpn_model* model);

int cpn_model_dimension(const cpn_model* model);      /* N */
int cpn_model_default_depth(const cpn_model* model);  /* k from the spec */
int cpn_model_has_meron(const cpn_model* model);
int cpn_model_coordinate_count(const cpn_model* model); /* N*N - 1 */

/* Canonical binomial model of dimension n with tower depth k. */
cpn_status cpn_veronese_spec_json(int n, int k, char** out_json);

/* ---- analysis -------------------------------------------------------- */

/* Geometry report (metric, connection, curvatures, fundamental forms,
 * invariants) for `count` points. */
cpn_status cpn_analyze_json(const cpn_model* model, int k, const double* xs,
                            const double* ys, int count, char** out_json);

/* Degree and action integrated over both stereographic charts. */
cpn_status cpn_charge_json(const cpn_model* model, int k, int quad_order,
                           char** out_json);

/* Surface coordinates at one point. Depth 0 uses the closed form; deeper
 * solutions integrate the immersion 1-form from the anchor, so their
 * coordinates are relative to the anchor point. For N = 3 the components
 * follow the table ordering of the radius vectors; otherwise the generic
 * generator ordering. coords must hold N*N-1 doubles. */
cpn_status cpn_immersion_sample(const cpn_model* model, int k, double x, double y,
                                double anchor_x, double anchor_y, int segments,
                                int nodes, double* coords);

/* ---- dilation-invariant block ---------------------------------------- */

cpn_status cpn_meron_report_json(const cpn_model* model, char** out_json);

/* Radius vector of the meron block at one point (8 doubles). */
cpn_status cpn_meron_radius(const cpn_model* model, double x, double y,
                            double* coords8);

/* Trace one vertical trajectory. xs/ys receive up to `capacity` points;
 * *count is the number written, *closed and *period_error describe the
 * closure test. */
cpn_status cpn_meron_trajectory(const cpn_model* model, double seed_x, double seed_y,
                                double step, int max_steps, double* xs, double* ys,
                                int capacity, int* count, int* closed,
                                double* period_error);

/* ---- acceptance ------------------------------------------------------ */

/* Runs the acceptance suite; out_json is an array of
 * {name, pass, worst, tolerance, detail}; *failures counts failed lines. */
cpn_status cpn_verify_json(char** out_json, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* CPNSURF_CAPI_H */
