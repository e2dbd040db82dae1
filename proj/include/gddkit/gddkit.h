#ifndef GDDKIT_H
#define GDDKIT_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(GDDKIT_BUILDING)
#    define GDDKIT_API __declspec(dllexport)
#  else
#    define GDDKIT_API __declspec(dllimport)
#  endif
#else
#  define GDDKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gdd_status {
    GDD_OK = 0,
    GDD_ERR_INVALID_ARGUMENT = 1,
    GDD_ERR_PARSE = 2,
    GDD_ERR_DIMENSION = 3,
    GDD_ERR_NOT_CONVERGED = 4,
    GDD_ERR_UNKNOWN_CRITERION = 5,
    GDD_ERR_IO = 6,
    GDD_ERR_INTERNAL = 7
} gdd_status;

typedef struct gdd_matrix gdd_matrix;

/* Row-major n*n arrays; im may be NULL for a real matrix. */
GDDKIT_API gdd_status gdd_matrix_from_array(size_t n, const double* re, const double* im, gdd_matrix** out);
GDDKIT_API gdd_status gdd_matrix_parse_mtx(const char* text, gdd_matrix** out);
GDDKIT_API gdd_status gdd_matrix_load_mtx(const char* path, gdd_matrix** out);
GDDKIT_API gdd_status gdd_matrix_to_mtx(const gdd_matrix* m, char** out);
GDDKIT_API size_t gdd_matrix_order(const gdd_matrix* m);
GDDKIT_API gdd_status gdd_matrix_entry(const gdd_matrix* m, size_t i, size_t j, double* re, double* im);
GDDKIT_API void gdd_matrix_free(gdd_matrix* m);

GDDKIT_API gdd_status gdd_is_sdd(const gdd_matrix* m, double tau, int* out);

/* JSON classification report; release with gdd_string_free. */
GDDKIT_API gdd_status gdd_classify(const gdd_matrix* m, char** report_json);

/* JSON array describing every catalog entry. */
GDDKIT_API gdd_status gdd_criteria_list(char** json);

/* spec_json: {"id": "T4.7-5", "alpha": .., "beta": .., "x": [..], "y": [..],
   "g": "r" | {"family": .., ...}, "h": .., "tau": ..}. margin may be NULL. */
GDDKIT_API gdd_status gdd_check_criterion(const gdd_matrix* m, const char* spec_json, int* fired, double* margin);

/* config_json carries "command" (classify, criteria, regions, verify, report)
   and optional "def", "k", "ids", "alpha_grid", "beta_grid", "scalings",
   "seed", "tol", "tau", "resolution", "spectrum", "svg", "csv",
   "criteria_csv", "intersect", "g", "h", "input". *violation is set to 1 when
   verification found an eigenvalue outside a region set. */
GDDKIT_API gdd_status gdd_run(const gdd_matrix* m, const char* config_json, char** report_json, int* violation);

GDDKIT_API void gdd_string_free(char* s);
GDDKIT_API const char* gdd_status_string(gdd_status s);

/* Message of the last failure on the calling thread. */
GDDKIT_API const char* gdd_last_error(void);

#ifdef __cplusplus
}
#endif

#endif
