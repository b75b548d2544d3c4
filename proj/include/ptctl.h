/* C interface to the prescribed-time adaptive control toolkit.
 *
 * All functions return ptctl_status; PTCTL_OK means success. On failure a
 * human-readable message is available from ptctl_last_error() (thread-local,
 * valid until the next API call on the same thread). Handles are opaque and
 * must be released with the matching _free function.
 */
#ifndef PTCTL_H
#define PTCTL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ptctl_status {
  PTCTL_OK = 0,
  PTCTL_ERROR_INVALID_ARGUMENT = 1,
  PTCTL_ERROR_PARSE = 2,
  PTCTL_ERROR_VALIDATION = 3,
  PTCTL_ERROR_DOMAIN = 4,
  PTCTL_ERROR_RUNTIME = 5,
  PTCTL_ERROR_IO = 6
} ptctl_status;

typedef struct ptctl_scenario ptctl_scenario;
typedef struct ptctl_trajectory ptctl_trajectory;

const char* ptctl_status_name(ptctl_status status);
const char* ptctl_last_error(void);

/* ---- scenarios ------------------------------------------------------- */

ptctl_status ptctl_scenario_load_file(const char* path, ptctl_scenario** out);
ptctl_status ptctl_scenario_load_string(const char* text, ptctl_scenario** out);
ptctl_status ptctl_scenario_preset(const char* name, ptctl_scenario** out);
void ptctl_scenario_free(ptctl_scenario* scenario);

const char* ptctl_scenario_name(const ptctl_scenario* scenario);
const char* ptctl_scenario_model_name(const ptctl_scenario* scenario);
/* empty string when the file declared no output path */
const char* ptctl_scenario_csv_path(const ptctl_scenario* scenario);
const char* ptctl_scenario_plot_path(const ptctl_scenario* scenario);

/* ---- simulation ------------------------------------------------------ */

ptctl_status ptctl_run(const ptctl_scenario* scenario, ptctl_trajectory** out);
void ptctl_trajectory_free(ptctl_trajectory* trajectory);

size_t ptctl_trajectory_rows(const ptctl_trajectory* trajectory);
size_t ptctl_trajectory_cols(const ptctl_trajectory* trajectory);
size_t ptctl_trajectory_state_count(const ptctl_trajectory* trajectory);
size_t ptctl_trajectory_param_count(const ptctl_trajectory* trajectory);
const char* ptctl_trajectory_column_name(const ptctl_trajectory* trajectory, size_t col);
ptctl_status ptctl_trajectory_cell(const ptctl_trajectory* trajectory, size_t row, size_t col,
                                   double* out);
ptctl_status ptctl_trajectory_write_csv(const ptctl_trajectory* trajectory, const char* path);
ptctl_status ptctl_trajectory_write_plot_script(const ptctl_trajectory* trajectory,
                                                const char* csv_path, const char* path);

/* ---- metrics --------------------------------------------------------- */

/* Last time |x_i| exceeds the band: 0 when it never does, +inf when the final
 * sample still exceeds it. */
ptctl_status ptctl_settling_time(const ptctl_trajectory* trajectory, double band,
                                 size_t state_index, double* out);
ptctl_status ptctl_peak_input(const ptctl_trajectory* trajectory, double* out);
ptctl_status ptctl_terminal_state_norm(const ptctl_trajectory* trajectory, double* out);

/* ---- verification ---------------------------------------------------- */

typedef struct ptctl_check_result {
  char name[64];
  int passed;
  double worst_margin;
  char detail[192];
} ptctl_check_result;

/* Runs the numeric check suite (all checks when `only` is NULL or empty).
 * Writes up to `capacity` results and stores the total count. */
ptctl_status ptctl_verify(const char* only, unsigned long long seed,
                          ptctl_check_result* results, size_t capacity, size_t* count);

#ifdef __cplusplus
}
#endif

#endif /* PTCTL_H */
