// Copyright 2026 The sawbath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SAWBATH_SAWBATH_H
#define SAWBATH_SAWBATH_H

/* C interface to libsawbath. Every call returns a status; on failure the
 * message is available from sawbath_last_error() on the same thread. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sawbath_status {
    SAWBATH_OK = 0,
    SAWBATH_INVALID_ARGUMENT = 1,
    SAWBATH_CONFIG_ERROR = 2,
    SAWBATH_NUMERICAL_ERROR = 3,
    SAWBATH_IO_ERROR = 4,
    SAWBATH_INTERNAL_ERROR = 5
} sawbath_status;

typedef struct sawbath_config sawbath_config;
typedef struct sawbath_table sawbath_table;

/* Message of the last failed call on this thread, "" if none. */
const char* sawbath_last_error(void);

sawbath_status sawbath_config_create(sawbath_config** out);
sawbath_status sawbath_config_load(const char* path, sawbath_config** out);
sawbath_status sawbath_config_set(sawbath_config* cfg, const char* key, const char* value);
/* "key=value" */
sawbath_status sawbath_config_assign(sawbath_config* cfg, const char* assignment);
sawbath_status sawbath_config_validate(const sawbath_config* cfg);
/* Owned by cfg, valid until the next call that modifies it. */
const char* sawbath_config_output_dir(const sawbath_config* cfg);
void sawbath_config_destroy(sawbath_config* cfg);

/* `summary` may be NULL. */
sawbath_status sawbath_run_com_spectrum(const sawbath_config* cfg, sawbath_table** spectrum,
                                        sawbath_table** summary);
sawbath_status sawbath_run_loss_spectrum(const sawbath_config* cfg, sawbath_table** out);
sawbath_status sawbath_run_time_trace(const sawbath_config* cfg, sawbath_table** out);
sawbath_status sawbath_run_steady_map(const sawbath_config* cfg, sawbath_table** out);
sawbath_status sawbath_run_dephasing(const sawbath_config* cfg, sawbath_table** out);
/* Two-column CSV of frequency (Hz), decay rate (1/s); N_p from loss.n_pairs. */
sawbath_status sawbath_fit_loss_csv(const sawbath_config* cfg, const char* path,
                                    sawbath_table** out);
/* Two-column CSV of drive amplitude (V), Rabi frequency (Hz). */
sawbath_status sawbath_rabi_fit_csv(const char* path, sawbath_table** out);

size_t sawbath_table_rows(const sawbath_table* t);
size_t sawbath_table_columns(const sawbath_table* t);
const char* sawbath_table_header(const sawbath_table* t, size_t col);
/* NaN for text cells. */
sawbath_status sawbath_table_number(const sawbath_table* t, size_t row, size_t col, double* out);
/* NULL for numeric cells. */
const char* sawbath_table_text(const sawbath_table* t, size_t row, size_t col);
sawbath_status sawbath_table_write_csv(const sawbath_table* t, const char* path);
sawbath_status sawbath_table_write_svg(const sawbath_table* t, const char* path);
void sawbath_table_destroy(sawbath_table* t);

sawbath_status sawbath_qubit_loss(double q_internal, double gamma0, int n_pairs, double f_s,
                                  double f_q, int phonon_only, double* out);
sawbath_status sawbath_effective_temperature(double sigma_z_dressed, double omega_r,
                                             double* kelvin);
sawbath_status sawbath_pure_dephasing(double t1, double t2_star, double* gamma_phi);

#ifdef __cplusplus
}
#endif

#endif
