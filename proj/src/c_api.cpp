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

#include "sawbath/sawbath.h"

#include <new>
#include <string>

#include "sawbath/error.hpp"
#include "sawbath/harness/config.hpp"
#include "sawbath/harness/experiments.hpp"
#include "sawbath/harness/table.hpp"

struct sawbath_config {
    sawbath::harness::RunConfig cfg;
};

struct sawbath_table {
    sawbath::harness::Table table;
    std::vector<std::string> text;  // row-major cache for text cells
};

namespace {

thread_local std::string last_error;

sawbath_status fail(sawbath_status s, const char* what) {
    last_error = what;
    return s;
}

template <typename F>
sawbath_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return SAWBATH_OK;
    } catch (const sawbath::Error& e) {
        return fail(static_cast<sawbath_status>(static_cast<int>(e.kind())), e.what());
    } catch (const std::bad_alloc&) {
        return fail(SAWBATH_INTERNAL_ERROR, "out of memory");
    } catch (const std::exception& e) {
        return fail(SAWBATH_INTERNAL_ERROR, e.what());
    }
}

sawbath_status null_argument() { return fail(SAWBATH_INVALID_ARGUMENT, "null argument"); }

sawbath_table* wrap(sawbath::harness::Table t) {
    auto* out = new sawbath_table{std::move(t), {}};
    const std::size_t cols = out->table.columns();
    out->text.resize(out->table.rows.size() * cols);
    for (std::size_t r = 0; r < out->table.rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (const auto* s = std::get_if<std::string>(&out->table.rows[r][c]))
                out->text[r * cols + c] = *s;
    return out;
}

bool in_range(const sawbath_table* t, std::size_t row, std::size_t col) {
    return t && row < t->table.rows.size() && col < t->table.columns();
}

}  // namespace

extern "C" {

const char* sawbath_last_error(void) { return last_error.c_str(); }

sawbath_status sawbath_config_create(sawbath_config** out) {
    if (!out) return null_argument();
    return guarded([&] { *out = new sawbath_config{}; });
}

sawbath_status sawbath_config_load(const char* path, sawbath_config** out) {
    if (!path || !out) return null_argument();
    return guarded([&] { *out = new sawbath_config{sawbath::harness::load_config(path)}; });
}

sawbath_status sawbath_config_set(sawbath_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) return null_argument();
    return guarded([&] { sawbath::harness::apply_setting(cfg->cfg, key, value); });
}

sawbath_status sawbath_config_assign(sawbath_config* cfg, const char* assignment) {
    if (!cfg || !assignment) return null_argument();
    return guarded([&] { sawbath::harness::apply_assignment(cfg->cfg, assignment); });
}

sawbath_status sawbath_config_validate(const sawbath_config* cfg) {
    if (!cfg) return null_argument();
    return guarded([&] { cfg->cfg.validate(); });
}

const char* sawbath_config_output_dir(const sawbath_config* cfg) {
    if (!cfg) return nullptr;
    return cfg->cfg.output_dir.c_str();
}

void sawbath_config_destroy(sawbath_config* cfg) { delete cfg; }

sawbath_status sawbath_run_com_spectrum(const sawbath_config* cfg, sawbath_table** spectrum,
                                        sawbath_table** summary) {
    if (!cfg || !spectrum) return null_argument();
    return guarded([&] {
        auto table = sawbath::harness::run_com_spectrum(cfg->cfg);
        sawbath_table* sum = nullptr;
        if (summary)
            sum = wrap(sawbath::harness::com_summary_table(
                sawbath::harness::summarize_com_spectrum(cfg->cfg, table)));
        *spectrum = wrap(std::move(table));
        if (summary) *summary = sum;
    });
}

sawbath_status sawbath_run_loss_spectrum(const sawbath_config* cfg, sawbath_table** out) {
    if (!cfg || !out) return null_argument();
    return guarded([&] { *out = wrap(sawbath::harness::run_loss_spectrum(cfg->cfg)); });
}

sawbath_status sawbath_run_time_trace(const sawbath_config* cfg, sawbath_table** out) {
    if (!cfg || !out) return null_argument();
    return guarded([&] { *out = wrap(sawbath::harness::run_time_trace(cfg->cfg)); });
}

sawbath_status sawbath_run_steady_map(const sawbath_config* cfg, sawbath_table** out) {
    if (!cfg || !out) return null_argument();
    return guarded([&] { *out = wrap(sawbath::harness::run_steady_map(cfg->cfg)); });
}

sawbath_status sawbath_run_dephasing(const sawbath_config* cfg, sawbath_table** out) {
    if (!cfg || !out) return null_argument();
    return guarded([&] {
        cfg->cfg.validate();
        *out = wrap(sawbath::harness::dephasing_table(cfg->cfg.coherence));
    });
}

sawbath_status sawbath_fit_loss_csv(const sawbath_config* cfg, const char* path,
                                    sawbath_table** out) {
    if (!cfg || !path || !out) return null_argument();
    return guarded([&] {
        const auto pairs = sawbath::harness::read_pairs_csv(path);
        *out = wrap(sawbath::harness::fit_loss_table(pairs, cfg->cfg.loss.n_pairs));
    });
}

sawbath_status sawbath_rabi_fit_csv(const char* path, sawbath_table** out) {
    if (!path || !out) return null_argument();
    return guarded([&] {
        const auto pairs = sawbath::harness::read_pairs_csv(path);
        *out = wrap(sawbath::harness::rabi_fit_table(pairs));
    });
}

size_t sawbath_table_rows(const sawbath_table* t) { return t ? t->table.rows.size() : 0; }

size_t sawbath_table_columns(const sawbath_table* t) { return t ? t->table.columns() : 0; }

const char* sawbath_table_header(const sawbath_table* t, size_t col) {
    if (!t || col >= t->table.columns()) return nullptr;
    return t->table.header[col].c_str();
}

sawbath_status sawbath_table_number(const sawbath_table* t, size_t row, size_t col, double* out) {
    if (!out) return null_argument();
    if (!in_range(t, row, col)) return fail(SAWBATH_INVALID_ARGUMENT, "cell index out of range");
    *out = t->table.number(row, col);
    last_error.clear();
    return SAWBATH_OK;
}

const char* sawbath_table_text(const sawbath_table* t, size_t row, size_t col) {
    if (!in_range(t, row, col)) return nullptr;
    if (!std::holds_alternative<std::string>(t->table.rows[row][col])) return nullptr;
    return t->text[row * t->table.columns() + col].c_str();
}

sawbath_status sawbath_table_write_csv(const sawbath_table* t, const char* path) {
    if (!t || !path) return null_argument();
    return guarded([&] { sawbath::harness::write_csv(t->table, path); });
}

sawbath_status sawbath_table_write_svg(const sawbath_table* t, const char* path) {
    if (!t || !path) return null_argument();
    return guarded([&] { sawbath::harness::write_plot(t->table, path); });
}

void sawbath_table_destroy(sawbath_table* t) { delete t; }

sawbath_status sawbath_qubit_loss(double q_internal, double gamma0, int n_pairs, double f_s,
                                  double f_q, int phonon_only, double* out) {
    if (!out) return null_argument();
    return guarded([&] {
        const sawbath::com::LossModel m{q_internal, gamma0, n_pairs, f_s};
        m.validate();
        *out = sawbath::com::qubit_loss(m, f_q,
                                        phonon_only ? sawbath::com::LossPart::PhononOnly
                                                    : sawbath::com::LossPart::Total);
    });
}

sawbath_status sawbath_effective_temperature(double sigma_z_dressed, double omega_r,
                                             double* kelvin) {
    if (!kelvin) return null_argument();
    return guarded([&] {
        *kelvin = sawbath::lindblad::effective_temperature(sigma_z_dressed, omega_r).kelvin;
    });
}

sawbath_status sawbath_pure_dephasing(double t1, double t2_star, double* gamma_phi) {
    if (!gamma_phi) return null_argument();
    return guarded([&] { *gamma_phi = sawbath::analysis::pure_dephasing({t1, t2_star}); });
}

}  // extern "C"
