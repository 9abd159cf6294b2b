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

// sawbath command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "sawbath/sawbath.h"

namespace {

namespace fs = std::filesystem;

constexpr int exit_config = 2;
constexpr int exit_numerical = 3;
constexpr int exit_io = 4;
constexpr int exit_internal = 1;

struct Failure {
    int code;
};

int exit_code(sawbath_status s) {
    switch (s) {
        case SAWBATH_OK: return 0;
        case SAWBATH_INVALID_ARGUMENT:
        case SAWBATH_CONFIG_ERROR: return exit_config;
        case SAWBATH_NUMERICAL_ERROR: return exit_numerical;
        case SAWBATH_IO_ERROR: return exit_io;
        case SAWBATH_INTERNAL_ERROR: break;
    }
    return exit_internal;
}

void check(sawbath_status s) {
    if (s == SAWBATH_OK) return;
    std::fprintf(stderr, "sawbath: %s\n", sawbath_last_error());
    throw Failure{exit_code(s)};
}

struct ConfigDeleter {
    void operator()(sawbath_config* c) const { sawbath_config_destroy(c); }
};
struct TableDeleter {
    void operator()(sawbath_table* t) const { sawbath_table_destroy(t); }
};
using ConfigPtr = std::unique_ptr<sawbath_config, ConfigDeleter>;
using TablePtr = std::unique_ptr<sawbath_table, TableDeleter>;

struct Options {
    std::string config;
    std::string out;
    std::vector<std::string> sets;
    bool plot = false;
    std::string input;
};

ConfigPtr make_config(const Options& opt) {
    sawbath_config* raw = nullptr;
    if (opt.config.empty())
        check(sawbath_config_create(&raw));
    else
        check(sawbath_config_load(opt.config.c_str(), &raw));
    ConfigPtr cfg(raw);
    for (const auto& s : opt.sets) check(sawbath_config_assign(cfg.get(), s.c_str()));
    check(sawbath_config_validate(cfg.get()));
    return cfg;
}

fs::path output_dir(const Options& opt, const sawbath_config* cfg) {
    fs::path dir = opt.out.empty() ? fs::path(sawbath_config_output_dir(cfg)) : fs::path(opt.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::fprintf(stderr, "sawbath: cannot create '%s': %s\n", dir.string().c_str(),
                     ec.message().c_str());
        throw Failure{exit_io};
    }
    return dir;
}

void emit(const sawbath_table* t, const fs::path& dir, const std::string& stem, bool plot) {
    const fs::path csv = dir / (stem + ".csv");
    check(sawbath_table_write_csv(t, csv.string().c_str()));
    std::printf("%s\n", csv.string().c_str());
    if (plot) {
        const fs::path svg = dir / (stem + ".svg");
        check(sawbath_table_write_svg(t, svg.string().c_str()));
        std::printf("%s\n", svg.string().c_str());
    }
}

TablePtr take(sawbath_table* t) { return TablePtr(t); }

void run(const std::string& command, const Options& opt) {
    const ConfigPtr cfg = make_config(opt);
    const fs::path dir = output_dir(opt, cfg.get());
    sawbath_table* raw = nullptr;
    if (command == "com-spectrum") {
        sawbath_table* summary = nullptr;
        check(sawbath_run_com_spectrum(cfg.get(), &raw, &summary));
        const TablePtr spectrum = take(raw);
        const TablePtr sum = take(summary);
        emit(spectrum.get(), dir, "com_spectrum", opt.plot);
        emit(sum.get(), dir, "com_summary", false);
    } else if (command == "loss-spectrum") {
        check(sawbath_run_loss_spectrum(cfg.get(), &raw));
        emit(take(raw).get(), dir, "loss_spectrum", opt.plot);
    } else if (command == "evolve") {
        check(sawbath_run_time_trace(cfg.get(), &raw));
        emit(take(raw).get(), dir, "time_trace", opt.plot);
    } else if (command == "steady-map") {
        check(sawbath_run_steady_map(cfg.get(), &raw));
        emit(take(raw).get(), dir, "steady_map", opt.plot);
    } else if (command == "fit-loss") {
        check(sawbath_fit_loss_csv(cfg.get(), opt.input.c_str(), &raw));
        emit(take(raw).get(), dir, "loss_fit", false);
    } else if (command == "rabi-fit") {
        check(sawbath_rabi_fit_csv(opt.input.c_str(), &raw));
        emit(take(raw).get(), dir, "rabi_fit", false);
    } else if (command == "dephasing") {
        check(sawbath_run_dephasing(cfg.get(), &raw));
        emit(take(raw).get(), dir, "dephasing", false);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SAW resonator bath and driven two-level system simulator"};
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "key = value configuration file");
        sub->add_option("--out", opt.out, "output directory (overrides output_dir)");
        sub->add_option("--set", opt.sets, "override a setting, key=value (repeatable)");
        sub->add_flag("--plot", opt.plot, "also write an SVG chart");
    };

    struct Spec {
        const char* name;
        const char* help;
        const char* input;
    };
    const Spec specs[] = {
        {"com-spectrum", "cascaded resonator conductance", nullptr},
        {"loss-spectrum", "qubit decay rate versus frequency", nullptr},
        {"evolve", "time trace from the ground state", nullptr},
        {"steady-map", "steady state over the drive grid", nullptr},
        {"fit-loss", "fit the loss model to a CSV of f, rate pairs", "CSV of frequency (Hz), rate (1/s)"},
        {"rabi-fit", "linear Rabi calibration from a CSV", "CSV of amplitude (V), Rabi frequency (Hz)"},
        {"dephasing", "pure dephasing from coherence.t1 and coherence.t2_star", nullptr},
    };
    for (const auto& s : specs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        common(sub);
        if (s.input) sub->add_option("input", opt.input, s.input)->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_config;
    }

    try {
        run(app.get_subcommands().front()->get_name(), opt);
    } catch (const Failure& f) {
        return f.code;
    }
    return 0;
}
