// Copyright 2026 The fcfsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// fcfsim: Franck-Condon factor experiments from the command line.
//
//   fcfsim sweep      --method tomography|moussa|direct|analytic|oracle ...
//   fcfsim truncation --dims 4,8,16 --b0 4 --steps 40
//   fcfsim noise      --eta 0:1:0.1 --trials 1000 --seed 7
//
// Exit status: 0 on success, 1 if an internal consistency check failed,
// 2 on a usage or configuration error, 3 if output could not be written.
// Failures print one JSON object on stderr.

#include <fcfsim/experiment.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kExitIssues = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

int report_failure(const std::string& command, const std::string& status, const std::vector<fcfsim::Issue>& issues) {
    nlohmann::json j;
    j["status"] = status;
    j["command"] = command;
    j["issues"] = nlohmann::json::array();
    for (const auto& issue : issues) {
        j["issues"].push_back({{"code", issue.code}, {"message", issue.message}});
    }
    std::cerr << j.dump() << '\n';
    if (status == "usage_error") return kExitUsage;
    if (status == "io_error") return kExitIo;
    return kExitIssues;
}

// Writes to cfg.output_path, or stdout if it is empty.
bool emit(const fcfsim::ExperimentConfig& cfg, const std::function<void(std::ostream&)>& writer) {
    if (cfg.output_path.empty()) {
        writer(std::cout);
        return static_cast<bool>(std::cout.flush());
    }
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) {
        return false;
    }
    writer(out);
    out.flush();
    return static_cast<bool>(out);
}

struct CommonFlags {
    std::optional<std::string> config;
    std::optional<std::string> method, b0, steps, dim, theta, norm, eta, trials, seed, out, dims;
    bool deterministic = false;

    void attach(CLI::App* app, bool with_method, bool with_dims, const std::string& eta_help) {
        app->add_option("--config", config, "Key-value config file; flags override it");
        if (with_method) {
            app->add_option("--method", method, "tomography | moussa | direct | analytic | oracle");
        }
        app->add_option("--b0", b0, "Maximum displacement");
        app->add_option("--steps", steps, "Number of translation steps N");
        app->add_option("--dim", dim, "Basis dimension");
        app->add_option("--theta", theta, "Projector phase angle (radians)");
        app->add_option("--norm", norm, "Moussa normalization: unit | fourLevel");
        app->add_option("--eta", eta, eta_help);
        app->add_option("--trials", trials, "Monte Carlo trials");
        app->add_option("--seed", seed, "Master seed");
        app->add_option("--out", out, "Output CSV path (default: stdout)");
        if (with_dims) {
            app->add_option("--dims", dims, "Comma-separated basis dimensions");
        }
        app->add_flag("--deterministic", deterministic, "Omit the timestamp line for byte-stable output");
    }

    fcfsim::Settings settings(bool eta_is_grid) const {
        fcfsim::Settings s;
        if (config) s = fcfsim::read_settings_file(*config);
        auto put = [&s](const char* key, const std::optional<std::string>& v) {
            if (v) s[key] = *v;
        };
        put("method", method);
        put("b0", b0);
        put("steps", steps);
        put("dim", dim);
        put("theta", theta);
        put("norm", norm);
        put(eta_is_grid ? "eta_grid" : "eta", eta);
        put("trials", trials);
        put("seed", seed);
        put("out", out);
        put("dims", dims);
        if (deterministic) s["deterministic"] = "true";
        return s;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Franck-Condon factor simulation toolkit"};
    app.require_subcommand(1);

    CommonFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "FCFs over b = b0 k / N with the chosen method");
    sweep_flags.attach(sweep, true, false, "Uniform noise half-width on measured intensities");

    CommonFlags trunc_flags;
    auto* truncation = app.add_subcommand("truncation", "Truncated-basis FCFs against the closed forms");
    trunc_flags.attach(truncation, false, true, "Unused");

    CommonFlags noise_flags;
    auto* noise = app.add_subcommand("noise", "Average FCF spread versus noise amplitude");
    noise_flags.attach(noise, false, false, "Noise amplitude grid: a,b,c or start:stop:step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_failure(app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name(),
                              "usage_error", {{"cli_parse", e.what()}});
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        std::vector<fcfsim::Issue> issues;
        fcfsim::ExperimentConfig cfg;
        bool written = false;

        if (*sweep) {
            cfg = fcfsim::resolve_config(sweep_flags.settings(false));
            const auto result = fcfsim::run_sweep(cfg);
            issues = result.issues;
            written = emit(cfg, [&](std::ostream& o) { fcfsim::write_sweep_csv(o, result); });
        } else if (*truncation) {
            auto settings = trunc_flags.settings(false);
            if (!settings.contains("b0")) settings["b0"] = "4";
            if (!settings.contains("steps")) settings["steps"] = "40";
            cfg = fcfsim::resolve_config(settings);
            const auto result = fcfsim::run_truncation(cfg);
            issues = result.issues;
            written = emit(cfg, [&](std::ostream& o) { fcfsim::write_truncation_csv(o, result); });
        } else {
            cfg = fcfsim::resolve_config(noise_flags.settings(true));
            const auto result = fcfsim::run_noise_study(cfg);
            issues = result.issues;
            written = emit(cfg, [&](std::ostream& o) { fcfsim::write_noise_csv(o, result); });
        }

        if (!written) {
            return report_failure(command, "io_error", {{"write_failed", "could not write '" + cfg.output_path + "'"}});
        }
        if (!issues.empty()) {
            return report_failure(command, "check_failed", issues);
        }
        return 0;
    } catch (const fcfsim::ConfigError& e) {
        return report_failure(command, "usage_error", {{"config", e.what()}});
    } catch (const std::invalid_argument& e) {
        return report_failure(command, "usage_error", {{"invalid_argument", e.what()}});
    } catch (const std::exception& e) {
        return report_failure(command, "check_failed", {{"exception", e.what()}});
    }
}
