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

#pragma once

// Wiring of the measurement pipelines into the three experiments exposed by
// the command-line tool: FCF sweeps, basis-truncation study, noise study.

#include <fcfsim/fcf_table.hpp>
#include <fcfsim/noise.hpp>

#include <iosfwd>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace fcfsim {

enum class NormalizationMode { unit, four_level };

struct ExperimentConfig {
    FcfMethod method = FcfMethod::tomography;
    double b0 = 3.0;
    int steps = 11;
    int basis_dim = 8;
    double theta = std::numbers::pi;
    NormalizationMode normalization = NormalizationMode::unit;
    NoiseConfig noise{0.0, 1000, 20260101};
    std::vector<double> eta_grid;        // noise study; defaults to 0, 0.1, ..., 1
    std::vector<int> truncation_dims{4, 8, 16};
    std::string output_path;             // empty: standard output
    bool deterministic = false;
};

/// Error in the user's configuration (bad key, bad value, empty grid).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Defaults for a method: tomography b0=3, N=11, d=8; moussa b0=4, N=11, d=4,
/// theta=pi; direct, analytic and oracle follow tomography.
ExperimentConfig default_config(FcfMethod method);

/// Flat key-value settings. Grammar, one entry per line:
///
///     key = value      # trailing comments allowed
///
/// Blank lines and lines starting with '#' are ignored. Keys: method, b0,
/// steps, dim, theta, norm, eta, eta_grid, trials, seed, dims, out,
/// deterministic. Later entries override earlier ones.
using Settings = std::map<std::string, std::string>;

Settings parse_settings(std::istream& in);
Settings read_settings_file(const std::string& path);

/// Starts from default_config(method) and applies every other setting.
ExperimentConfig resolve_config(const Settings& settings);

/// Parses "0,0.1,0.5" or "start:stop:step" (inclusive end).
std::vector<double> parse_real_grid(const std::string& text);

std::string_view to_string(NormalizationMode mode);

struct Issue {
    std::string code;
    std::string message;
};

// --- sweep -----------------------------------------------------------------

struct SweepRow {
    FcfEntry entry;
    double analytic = 0;               // infinite-level reference
    bool beyond_turning_point = false;  // classically forbidden overlap

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
    ExperimentConfig config;
    std::vector<SweepRow> rows;
    std::vector<Issue> issues;
};

/// True for f_{0,0'} at b >= 2 and f_{0,1'} at b >= 1 + sqrt(3).
bool beyond_classical_turning_point(int m, int n, double b);

SweepResult run_sweep(const ExperimentConfig& cfg);
void write_sweep_csv(std::ostream& out, const SweepResult& result);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

// --- truncation ------------------------------------------------------------

struct TruncationRow {
    int m = 0;
    int n = 0;
    double b = 0;
    int dim = 0;
    double truncated = 0;
    double analytic = 0;
    double deviation = 0;

    friend bool operator==(const TruncationRow&, const TruncationRow&) = default;
};

struct TruncationResult {
    ExperimentConfig config;
    std::vector<TruncationRow> rows;
    std::vector<std::pair<int, double>> max_deviation;  // per basis dimension, ascending
    std::vector<Issue> issues;
};

/// |f_truncated - f_analytic| for m, n <= 3 over b = b0 k / N in each basis.
/// Flags an issue if the worst-case deviation grows with the basis size.
TruncationResult run_truncation(const ExperimentConfig& cfg);
void write_truncation_csv(std::ostream& out, const TruncationResult& result);
std::vector<TruncationRow> read_truncation_csv(std::istream& in);

// --- noise -----------------------------------------------------------------

struct NoiseStudyResult {
    ExperimentConfig config;
    RobustnessCurve curve;
    std::vector<Issue> issues;
};

NoiseStudyResult run_noise_study(const ExperimentConfig& cfg);
void write_noise_csv(std::ostream& out, const NoiseStudyResult& result);
RobustnessCurve read_noise_csv(std::istream& in);

}  // namespace fcfsim
