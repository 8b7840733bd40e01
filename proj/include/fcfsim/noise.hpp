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

// Monte Carlo robustness of the two measurement pipelines against uniform
// noise on the measured intensities.

#include <fcfsim/translation.hpp>

#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace fcfsim {

struct NoiseConfig {
    double eta = 0;       // uniform half-width
    int trials = 1000;
    std::uint64_t seed = 20260101;
};

/// Adds an independent draw from U[-eta, eta] to each value. The draws depend
/// only on (seed, stream_index), never on call order.
std::vector<double> inject_noise(std::span<const double> values, const NoiseConfig& cfg,
                                 std::uint64_t stream_index);

/// Perturbations in [-1, 1] for one stream; inject_noise scales these by eta.
std::vector<double> unit_noise(std::size_t count, std::uint64_t seed, std::uint64_t stream_index);

struct RobustnessPoint {
    double eta = 0;
    double sigma_tomography = 0;
    double sigma_moussa = 0;
};

struct RobustnessCurve {
    std::vector<RobustnessPoint> points;
};

/// What the two pipelines are run on.
struct RobustnessSetup {
    TranslationPlan tomography_plan{3.0, 11, FockDimension(8)};
    TranslationPlan moussa_plan{4.0, 11, FockDimension(4)};
    double theta = std::numbers::pi;
    bool four_level_normalization = false;
};

/// For each eta and trial, perturbs the tomography 13-vectors and the four
/// Moussa sigma_x readouts, re-solves, and averages the per-FCF sample
/// standard deviation over the (m, n, b) grid. Trial t at grid point g always
/// sees the same unit draws, so curves at different eta share noise shapes.
RobustnessCurve robustness_curve(std::span<const double> eta_grid, const NoiseConfig& cfg,
                                 const RobustnessSetup& setup = {});

/// Mean per-point sample standard deviation of a trials x points sample.
double average_standard_deviation(const std::vector<std::vector<double>>& samples_by_point);

}  // namespace fcfsim
