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

#include <fcfsim/noise.hpp>

#include <fcfsim/analytic.hpp>
#include <fcfsim/moussa.hpp>
#include <fcfsim/tomography.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace fcfsim {

namespace {

// Stream index layout: method tag in the top byte, then point, then trial.
constexpr std::uint64_t kTomographyTag = 0x01;
constexpr std::uint64_t kMoussaTag = 0x02;

std::uint64_t stream_id(std::uint64_t tag, std::uint64_t point, std::uint64_t trial) {
    return (tag << 56) | (point << 32) | trial;
}

// Accumulates sum and sum of squares per point; order of trials does not matter.
struct PointStatistics {
    explicit PointStatistics(std::size_t points) : sum(points, 0.0), sum_sq(points, 0.0) {}

    void add(std::size_t point, double value, double reference) {
        // Centered on the noiseless value to keep the variance well conditioned.
        const double dv = value - reference;
        sum[point] += dv;
        sum_sq[point] += dv * dv;
    }

    double mean_std(int trials) const {
        if (trials < 2) {
            return 0.0;
        }
        double total = 0;
        for (std::size_t p = 0; p < sum.size(); ++p) {
            const double mean = sum[p] / trials;
            const double var = std::max(0.0, (sum_sq[p] - trials * mean * mean) / (trials - 1));
            total += std::sqrt(var);
        }
        return total / static_cast<double>(sum.size());
    }

    std::vector<double> sum;
    std::vector<double> sum_sq;
};

}  // namespace

std::vector<double> unit_noise(std::size_t count, std::uint64_t seed, std::uint64_t stream_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32)};
    std::mt19937_64 engine(seq);
    std::vector<double> out(count);
    for (auto& v : out) {
        // 53-bit uniform in [0, 1), mapped to [-1, 1).
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        v = 2.0 * u - 1.0;
    }
    return out;
}

std::vector<double> inject_noise(std::span<const double> values, const NoiseConfig& cfg,
                                 std::uint64_t stream_index) {
    if (!std::isfinite(cfg.eta) || cfg.eta < 0) {
        throw std::invalid_argument("noise amplitude must be finite and >= 0");
    }
    std::vector<double> out(values.begin(), values.end());
    if (cfg.eta == 0) {
        return out;
    }
    const auto draws = unit_noise(values.size(), cfg.seed, stream_index);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += cfg.eta * draws[i];
    }
    return out;
}

double average_standard_deviation(const std::vector<std::vector<double>>& samples_by_point) {
    if (samples_by_point.empty()) {
        return 0.0;
    }
    double total = 0;
    for (const auto& samples : samples_by_point) {
        const auto n = static_cast<double>(samples.size());
        if (samples.size() < 2) {
            continue;
        }
        double mean = 0;
        for (double s : samples) mean += s;
        mean /= n;
        double ss = 0;
        for (double s : samples) ss += (s - mean) * (s - mean);
        total += std::sqrt(ss / (n - 1));
    }
    return total / static_cast<double>(samples_by_point.size());
}

RobustnessCurve robustness_curve(std::span<const double> eta_grid, const NoiseConfig& cfg,
                                 const RobustnessSetup& setup) {
    if (eta_grid.empty()) {
        throw std::invalid_argument("noise amplitude grid is empty");
    }
    if (cfg.trials < 1) {
        throw std::invalid_argument("trial count must be >= 1");
    }
    for (double eta : eta_grid) {
        if (!std::isfinite(eta) || eta < 0) {
            throw std::invalid_argument("noise amplitudes must be finite and >= 0");
        }
    }

    // Noiseless measurement records, computed once.
    const ConstraintMatrix constraints = build_constraint_matrix();
    const DiagonalReconstructor reconstructor(constraints);
    std::vector<IntensityVector> tomo_records;      // index: level * (N+1) + k
    std::vector<PopulationVector> tomo_reference;
    for (int level = 0; level < 4; ++level) {
        for (const auto& r : tomography_intensities(setup.tomography_plan, level, constraints)) {
            tomo_records.push_back(r);
            tomo_reference.push_back(reconstructor.solve(r));
        }
    }

    const auto ladder = translation_ladder(setup.moussa_plan);
    std::vector<std::array<double, 4>> moussa_readouts;  // index: k
    std::vector<double> moussa_norm;
    std::vector<std::array<double, 4>> moussa_reference;
    for (int k = 0; k <= setup.moussa_plan.steps; ++k) {
        const auto readouts = moussa_pops_readouts(ladder[static_cast<std::size_t>(k)], setup.theta);
        std::array<double, 4> sx{};
        std::array<double, 4> deltas{};
        for (std::size_t i = 0; i < 4; ++i) {
            sx[i] = readouts[i].sx;
            deltas[i] = projection_from_readout(sx[i], 0.0, setup.theta);
        }
        const double norm = setup.four_level_normalization
                                ? four_level_norm(setup.moussa_plan.displacement(k))
                                : 1.0;
        moussa_readouts.push_back(sx);
        moussa_norm.push_back(norm);
        moussa_reference.push_back(solve_moussa_system(deltas, norm).solved);
    }

    RobustnessCurve curve;
    for (double eta : eta_grid) {
        const NoiseConfig trial_cfg{eta, cfg.trials, cfg.seed};

        PointStatistics tomo_stats(tomo_records.size() * 4);
        PointStatistics moussa_stats(moussa_readouts.size() * 4);
        for (int trial = 0; trial < cfg.trials; ++trial) {
            const auto t = static_cast<std::uint64_t>(trial);
            for (std::size_t rec = 0; rec < tomo_records.size(); ++rec) {
                const IntensityVector& clean = tomo_records[rec];
                const auto noisy = inject_noise({clean.data(), static_cast<std::size_t>(clean.size())}, trial_cfg,
                                                stream_id(kTomographyTag, rec, t));
                const PopulationVector p = reconstructor.solve(IntensityVector::Map(noisy.data()));
                for (int m = 0; m < 4; ++m) {
                    tomo_stats.add(rec * 4 + static_cast<std::size_t>(m), p(m), tomo_reference[rec](m));
                }
            }
            for (std::size_t k = 0; k < moussa_readouts.size(); ++k) {
                const auto noisy = inject_noise(moussa_readouts[k], trial_cfg, stream_id(kMoussaTag, k, t));
                std::array<double, 4> deltas{};
                for (std::size_t i = 0; i < 4; ++i) {
                    deltas[i] = projection_from_readout(noisy[i], 0.0, setup.theta);
                }
                const auto run = solve_moussa_system(deltas, moussa_norm[k]);
                for (std::size_t j = 0; j < 4; ++j) {
                    moussa_stats.add(k * 4 + j, run.solved[j], moussa_reference[k][j]);
                }
            }
        }
        curve.points.push_back({eta, tomo_stats.mean_std(cfg.trials), moussa_stats.mean_std(cfg.trials)});
    }
    return curve;
}

}  // namespace fcfsim
