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

#include <fcfsim/analytic.hpp>
#include <fcfsim/experiment.hpp>
#include <fcfsim/translation.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace fcfsim;

namespace {

template <typename Result, typename Writer>
std::string render(const Result& r, Writer writer) {
    std::ostringstream out;
    writer(out, r);
    return out.str();
}

}  // namespace

TEST(experiment, defaults_follow_the_method) {
    const auto tomo = default_config(FcfMethod::tomography);
    EXPECT_EQ(tomo.b0, 3.0);
    EXPECT_EQ(tomo.steps, 11);
    EXPECT_EQ(tomo.basis_dim, 8);
    const auto moussa = default_config(FcfMethod::moussa);
    EXPECT_EQ(moussa.b0, 4.0);
    EXPECT_EQ(moussa.steps, 11);
    EXPECT_EQ(moussa.basis_dim, 4);
    EXPECT_DOUBLE_EQ(moussa.theta, std::numbers::pi);
    EXPECT_EQ(moussa.eta_grid.size(), 11u);
}

TEST(experiment, settings_grammar) {
    std::istringstream in(
        "# comment line\n"
        "method = moussa\n"
        "\n"
        "norm=fourLevel   # trailing comment\n"
        "  seed = 42\n"
        "dims = 4, 8,16\n");
    const auto settings = parse_settings(in);
    const auto cfg = resolve_config(settings);
    EXPECT_EQ(cfg.method, FcfMethod::moussa);
    EXPECT_EQ(cfg.b0, 4.0);
    EXPECT_EQ(cfg.normalization, NormalizationMode::four_level);
    EXPECT_EQ(cfg.noise.seed, 42u);
    EXPECT_EQ(cfg.truncation_dims, (std::vector<int>{4, 8, 16}));

    std::istringstream bad("method moussa\n");
    EXPECT_THROW(parse_settings(bad), ConfigError);
    EXPECT_THROW(resolve_config({{"colour", "red"}}), ConfigError);
    EXPECT_THROW(resolve_config({{"method", "guess"}}), ConfigError);
    EXPECT_THROW(resolve_config({{"steps", "0"}}), ConfigError);
    EXPECT_THROW(resolve_config({{"b0", "abc"}}), ConfigError);
    EXPECT_THROW(resolve_config({{"eta_grid", ""}}), ConfigError);
    EXPECT_THROW(read_settings_file("/nonexistent/fcfsim.cfg"), ConfigError);
}

TEST(experiment, grids) {
    const auto range = parse_real_grid("0:1:0.1");
    ASSERT_EQ(range.size(), 11u);
    EXPECT_NEAR(range.back(), 1.0, 1e-12);
    EXPECT_EQ(parse_real_grid("0.5, 1,2"), (std::vector<double>{0.5, 1, 2}));
    EXPECT_THROW(parse_real_grid("  "), ConfigError);
    EXPECT_THROW(parse_real_grid("1:0:0.1"), ConfigError);
    EXPECT_THROW(parse_real_grid("0,,1"), ConfigError);
}

TEST(experiment, turning_points) {
    EXPECT_FALSE(beyond_classical_turning_point(0, 0, 1.99));
    EXPECT_TRUE(beyond_classical_turning_point(0, 0, 2.0));
    EXPECT_FALSE(beyond_classical_turning_point(0, 1, 2.7));
    EXPECT_TRUE(beyond_classical_turning_point(0, 1, 1 + std::sqrt(3.0)));
    EXPECT_FALSE(beyond_classical_turning_point(1, 1, 3.5));
}

TEST(experiment, analytic_sweep_has_ten_curves) {
    auto cfg = default_config(FcfMethod::analytic);
    const auto result = run_sweep(cfg);
    EXPECT_TRUE(result.issues.empty());
    EXPECT_EQ(result.rows.size(), 10u * 12u);
    std::set<std::pair<int, int>> curves;
    for (const auto& r : result.rows) {
        curves.insert({r.entry.m, r.entry.n});
        EXPECT_EQ(r.entry.value, r.analytic);
    }
    EXPECT_EQ(curves.size(), 10u);
}

TEST(experiment, tomography_sweep_equals_direct_diagonals) {
    const auto tomo = run_sweep(default_config(FcfMethod::tomography));
    auto direct_cfg = default_config(FcfMethod::direct);
    const auto direct = run_sweep(direct_cfg);
    EXPECT_TRUE(tomo.issues.empty());
    EXPECT_TRUE(direct.issues.empty());
    ASSERT_EQ(tomo.rows.size(), direct.rows.size());
    for (std::size_t i = 0; i < tomo.rows.size(); ++i) {
        const auto& a = tomo.rows[i].entry;
        const auto& b = direct.rows[i].entry;
        EXPECT_EQ(a.m, b.m);
        EXPECT_EQ(a.n, b.n);
        EXPECT_EQ(a.b, b.b);
        EXPECT_NEAR(a.value, b.value, 1e-9);
    }
}

TEST(experiment, moussa_sweep_modes) {
    auto cfg = default_config(FcfMethod::moussa);
    const auto unit = run_sweep(cfg);
    EXPECT_TRUE(unit.issues.empty());
    EXPECT_EQ(unit.rows.size(), 4u * 12u);

    cfg.normalization = NormalizationMode::four_level;
    const auto four = run_sweep(cfg);
    EXPECT_TRUE(four.issues.empty());
    for (const auto& r : four.rows) {
        EXPECT_EQ(r.entry.m, 0);
        if (r.entry.b <= 1.0) {
            EXPECT_NEAR(r.entry.value, r.analytic, 0.02);
        }
    }
    cfg.basis_dim = 8;
    EXPECT_THROW(run_sweep(cfg), ConfigError);
}

TEST(experiment, sweep_csv_round_trip) {
    auto cfg = default_config(FcfMethod::tomography);
    cfg.deterministic = true;
    const auto result = run_sweep(cfg);
    const std::string text = render(result, write_sweep_csv);
    EXPECT_EQ(text.find("generated="), std::string::npos);
    std::istringstream in(text);
    const auto rows = read_sweep_csv(in);
    ASSERT_EQ(rows.size(), result.rows.size());
    SweepResult again = result;
    again.rows = rows;
    EXPECT_EQ(render(again, write_sweep_csv), text);

    cfg.deterministic = false;
    EXPECT_NE(render(run_sweep(cfg), write_sweep_csv).find("generated="), std::string::npos);
}

TEST(experiment, noisy_sweep_is_seeded) {
    auto cfg = default_config(FcfMethod::tomography);
    cfg.deterministic = true;
    cfg.noise.eta = 0.05;
    const auto a = render(run_sweep(cfg), write_sweep_csv);
    const auto b = render(run_sweep(cfg), write_sweep_csv);
    EXPECT_EQ(a, b);
    cfg.noise.seed += 1;
    EXPECT_NE(render(run_sweep(cfg), write_sweep_csv), a);
}

TEST(experiment, truncation_study) {
    auto cfg = default_config(FcfMethod::direct);
    cfg.b0 = 4.0;
    cfg.steps = 40;
    const auto result = run_truncation(cfg);
    EXPECT_TRUE(result.issues.empty());
    ASSERT_EQ(result.max_deviation.size(), 3u);
    EXPECT_GE(result.max_deviation[0].second, result.max_deviation[1].second);
    EXPECT_GE(result.max_deviation[1].second, result.max_deviation[2].second);

    double d16_low = 0;
    double d4_at_4 = 0;
    for (const auto& r : result.rows) {
        if (r.dim == 16 && r.b <= 3.0 + 1e-12 && r.m <= 1 && r.n <= 1) d16_low = std::max(d16_low, r.deviation);
        if (r.dim == 4 && r.m == 0 && r.n == 0 && std::abs(r.b - 4.0) < 1e-12) d4_at_4 = r.deviation;
    }
    EXPECT_LT(d16_low, 1e-4);
    EXPECT_GT(d4_at_4, 1e-3);

    std::istringstream in(render(result, write_truncation_csv));
    EXPECT_EQ(read_truncation_csv(in).size(), result.rows.size());
}

TEST(experiment, noise_study_output) {
    auto cfg = default_config(FcfMethod::tomography);
    cfg.eta_grid = {0.0, 0.5};
    cfg.noise.trials = 50;
    cfg.deterministic = true;
    const auto result = run_noise_study(cfg);
    EXPECT_TRUE(result.issues.empty());
    const std::string text = render(result, write_noise_csv);
    EXPECT_NE(text.find("# fcfsim noise seed=20260101 trials=50 eta_grid=0;0.5"), std::string::npos);
    std::istringstream in(text);
    const auto back = read_noise_csv(in);
    ASSERT_EQ(back.points.size(), 2u);
    EXPECT_EQ(back.points[0].sigma_tomography, 0.0);

    cfg.eta_grid.clear();
    EXPECT_THROW(run_noise_study(cfg), ConfigError);
}
