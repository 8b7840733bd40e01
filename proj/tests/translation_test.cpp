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
#include <fcfsim/translation.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace fcfsim;

TEST(translation, zero_displacement_is_identity) {
    EXPECT_EQ(translation_unitary(FockDimension(8), 0.0), OperatorMatrix::Identity(8, 8));
    const TranslationPlan plan(3.0, 11, FockDimension(8));
    EXPECT_EQ(discrete_translation(plan, 0), OperatorMatrix::Identity(8, 8));
}

TEST(translation, vacuum_overlap_matches_coherent_state) {
    // |<0|D(alpha)|0>|^2 = exp(-|alpha|^2), alpha = b / sqrt(2).
    const OperatorMatrix u = translation_unitary(FockDimension(32), 1.0);
    EXPECT_NEAR(std::norm(u(0, 0)), std::exp(-0.5), 1e-8);
    EXPECT_LT(max_abs(u * translation_unitary(FockDimension(32), -1.0) - OperatorMatrix::Identity(32, 32)), 1e-10);
}

TEST(translation, discrete_powers_match_single_exponential) {
    for (int d : {4, 8, 16}) {
        const TranslationPlan tomo(3.0, 11, FockDimension(d));
        EXPECT_LT(max_abs(discrete_translation(tomo, 11) - translation_unitary(FockDimension(d), 3.0)), 1e-9);
        const TranslationPlan moussa(4.0, 11, FockDimension(d));
        EXPECT_LT(max_abs(discrete_translation(moussa, 5) - translation_unitary(FockDimension(d), 20.0 / 11.0)),
                  1e-9);
    }
}

TEST(translation, ladder_agrees_with_discrete_translation) {
    const TranslationPlan plan(4.0, 11, FockDimension(8));
    const auto ladder = translation_ladder(plan);
    ASSERT_EQ(ladder.size(), 12u);
    for (int k = 0; k <= 11; ++k) {
        EXPECT_LT(max_abs(ladder[static_cast<std::size_t>(k)] - discrete_translation(plan, k)), 1e-12);
    }
}

TEST(translation, plan_validation) {
    EXPECT_THROW(TranslationPlan(-1.0, 11, FockDimension(4)), std::invalid_argument);
    EXPECT_THROW(TranslationPlan(3.0, 0, FockDimension(4)), std::invalid_argument);
    const TranslationPlan plan(3.0, 11, FockDimension(4));
    EXPECT_THROW(discrete_translation(plan, 12), std::out_of_range);
    EXPECT_THROW(discrete_translation(plan, -1), std::out_of_range);
    EXPECT_THROW(translation_unitary(FockDimension(4), INFINITY), std::invalid_argument);
    EXPECT_DOUBLE_EQ(plan.displacement(11), 3.0);
}

TEST(translation, composition_property) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(-4.0, 4.0);
    const FockDimension dim(16);
    for (int trial = 0; trial < 25; ++trial) {
        const double b1 = uni(rng);
        const double b2 = uni(rng);
        const OperatorMatrix lhs = translation_unitary(dim, b1) * translation_unitary(dim, b2);
        EXPECT_LT(max_abs(lhs - translation_unitary(dim, b1 + b2)), 1e-10) << b1 << " " << b2;
    }
}

TEST(translation, columns_have_unit_norm_and_fcfs_bounded) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(-4.0, 4.0);
    for (int trial = 0; trial < 20; ++trial) {
        const OperatorMatrix u = translation_unitary(FockDimension(12), uni(rng));
        for (int c = 0; c < 12; ++c) {
            EXPECT_NEAR(u.col(c).norm(), 1.0, 1e-10);
            for (int r = 0; r < 12; ++r) {
                const double f = truncated_fcf(u, r, c);
                EXPECT_GE(f, 0.0);
                EXPECT_LE(f, 1.0 + 1e-12);
            }
        }
    }
}

TEST(translation, converges_to_oracle_in_large_basis) {
    const OperatorMatrix u = translation_unitary(FockDimension(64), 2.5);
    for (int m = 0; m < 6; ++m) {
        for (int n = 0; n < 6; ++n) {
            EXPECT_NEAR(truncated_fcf(u, m, n), fcf_oracle({m, n, 2.5}), 1e-12);
        }
    }
    EXPECT_THROW(truncated_fcf(u, 64, 0), std::out_of_range);
}
