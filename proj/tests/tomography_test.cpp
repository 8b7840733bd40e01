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
#include <fcfsim/tomography.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace fcfsim;

namespace {

DensityMatrix diagonal_state(const PopulationVector& p) {
    OperatorMatrix rho = p.cast<std::complex<double>>().asDiagonal();
    return DensityMatrix(rho, TraceClass::unit);
}

PopulationVector random_populations(std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    PopulationVector p;
    for (int i = 0; i < 8; ++i) p(i) = e(rng);
    return p / p.sum();
}

}  // namespace

TEST(tomography, dephase) {
    const DensityMatrix diag = diagonal_state(PopulationVector::Constant(0.125));
    EXPECT_EQ(dephase(diag).matrix(), diag.matrix());

    const DensityMatrix plus(OperatorMatrix::Constant(2, 2, 0.5), TraceClass::unit);
    const auto d = dephase(plus);
    EXPECT_EQ(d.matrix()(0, 0), 0.5);
    EXPECT_EQ(d.matrix()(1, 1), 0.5);
    EXPECT_EQ(d.matrix()(0, 1), 0.0);

    const DensityMatrix spread = evolve(encode_level(1, 3), translation_unitary(FockDimension(8), 1.3));
    EXPECT_EQ(dephase(spread).matrix().trace(), spread.matrix().trace());
    EXPECT_EQ(off_diagonal_max(dephase(spread).matrix()), 0.0);
}

TEST(tomography, constraint_matrix_shape) {
    const ConstraintMatrix m = build_constraint_matrix();
    EXPECT_EQ(m.coefficients.rows(), 13);
    EXPECT_EQ(m.coefficients.cols(), 8);
    EXPECT_EQ(Eigen::FullPivLU<Eigen::MatrixXd>(m.coefficients).rank(), 8);

    for (int row = 0; row < 12; ++row) {
        int plus = 0, minus = 0;
        for (int c = 0; c < 8; ++c) {
            const double v = m.coefficients(row, c);
            if (v == 1.0) ++plus;
            else if (v == -1.0) ++minus;
            else EXPECT_EQ(v, 0.0);
        }
        EXPECT_EQ(plus, 1);
        EXPECT_EQ(minus, 1);
        // Exactly one spin differs between the connected levels.
        const auto& t = m.transitions[static_cast<std::size_t>(row)];
        EXPECT_EQ(t.upper_level - t.lower_level, 1 << (3 - t.spin));
    }
    EXPECT_EQ(m.coefficients.row(12), Eigen::RowVectorXd::Ones(8));
}

TEST(tomography, spin_three_transition_row) {
    const ConstraintMatrix m = build_constraint_matrix();
    const int row = ConstraintMatrix::row_of(3, 0);  // |000> <-> |001>
    Eigen::RowVectorXd expected = Eigen::RowVectorXd::Zero(8);
    expected(0) = 1;
    expected(1) = -1;
    EXPECT_EQ(m.coefficients.row(row), expected);
    // Spin 1 with spectators |11>: |011> <-> |111>.
    const auto& t = m.transitions[static_cast<std::size_t>(ConstraintMatrix::row_of(1, 3))];
    EXPECT_EQ(t.lower_level, 3);
    EXPECT_EQ(t.upper_level, 7);
}

TEST(tomography, flip_angle_cancels_after_normalization) {
    const ConstraintMatrix small = build_constraint_matrix(3, 0.01);
    const ConstraintMatrix standard = build_constraint_matrix();
    EXPECT_EQ(small.coefficients, standard.coefficients);
    EXPECT_NEAR(standard.flip_angle, 6.0 * std::numbers::pi / 180.0, 1e-15);
    EXPECT_THROW(build_constraint_matrix(2), std::invalid_argument);
    EXPECT_THROW(build_constraint_matrix(3, 0.0), std::invalid_argument);
    EXPECT_THROW(build_constraint_matrix(3, 1.0), std::invalid_argument);
}

TEST(tomography, detect_examples) {
    const ConstraintMatrix m = build_constraint_matrix();
    const auto ground = detect(encode_level(0, 3), m);
    for (int row = 0; row < 12; ++row) {
        const auto& t = m.transitions[static_cast<std::size_t>(row)];
        const double expected = t.lower_level == 0 ? 1.0 : 0.0;
        EXPECT_EQ(ground.r(row), expected);
    }
    EXPECT_EQ(ground.r(12), 1.0);

    const auto mixed = detect(diagonal_state(PopulationVector::Constant(0.125)), m);
    EXPECT_EQ(mixed.r.head(12), Eigen::VectorXd::Zero(12));
    EXPECT_EQ(mixed.r(12), 1.0);

    const DensityMatrix coherent = evolve(encode_level(0, 3), translation_unitary(FockDimension(8), 1.0));
    EXPECT_THROW(detect(coherent, m), std::invalid_argument);
    EXPECT_THROW(detect(encode_level(0, 2), m), std::invalid_argument);
}

TEST(tomography, round_trip_random_diagonals) {
    const ConstraintMatrix m = build_constraint_matrix();
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const PopulationVector p = random_populations(rng);
        const PopulationVector back = reconstruct_diagonal(detect(diagonal_state(p), m), m);
        EXPECT_LT((back - p).cwiseAbs().maxCoeff(), 1e-10);
    }
    const PopulationVector e3 = reconstruct_diagonal(detect(encode_level(3, 3), m), m);
    EXPECT_LT((e3 - PopulationVector::Unit(3)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(tomography, noisy_recovery_is_order_eta) {
    const ConstraintMatrix m = build_constraint_matrix();
    const DiagonalReconstructor solver(m);
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> noise(-0.05, 0.05);
    for (int trial = 0; trial < 200; ++trial) {
        const PopulationVector p = random_populations(rng);
        IntensityVector r = detect(diagonal_state(p), m).r;
        for (int i = 0; i < 13; ++i) r(i) += noise(rng);
        // ||(M^T M)^-1 M^T||_inf * eta bounds the error; 3 eta is ample.
        EXPECT_LT((solver.solve(r) - p).cwiseAbs().maxCoeff(), 3 * 0.05);
    }
}

TEST(tomography, translated_pipeline_matches_column_magnitudes) {
    const ConstraintMatrix m = build_constraint_matrix();
    const double b = 3.0 * 5.0 / 11.0;
    const OperatorMatrix u = translation_unitary(FockDimension(8), b);
    const PopulationVector p = reconstruct_diagonal(detect(dephase(evolve(encode_level(0, 3), u)), m), m);
    for (int level = 0; level < 8; ++level) {
        EXPECT_NEAR(p(level), truncated_fcf(u, level, 0), 1e-10);
    }
}

TEST(tomography, fcf_via_tomography_sweeps) {
    const TranslationPlan plan(3.0, 11, FockDimension(8));
    const FcfTable t0 = fcf_via_tomography(plan, 0);
    EXPECT_EQ(t0.size(), 4u * 12u);
    EXPECT_NEAR(*t0.find(0, 0, 0.0), 1.0, 1e-12);
    for (int level = 1; level < 4; ++level) EXPECT_NEAR(*t0.find(level, 0, 0.0), 0.0, 1e-12);
    // 8-level truncation error at b = 3 is ~2e-5 for f_{0,0'}.
    EXPECT_NEAR(*t0.find(0, 0, 3.0), std::exp(-4.5), 1e-4);

    std::vector<FcfTable> by_initial;
    for (int n = 0; n < 4; ++n) by_initial.push_back(fcf_via_tomography(plan, n));
    for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
            for (int k = 0; k <= 11; ++k) {
                const double b = plan.displacement(k);
                EXPECT_NEAR(*by_initial[static_cast<std::size_t>(n)].find(m, n, b),
                            *by_initial[static_cast<std::size_t>(m)].find(n, m, b), 1e-9);
            }
        }
    }
    EXPECT_THROW(fcf_via_tomography(plan, 4), std::out_of_range);
    EXPECT_THROW(fcf_via_tomography(TranslationPlan(3.0, 11, FockDimension(4)), 0), std::invalid_argument);
}

TEST(tomography, constraint_csv_dump) {
    std::ostringstream out;
    write_constraint_csv(out, build_constraint_matrix());
    const std::string s = out.str();
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 14);
    EXPECT_NE(s.find("12,trace,1,1,1,1,1,1,1,1"), std::string::npos);
    EXPECT_NE(s.find("spin3:0-1,1,-1,0,0,0,0,0,0"), std::string::npos);
}
