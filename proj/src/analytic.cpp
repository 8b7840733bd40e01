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

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace fcfsim {

namespace {

constexpr int kMaxOracleLevel = 170;

void check_query(const FcfQuery& q) {
    if (q.m < 0 || q.n < 0) {
        throw std::out_of_range("FCF level indices must be non-negative");
    }
    if (!std::isfinite(q.b)) {
        throw std::invalid_argument("FCF displacement must be finite");
    }
}

}  // namespace

double fcf_closed_form(const FcfQuery& q) {
    check_query(q);
    if (q.m > 3 || q.n > 3) {
        throw std::out_of_range("closed forms only cover levels 0..3, got (" + std::to_string(q.m) + "," +
                                std::to_string(q.n) + ")");
    }
    const auto [lo, hi] = std::minmax(q.m, q.n);
    const double b = q.b;
    const double b2 = b * b;
    const double b4 = b2 * b2;
    const double b6 = b4 * b2;
    const double envelope = std::exp(-b2 / 2);
    auto sq = [](double v) { return v * v; };

    double poly = 0;
    switch (lo * 4 + hi) {
        case 0: poly = 1; break;                                               // f_{0,0'}
        case 1: poly = b2 / 2; break;                                          // f_{0,1'}
        case 2: poly = b4 / 8; break;                                          // f_{0,2'}
        case 3: poly = b6 / 48; break;                                         // f_{0,3'}
        case 5: poly = sq(b2 - 2) / 4; break;                                  // f_{1,1'}
        case 6: poly = sq(b2 * b - 4 * b) / 16; break;                         // f_{1,2'}
        case 7: poly = sq(b4 - 6 * b2) / 96; break;                            // f_{1,3'}
        case 10: poly = sq(b4 - 8 * b2 + 8) / 64; break;                       // f_{2,2'}
        case 11: poly = sq(b4 * b - 12 * b2 * b + 24 * b) / 384; break;        // f_{2,3'}
        case 15: poly = sq(b6 - 18 * b4 + 72 * b2 - 48) / 2304; break;         // f_{3,3'}
        default: throw std::logic_error("unreachable closed-form index");
    }
    return envelope * poly;
}

double associated_laguerre(int n, double alpha, double x) {
    if (n < 0) {
        throw std::out_of_range("Laguerre degree must be non-negative");
    }
    if (n == 0) {
        return 1.0;
    }
    double prev = 1.0;
    double curr = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2 * k + 1 + alpha - x) * curr - (k + alpha) * prev) / (k + 1);
        prev = curr;
        curr = next;
    }
    return curr;
}

double log_factorial(int n) {
    static constexpr std::array<double, 21> kFactorials = [] {
        std::array<double, 21> f{};
        f[0] = 1.0;
        for (int i = 1; i <= 20; ++i) {
            f[i] = f[i - 1] * i;
        }
        return f;
    }();
    if (n < 0) {
        throw std::out_of_range("factorial of a negative number");
    }
    if (n <= 20) {
        return std::log(kFactorials[static_cast<std::size_t>(n)]);
    }
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double fcf_oracle(const FcfQuery& q) {
    check_query(q);
    if (q.m > kMaxOracleLevel || q.n > kMaxOracleLevel) {
        throw std::out_of_range("oracle level index exceeds " + std::to_string(kMaxOracleLevel));
    }
    const auto [lo, hi] = std::minmax(q.m, q.n);
    const int gap = hi - lo;
    const double x = q.b * q.b / 2;  // |alpha|^2 with alpha = b / sqrt(2)

    if (x == 0.0) {
        return gap == 0 ? 1.0 : 0.0;
    }
    const double laguerre = associated_laguerre(lo, gap, x);
    if (laguerre == 0.0) {
        return 0.0;
    }
    const double log_value = -x + gap * std::log(x) + log_factorial(lo) - log_factorial(hi) +
                             2.0 * std::log(std::abs(laguerre));
    return std::exp(log_value);
}

double four_level_norm(double b) {
    if (!std::isfinite(b)) {
        throw std::invalid_argument("displacement must be finite");
    }
    const double b2 = b * b;
    return (1 + b2 / 2 + b2 * b2 / 8 + b2 * b2 * b2 / 48) * std::exp(-b2 / 2);
}

}  // namespace fcfsim
