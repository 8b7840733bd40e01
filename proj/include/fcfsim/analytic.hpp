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

namespace fcfsim {

/// f_{m,n'}(b): ground-potential level m, displaced-potential level n.
struct FcfQuery {
    int m;
    int n;
    double b;
};

/// Tabulated closed forms for m, n <= 3 (either order; the table is symmetric).
/// Throws std::out_of_range outside that block.
double fcf_closed_form(const FcfQuery& q);

/// Displaced-oscillator overlap |<m|D(b/sqrt 2)|n>|^2 through the associated
/// Laguerre form. Valid for 0 <= m, n <= 170.
double fcf_oracle(const FcfQuery& q);

/// Sum of f_{0,j'}(b) over j = 0..3 in the untruncated oscillator.
double four_level_norm(double b);

/// Generalized Laguerre polynomial L_n^{(alpha)}(x) by three-term recurrence.
double associated_laguerre(int n, double alpha, double x);

/// log(n!) exactly tabulated up to 20, lgamma beyond.
double log_factorial(int n);

}  // namespace fcfsim
