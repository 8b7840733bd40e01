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

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fcfsim {

enum class FcfMethod { analytic, oracle, direct, tomography, moussa };

std::string_view to_string(FcfMethod method);
std::optional<FcfMethod> parse_method(std::string_view text);

struct FcfEntry {
    int m = 0;
    int n = 0;
    double b = 0;
    double value = 0;
    FcfMethod method = FcfMethod::analytic;

    friend bool operator==(const FcfEntry&, const FcfEntry&) = default;
};

/// Tolerance on the [0, 1] range of a noiseless FCF value.
inline constexpr double kFcfRangeTol = 1e-9;

class FcfTable {
public:
    void add(FcfEntry entry) { entries_.push_back(entry); }
    void add(int m, int n, double b, double value, FcfMethod method) { entries_.push_back({m, n, b, value, method}); }

    const std::vector<FcfEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    /// Entries whose value leaves [-tol, 1 + tol].
    std::vector<FcfEntry> out_of_range(double tol = kFcfRangeTol) const;

    /// Stable sort by (m, n, b).
    void sort();

    /// Value for (m, n) at the displacement closest to b, if within 1e-12.
    std::optional<double> find(int m, int n, double b) const;

private:
    std::vector<FcfEntry> entries_;
};

/// Shortest representation used for every number the toolkit writes: 12 significant digits.
std::string format_real(double value);

/// CSV with header `m,n,b,value,method`.
void write_csv(std::ostream& out, const FcfTable& table);

/// Reads what write_csv produces. Lines starting with '#' are skipped, extra
/// trailing columns are ignored. Throws std::runtime_error on malformed input.
FcfTable read_csv(std::istream& in);

/// Split one CSV line on commas (no quoting; none of our fields need it).
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace fcfsim
