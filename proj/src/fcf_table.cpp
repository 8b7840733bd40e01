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

#include <fcfsim/fcf_table.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace fcfsim {

namespace {

constexpr std::array<std::pair<FcfMethod, std::string_view>, 5> kMethodNames{{
    {FcfMethod::analytic, "analytic"},
    {FcfMethod::oracle, "oracle"},
    {FcfMethod::direct, "direct"},
    {FcfMethod::tomography, "tomography"},
    {FcfMethod::moussa, "moussa"},
}};

int parse_int(const std::string& field, std::size_t line_no) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": bad integer '" + field + "'");
    }
    return value;
}

double parse_real(const std::string& field, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double value = std::stod(field, &used);
        if (used != field.size()) {
            throw std::invalid_argument(field);
        }
        return value;
    } catch (const std::logic_error&) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": bad number '" + field + "'");
    }
}

}  // namespace

std::string_view to_string(FcfMethod method) {
    for (const auto& [m, name] : kMethodNames) {
        if (m == method) {
            return name;
        }
    }
    return "unknown";
}

std::optional<FcfMethod> parse_method(std::string_view text) {
    for (const auto& [m, name] : kMethodNames) {
        if (name == text) {
            return m;
        }
    }
    return std::nullopt;
}

std::vector<FcfEntry> FcfTable::out_of_range(double tol) const {
    std::vector<FcfEntry> bad;
    for (const auto& e : entries_) {
        if (!(e.value >= -tol && e.value <= 1 + tol)) {
            bad.push_back(e);
        }
    }
    return bad;
}

void FcfTable::sort() {
    std::stable_sort(entries_.begin(), entries_.end(), [](const FcfEntry& x, const FcfEntry& y) {
        if (x.m != y.m) return x.m < y.m;
        if (x.n != y.n) return x.n < y.n;
        return x.b < y.b;
    });
}

std::optional<double> FcfTable::find(int m, int n, double b) const {
    for (const auto& e : entries_) {
        if (e.m == m && e.n == n && std::abs(e.b - b) < 1e-12) {
            return e.value;
        }
    }
    return std::nullopt;
}

std::string format_real(double value) {
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.12g", value);
    return buf.data();
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.emplace_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

void write_csv(std::ostream& out, const FcfTable& table) {
    out << "m,n,b,value,method\n";
    for (const auto& e : table.entries()) {
        out << e.m << ',' << e.n << ',' << format_real(e.b) << ',' << format_real(e.value) << ','
            << to_string(e.method) << '\n';
    }
}

FcfTable read_csv(std::istream& in) {
    FcfTable table;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (!header_seen) {
            if (fields.size() < 5 || fields[0] != "m" || fields[1] != "n" || fields[2] != "b" ||
                fields[3] != "value" || fields[4] != "method") {
                throw std::runtime_error("line " + std::to_string(line_no) + ": expected header m,n,b,value,method");
            }
            header_seen = true;
            continue;
        }
        if (fields.size() < 5) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected at least 5 fields");
        }
        const auto method = parse_method(fields[4]);
        if (!method) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": unknown method '" + fields[4] + "'");
        }
        table.add(parse_int(fields[0], line_no), parse_int(fields[1], line_no), parse_real(fields[2], line_no),
                  parse_real(fields[3], line_no), *method);
    }
    if (!header_seen) {
        throw std::runtime_error("empty FCF table");
    }
    return table;
}

}  // namespace fcfsim
