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

#include <fcfsim/experiment.hpp>

#include <fcfsim/analytic.hpp>
#include <fcfsim/moussa.hpp>
#include <fcfsim/tomography.hpp>
#include <fcfsim/translation.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace fcfsim {

namespace {

constexpr double kPipelineTol = 1e-9;
constexpr double kTurningTol = 1e-12;
constexpr int kReportedLevels = 4;

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double to_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size() || !std::isfinite(v)) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::logic_error&) {
        throw ConfigError("setting '" + key + "': not a finite number: '" + value + "'");
    }
}

long long to_integer(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::logic_error&) {
        throw ConfigError("setting '" + key + "': not an integer: '" + value + "'");
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError("setting '" + key + "': expected true/false, got '" + value + "'");
}

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

void write_provenance(std::ostream& out, const ExperimentConfig& cfg) {
    if (!cfg.deterministic) {
        out << "# generated=" << timestamp_utc() << '\n';
    }
}

std::string join_reals(const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ';';
        s += format_real(values[i]);
    }
    return s;
}

double reference_fcf(int m, int n, double b) {
    return (m <= 3 && n <= 3) ? fcf_closed_form({m, n, b}) : fcf_oracle({m, n, b});
}

// Reads the data lines of a headered CSV, checking the header.
std::vector<std::vector<std::string>> read_table(std::istream& in, const std::string& header) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != header) {
                throw std::runtime_error("line " + std::to_string(line_no) + ": expected header '" + header + "'");
            }
            header_seen = true;
            continue;
        }
        auto fields = split_csv_line(line);
        if (fields.size() != split_csv_line(header).size()) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": wrong field count");
        }
        rows.push_back(std::move(fields));
    }
    if (!header_seen) {
        throw std::runtime_error("missing header '" + header + "'");
    }
    return rows;
}

double field_real(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::runtime_error("bad number '" + s + "'");
    return v;
}

int field_int(const std::string& s) {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::runtime_error("bad integer '" + s + "'");
    return v;
}

}  // namespace

std::string_view to_string(NormalizationMode mode) {
    return mode == NormalizationMode::unit ? "unit" : "fourLevel";
}

ExperimentConfig default_config(FcfMethod method) {
    ExperimentConfig cfg;
    cfg.method = method;
    if (method == FcfMethod::moussa) {
        cfg.b0 = 4.0;
        cfg.steps = 11;
        cfg.basis_dim = 4;
    }
    cfg.eta_grid = parse_real_grid("0:1:0.1");
    return cfg;
}

std::vector<double> parse_real_grid(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) {
        throw ConfigError("empty grid");
    }
    std::vector<double> grid;
    if (t.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(t);
        std::string part;
        while (std::getline(ss, part, ':')) parts.push_back(trim(part));
        if (parts.size() != 3) {
            throw ConfigError("range grid must be start:stop:step, got '" + t + "'");
        }
        const double start = to_real("grid", parts[0]);
        const double stop = to_real("grid", parts[1]);
        const double step = to_real("grid", parts[2]);
        if (!(step > 0) || stop < start) {
            throw ConfigError("range grid needs step > 0 and stop >= start");
        }
        const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
        for (long long i = 0; i <= count; ++i) {
            grid.push_back(start + static_cast<double>(i) * step);
        }
        return grid;
    }
    for (const auto& field : split_csv_line(t)) {
        const std::string f = trim(field);
        if (f.empty()) {
            throw ConfigError("empty entry in grid '" + t + "'");
        }
        grid.push_back(to_real("grid", f));
    }
    return grid;
}

Settings parse_settings(std::istream& in) {
    Settings settings;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        const std::string body = trim(line.substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(body.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        }
        settings[key] = trim(body.substr(eq + 1));
    }
    return settings;
}

Settings read_settings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    return parse_settings(in);
}

ExperimentConfig resolve_config(const Settings& settings) {
    FcfMethod method = FcfMethod::tomography;
    if (const auto it = settings.find("method"); it != settings.end()) {
        const auto parsed = parse_method(it->second);
        if (!parsed) {
            throw ConfigError("unknown method '" + it->second + "'");
        }
        method = *parsed;
    }
    ExperimentConfig cfg = default_config(method);

    for (const auto& [key, value] : settings) {
        if (key == "method") {
            continue;
        } else if (key == "b0") {
            cfg.b0 = to_real(key, value);
            if (cfg.b0 < 0) throw ConfigError("b0 must be >= 0");
        } else if (key == "steps") {
            const auto v = to_integer(key, value);
            if (v < 1 || v > 100000) throw ConfigError("steps must be in [1, 100000]");
            cfg.steps = static_cast<int>(v);
        } else if (key == "dim") {
            const auto v = to_integer(key, value);
            if (v < 2 || v > 512) throw ConfigError("dim must be in [2, 512]");
            cfg.basis_dim = static_cast<int>(v);
        } else if (key == "theta") {
            cfg.theta = to_real(key, value);
        } else if (key == "norm") {
            if (value == "unit") {
                cfg.normalization = NormalizationMode::unit;
            } else if (value == "fourLevel") {
                cfg.normalization = NormalizationMode::four_level;
            } else {
                throw ConfigError("norm must be 'unit' or 'fourLevel', got '" + value + "'");
            }
        } else if (key == "eta") {
            cfg.noise.eta = to_real(key, value);
            if (cfg.noise.eta < 0) throw ConfigError("eta must be >= 0");
        } else if (key == "eta_grid") {
            cfg.eta_grid = parse_real_grid(value);
            for (double e : cfg.eta_grid) {
                if (e < 0) throw ConfigError("eta grid entries must be >= 0");
            }
        } else if (key == "trials") {
            const auto v = to_integer(key, value);
            if (v < 1 || v > 10000000) throw ConfigError("trials must be >= 1");
            cfg.noise.trials = static_cast<int>(v);
        } else if (key == "seed") {
            const auto v = to_integer(key, value);
            if (v < 0) throw ConfigError("seed must be >= 0");
            cfg.noise.seed = static_cast<std::uint64_t>(v);
        } else if (key == "dims") {
            cfg.truncation_dims.clear();
            for (const auto& f : split_csv_line(value)) {
                const auto v = to_integer(key, trim(f));
                if (v < 2 || v > 512) throw ConfigError("basis dimensions must be in [2, 512]");
                cfg.truncation_dims.push_back(static_cast<int>(v));
            }
        } else if (key == "out") {
            cfg.output_path = value;
        } else if (key == "deterministic") {
            cfg.deterministic = to_bool(key, value);
        } else {
            throw ConfigError("unknown setting '" + key + "'");
        }
    }
    return cfg;
}

bool beyond_classical_turning_point(int m, int n, double b) {
    if (m == 0 && n == 0) {
        return b >= 2.0 - kTurningTol;
    }
    if (m == 0 && n == 1) {
        return b >= 1.0 + std::sqrt(3.0) - kTurningTol;
    }
    return false;
}

// --- sweep -----------------------------------------------------------------

SweepResult run_sweep(const ExperimentConfig& cfg) {
    SweepResult result;
    result.config = cfg;
    const bool noisy = cfg.noise.eta > 0;
    FcfTable table;

    switch (cfg.method) {
        case FcfMethod::analytic:
        case FcfMethod::oracle: {
            const TranslationPlan plan(cfg.b0, cfg.steps, FockDimension(2));
            for (int m = 0; m < kReportedLevels; ++m) {
                for (int n = m; n < kReportedLevels; ++n) {
                    for (int k = 0; k <= cfg.steps; ++k) {
                        const double b = plan.displacement(k);
                        const double v = cfg.method == FcfMethod::analytic ? fcf_closed_form({m, n, b})
                                                                           : fcf_oracle({m, n, b});
                        table.add(m, n, b, v, cfg.method);
                    }
                }
            }
            break;
        }
        case FcfMethod::direct: {
            if (cfg.basis_dim < kReportedLevels) {
                throw ConfigError("direct sweep needs dim >= 4");
            }
            const TranslationPlan plan(cfg.b0, cfg.steps, FockDimension(cfg.basis_dim));
            const auto ladder = translation_ladder(plan);
            for (std::size_t k = 0; k < ladder.size(); ++k) {
                if (!is_unitary(ladder[k])) {
                    result.issues.push_back({"non_unitary_translation", "translation at k=" + std::to_string(k) +
                                                                            " fails the unitarity check"});
                }
            }
            for (int m = 0; m < kReportedLevels; ++m) {
                for (int n = 0; n < kReportedLevels; ++n) {
                    for (int k = 0; k <= cfg.steps; ++k) {
                        table.add(m, n, plan.displacement(k), truncated_fcf(ladder[static_cast<std::size_t>(k)], m, n),
                                  FcfMethod::direct);
                    }
                }
            }
            break;
        }
        case FcfMethod::tomography: {
            if (cfg.basis_dim != kTomographyLevels) {
                throw ConfigError("tomography runs on the 3-qubit register: dim must be 8");
            }
            const TranslationPlan plan(cfg.b0, cfg.steps, FockDimension(kTomographyLevels));
            const ConstraintMatrix constraints = build_constraint_matrix();
            const DiagonalReconstructor reconstructor(constraints);
            const auto ladder = translation_ladder(plan);
            for (int n = 0; n < kReportedLevels; ++n) {
                const auto records = tomography_intensities(plan, n, constraints);
                for (int k = 0; k <= cfg.steps; ++k) {
                    IntensityVector r = records[static_cast<std::size_t>(k)];
                    if (noisy) {
                        const auto perturbed = inject_noise({r.data(), static_cast<std::size_t>(r.size())}, cfg.noise,
                                                            static_cast<std::uint64_t>(n * (cfg.steps + 1) + k));
                        r = IntensityVector::Map(perturbed.data());
                    }
                    const PopulationVector p = reconstructor.solve(r);
                    if (!noisy) {
                        const double res = reconstructor.residual(r, p);
                        if (res >= 1e-10) {
                            result.issues.push_back({"tomography_residual", "least-squares residual " +
                                                                                format_real(res) + " at n=" +
                                                                                std::to_string(n) + ", k=" +
                                                                                std::to_string(k)});
                        }
                    }
                    for (int m = 0; m < kReportedLevels; ++m) {
                        const double direct = truncated_fcf(ladder[static_cast<std::size_t>(k)], m, n);
                        if (!noisy && std::abs(p(m) - direct) >= kPipelineTol) {
                            result.issues.push_back({"tomography_mismatch",
                                                     "recovered f_{" + std::to_string(m) + "," + std::to_string(n) +
                                                         "'} differs from the truncated diagonal"});
                        }
                        table.add(m, n, plan.displacement(k), p(m), FcfMethod::tomography);
                    }
                }
            }
            break;
        }
        case FcfMethod::moussa: {
            if (cfg.basis_dim != 4) {
                throw ConfigError("Moussa runs use a 2-qubit system: dim must be 4");
            }
            const TranslationPlan plan(cfg.b0, cfg.steps, FockDimension(4));
            const auto ladder = translation_ladder(plan);
            for (int k = 0; k <= cfg.steps; ++k) {
                const double b = plan.displacement(k);
                const auto readouts = moussa_pops_readouts(ladder[static_cast<std::size_t>(k)], cfg.theta);
                std::vector<double> sx(4);
                for (std::size_t i = 0; i < 4; ++i) sx[i] = readouts[i].sx;
                if (noisy) {
                    sx = inject_noise(sx, cfg.noise, static_cast<std::uint64_t>(k));
                }
                std::array<double, 4> deltas{};
                for (std::size_t i = 0; i < 4; ++i) {
                    deltas[i] = projection_from_readout(sx[i], 0.0, cfg.theta);
                }
                const double norm = cfg.normalization == NormalizationMode::unit ? 1.0 : four_level_norm(b);
                const MoussaFcfRun run = solve_moussa_system(deltas, norm);
                if (!noisy && run.residual >= kPipelineTol) {
                    result.issues.push_back({"moussa_residual", "least-squares residual " + format_real(run.residual) +
                                                                    " at k=" + std::to_string(k)});
                }
                for (int n = 0; n < kReportedLevels; ++n) {
                    table.add(0, n, b, run.solved[static_cast<std::size_t>(n)], FcfMethod::moussa);
                }
            }
            break;
        }
    }

    // A four-level normalization only shifts the solved values by a common offset, which goes negative once the
    // truncated register stops matching the infinite-basis sum; the residual check still guards the solve.
    const bool offset_normalized = cfg.method == FcfMethod::moussa && cfg.normalization == NormalizationMode::four_level;
    if (!noisy && !offset_normalized) {
        for (const auto& e : table.out_of_range()) {
            result.issues.push_back({"fcf_out_of_range", "f_{" + std::to_string(e.m) + "," + std::to_string(e.n) +
                                                             "'}(" + format_real(e.b) + ") = " + format_real(e.value)});
        }
    }

    table.sort();
    for (const auto& e : table.entries()) {
        result.rows.push_back({e, reference_fcf(e.m, e.n, e.b), beyond_classical_turning_point(e.m, e.n, e.b)});
    }
    return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    const auto& cfg = result.config;
    out << "# fcfsim sweep method=" << to_string(cfg.method) << " b0=" << format_real(cfg.b0)
        << " steps=" << cfg.steps << " dim=" << cfg.basis_dim << " theta=" << format_real(cfg.theta)
        << " norm=" << to_string(cfg.normalization) << " eta=" << format_real(cfg.noise.eta)
        << " seed=" << cfg.noise.seed << '\n';
    write_provenance(out, cfg);
    out << "m,n,b,value,method,analytic,beyond_turning_point\n";
    for (const auto& row : result.rows) {
        const auto& e = row.entry;
        out << e.m << ',' << e.n << ',' << format_real(e.b) << ',' << format_real(e.value) << ','
            << to_string(e.method) << ',' << format_real(row.analytic) << ',' << (row.beyond_turning_point ? 1 : 0)
            << '\n';
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
    std::vector<SweepRow> rows;
    for (const auto& f : read_table(in, "m,n,b,value,method,analytic,beyond_turning_point")) {
        const auto method = parse_method(f[4]);
        if (!method) throw std::runtime_error("unknown method '" + f[4] + "'");
        SweepRow row;
        row.entry = {field_int(f[0]), field_int(f[1]), field_real(f[2]), field_real(f[3]), *method};
        row.analytic = field_real(f[5]);
        row.beyond_turning_point = field_int(f[6]) != 0;
        rows.push_back(row);
    }
    return rows;
}

// --- truncation ------------------------------------------------------------

TruncationResult run_truncation(const ExperimentConfig& cfg) {
    if (cfg.truncation_dims.empty()) {
        throw ConfigError("no basis dimensions given");
    }
    TruncationResult result;
    result.config = cfg;

    std::vector<int> dims = cfg.truncation_dims;
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());

    for (int d : dims) {
        const TranslationPlan plan(cfg.b0, cfg.steps, FockDimension(d));
        const auto ladder = translation_ladder(plan);
        const int levels = std::min(kReportedLevels, d);
        double worst = 0;
        for (int m = 0; m < levels; ++m) {
            for (int n = 0; n < levels; ++n) {
                for (int k = 0; k <= cfg.steps; ++k) {
                    const double b = plan.displacement(k);
                    const double truncated = truncated_fcf(ladder[static_cast<std::size_t>(k)], m, n);
                    const double analytic = fcf_closed_form({m, n, b});
                    const double deviation = std::abs(truncated - analytic);
                    worst = std::max(worst, deviation);
                    result.rows.push_back({m, n, b, d, truncated, analytic, deviation});
                }
            }
        }
        result.max_deviation.emplace_back(d, worst);
    }

    for (std::size_t i = 1; i < result.max_deviation.size(); ++i) {
        if (result.max_deviation[i].second > result.max_deviation[i - 1].second) {
            result.issues.push_back({"truncation_not_converging",
                                     "max deviation grows from d=" + std::to_string(result.max_deviation[i - 1].first) +
                                         " to d=" + std::to_string(result.max_deviation[i].first)});
        }
    }

    std::stable_sort(result.rows.begin(), result.rows.end(), [](const TruncationRow& x, const TruncationRow& y) {
        if (x.m != y.m) return x.m < y.m;
        if (x.n != y.n) return x.n < y.n;
        if (x.b != y.b) return x.b < y.b;
        return x.dim < y.dim;
    });
    return result;
}

void write_truncation_csv(std::ostream& out, const TruncationResult& result) {
    const auto& cfg = result.config;
    out << "# fcfsim truncation b0=" << format_real(cfg.b0) << " steps=" << cfg.steps << " dims=";
    for (std::size_t i = 0; i < result.max_deviation.size(); ++i) {
        out << (i ? ";" : "") << result.max_deviation[i].first;
    }
    out << '\n';
    for (const auto& [d, worst] : result.max_deviation) {
        out << "# max_deviation dim=" << d << " value=" << format_real(worst) << '\n';
    }
    write_provenance(out, cfg);
    out << "m,n,b,dim,truncated,analytic,deviation\n";
    for (const auto& r : result.rows) {
        out << r.m << ',' << r.n << ',' << format_real(r.b) << ',' << r.dim << ',' << format_real(r.truncated) << ','
            << format_real(r.analytic) << ',' << format_real(r.deviation) << '\n';
    }
}

std::vector<TruncationRow> read_truncation_csv(std::istream& in) {
    std::vector<TruncationRow> rows;
    for (const auto& f : read_table(in, "m,n,b,dim,truncated,analytic,deviation")) {
        rows.push_back({field_int(f[0]), field_int(f[1]), field_real(f[2]), field_int(f[3]), field_real(f[4]),
                        field_real(f[5]), field_real(f[6])});
    }
    return rows;
}

// --- noise -----------------------------------------------------------------

NoiseStudyResult run_noise_study(const ExperimentConfig& cfg) {
    if (cfg.eta_grid.empty()) {
        throw ConfigError("empty noise amplitude grid");
    }
    NoiseStudyResult result;
    result.config = cfg;

    RobustnessSetup setup;
    setup.theta = cfg.theta;
    setup.four_level_normalization = cfg.normalization == NormalizationMode::four_level;
    result.curve = robustness_curve(cfg.eta_grid, cfg.noise, setup);

    for (const auto& p : result.curve.points) {
        if (p.eta == 0 && (p.sigma_tomography >= 1e-9 || p.sigma_moussa >= 1e-9)) {
            result.issues.push_back({"noiseless_spread", "nonzero spread at eta = 0"});
        }
        if (!std::isfinite(p.sigma_tomography) || !std::isfinite(p.sigma_moussa)) {
            result.issues.push_back({"non_finite_sigma", "non-finite spread at eta = " + format_real(p.eta)});
        }
    }
    return result;
}

void write_noise_csv(std::ostream& out, const NoiseStudyResult& result) {
    const auto& cfg = result.config;
    out << "# fcfsim noise seed=" << cfg.noise.seed << " trials=" << cfg.noise.trials
        << " eta_grid=" << join_reals(cfg.eta_grid) << '\n';
    out << "# tomography b0=3 steps=11 dim=8 levels=0..3; moussa b0=4 steps=11 dim=4 theta="
        << format_real(cfg.theta) << " norm=" << to_string(cfg.normalization) << '\n';
    write_provenance(out, cfg);
    out << "eta,sigma_tomography,sigma_moussa\n";
    for (const auto& p : result.curve.points) {
        out << format_real(p.eta) << ',' << format_real(p.sigma_tomography) << ',' << format_real(p.sigma_moussa)
            << '\n';
    }
}

RobustnessCurve read_noise_csv(std::istream& in) {
    RobustnessCurve curve;
    for (const auto& f : read_table(in, "eta,sigma_tomography,sigma_moussa")) {
        curve.points.push_back({field_real(f[0]), field_real(f[1]), field_real(f[2])});
    }
    return curve;
}

}  // namespace fcfsim
