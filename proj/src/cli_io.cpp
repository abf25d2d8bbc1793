// Copyright 2026-present the vpid project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vpid/cli_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "vpid/errors.hpp"

namespace vpid::cli {

using nlohmann::json;

int exit_code(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ConfigError:
        case ErrorCode::InvalidParameter:
        case ErrorCode::InvalidProgram:
        case ErrorCode::InvalidTimeGrid:
        case ErrorCode::OutOfRange:
        case ErrorCode::UnsupportedModel:
        case ErrorCode::ZeroReferenceParameter:
            return kConfigError;
        case ErrorCode::DataError:
        case ErrorCode::InsufficientData:
        case ErrorCode::DegenerateData:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::IoError:
            return kDataError;
        case ErrorCode::MaxIterationsExceeded:
            return kNonConvergence;
        case ErrorCode::NonPositiveDeterminant:
        case ErrorCode::SingularTensor:
        case ErrorCode::NonPositiveDefinite:
        case ErrorCode::StepFailure:
        case ErrorCode::FactorizationFailure:
        case ErrorCode::NonFiniteResidual:
        case ErrorCode::SingularNormalMatrix:
        case ErrorCode::NonFiniteJacobian:
            return kNumericalFailure;
    }
    return kNumericalFailure;
}

// -- configuration ----------------------------------------------------------

namespace {

[[noreturn]] void config_fail(const std::string& path, const std::string& what) {
    fail(ErrorCode::ConfigError, path + ": " + what);
}

/// Walks one JSON object, rejecting keys nobody asked for.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) config_fail(path_, "expected an object");
    }
    ~ObjectReader() noexcept(false) {
        if (std::uncaught_exceptions() > 0) return;
        for (const auto& [key, _] : j_.items()) {
            if (!seen_.count(key)) config_fail(child(key), "unknown key");
        }
    }
    ObjectReader(const ObjectReader&) = delete;
    ObjectReader& operator=(const ObjectReader&) = delete;

    std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json* find(const std::string& key) {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void number(const std::string& key, double& out) {
        if (const json* v = find(key)) {
            if (!v->is_number()) config_fail(child(key), "expected a number");
            out = v->get<double>();
            if (!std::isfinite(out)) config_fail(child(key), "must be finite");
        }
    }
    template <class Int>
    void integer(const std::string& key, Int& out) {
        if (const json* v = find(key)) {
            if (!v->is_number_integer()) config_fail(child(key), "expected an integer");
            if constexpr (std::is_unsigned_v<Int>) {
                if (v->is_number_unsigned()) {
                    out = v->get<Int>();
                } else {
                    config_fail(child(key), "must be non-negative");
                }
            } else {
                out = v->get<Int>();
            }
        }
    }
    void string(const std::string& key, std::string& out) {
        if (const json* v = find(key)) {
            if (!v->is_string()) config_fail(child(key), "expected a string");
            out = v->get<std::string>();
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void read_hardening(const json& j, const std::string& path, HardeningParams& h) {
    ObjectReader r(j, path);
    auto a = h.to_array();
    for (std::size_t i = 0; i < a.size(); ++i) r.number(std::string(HardeningParams::kNames[i]), a[i]);
    h = HardeningParams::from_array(a);
}

void read_material(const json& j, MaterialParams& m) {
    ObjectReader r(j, "material");
    r.number("k", m.k);
    r.number("mu", m.mu);
    r.number("eta", m.eta);
    r.number("m", m.m);
    r.number("K", m.K);
    r.number("k0", m.k0);
}

void read_program(const json& j, ProgramConfig& p) {
    ObjectReader r(j, "program");
    std::string preset = p.preset;
    r.string("preset", preset);
    if (preset != p.preset) p = ProgramConfig::from_preset(preset);
    r.number("max_shear", p.max_shear);
    r.integer("points", p.points);
    r.number("duration", p.duration);
    if (const json* v = r.find("reversals")) {
        if (!v->is_array()) config_fail("program.reversals", "expected an array of numbers");
        p.reversals.clear();
        for (const auto& x : *v) {
            if (!x.is_number()) config_fail("program.reversals", "expected an array of numbers");
            p.reversals.push_back(x.get<double>());
        }
    }
}

void read_noise(const json& j, NoiseModel& n) {
    ObjectReader r(j, "noise");
    std::string kind;
    r.string("kind", kind);
    if (kind == "white") {
        n = NoiseModel{};
        n.kind = NoiseModel::Kind::White;
    } else if (kind == "ar" || kind == "autoregressive") {
        n = NoiseModel{};
        n.kind = NoiseModel::Kind::AutoRegressive;
    } else if (kind == "two_source") {
        n = NoiseModel{};
        n.kind = NoiseModel::Kind::TwoSource;
    } else if (!kind.empty()) {
        config_fail("noise.kind", "expected white, ar or two_source");
    }
    r.number("sigma", n.sigma);
    r.number("alpha", n.alpha);
    r.number("sigma1", n.sigma1);
    r.number("sigma2", n.sigma2);
}

WeightingKind read_weighting(const json& v, const std::string& path) {
    if (!v.is_string()) config_fail(path, "expected a weighting name");
    try {
        return parse_weighting_kind(v.get<std::string>());
    } catch (const Error& e) {
        config_fail(path, e.what());
    }
}

}  // namespace

ProgramConfig ProgramConfig::from_preset(std::string_view name) {
    ProgramConfig p;
    if (name == "default") return p;
    if (name == "extended") {
        p.preset = "extended";
        p.max_shear = ExtendedTorsion::kMaxShear;
        p.reversals = ExtendedTorsion::kReversals;
        p.points = ExtendedTorsion::kPoints;
        p.duration = ExtendedTorsion::kDuration;
        return p;
    }
    config_fail("program.preset", "expected default or extended, got '" + std::string(name) + "'");
}

StrainProgram ProgramConfig::build() const { return torsion_program(max_shear, reversals, points, duration).first; }

void RunConfig::validate() const {
    auto wrap = [](const char* path, auto&& check) {
        try {
            check();
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ConfigError) throw;
            config_fail(path, e.what());
        }
    };
    wrap("material", [&] { material.validate(); });
    wrap("truth_hardening", [&] { truth.validate(); });
    wrap("start_hardening", [&] { start.validate(); });
    wrap("program", [&] { (void)program.build(); });
    wrap("noise", [&] { noise.validate(); });
    if (!(weighting_sigma1 > 0.0)) config_fail("weighting_sigma1", "must be positive (Cov must be invertible)");
    if (!(weighting_sigma2 >= 0.0)) config_fail("weighting_sigma2", "must be non-negative");
    if (n_instances < 1) config_fail("n_instances", "must be at least 1");
    if (schemes.empty()) config_fail("schemes", "needs at least one weighting");
    if (histories.empty()) config_fail("histories", "needs at least one history id");
    for (int h : histories) {
        if (h != 1 && h != 2) config_fail("histories", "unknown history id " + std::to_string(h) + " (expected 1 or 2)");
    }
    wrap("metric", [&] { (void)MetricSpec::mechanics(benchmark_history(1), material, metric_grid); });
    if (output_dir.empty()) config_fail("output_dir", "must not be empty");
}

RunConfig parse_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::ConfigError, std::string("config is not valid JSON: ") + e.what());
    }
    RunConfig cfg;
    {
        ObjectReader r(j, "");
        if (const json* v = r.find("material")) read_material(*v, cfg.material);
        if (const json* v = r.find("truth_hardening")) read_hardening(*v, "truth_hardening", cfg.truth);
        if (const json* v = r.find("start_hardening")) read_hardening(*v, "start_hardening", cfg.start);
        if (const json* v = r.find("program")) read_program(*v, cfg.program);
        if (const json* v = r.find("noise")) read_noise(*v, cfg.noise);
        if (const json* v = r.find("weighting")) cfg.weighting = read_weighting(*v, "weighting");
        if (const json* v = r.find("schemes")) {
            if (!v->is_array()) config_fail("schemes", "expected an array of weighting names");
            cfg.schemes.clear();
            for (std::size_t i = 0; i < v->size(); ++i) {
                cfg.schemes.push_back(read_weighting((*v)[i], "schemes[" + std::to_string(i) + "]"));
            }
        }
        r.number("weighting_sigma1", cfg.weighting_sigma1);
        r.number("weighting_sigma2", cfg.weighting_sigma2);
        r.integer("n_instances", cfg.n_instances);
        r.integer("master_seed", cfg.master_seed);
        if (const json* v = r.find("histories")) {
            if (!v->is_array()) config_fail("histories", "expected an array of history ids");
            cfg.histories.clear();
            for (const auto& x : *v) {
                if (!x.is_number_integer()) config_fail("histories", "expected integer history ids");
                cfg.histories.push_back(x.get<int>());
            }
        }
        if (const json* v = r.find("metric")) {
            ObjectReader m(*v, "metric");
            m.integer("steps", cfg.metric_grid.steps);
            m.number("duration", cfg.metric_grid.duration);
            m.integer("substeps", cfg.metric_grid.substeps);
        }
        r.integer("threads", cfg.threads);
        std::string s;
        r.string("output_dir", s);
        if (!s.empty()) cfg.output_dir = s;
        s.clear();
        r.string("data_file", s);
        if (!s.empty()) cfg.data_file = s;
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ConfigError, "cannot open config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    RunConfig cfg = parse_config(text.str());
    // Relative data paths are taken relative to the config file.
    if (!cfg.data_file.empty() && cfg.data_file.is_relative()) cfg.data_file = path.parent_path() / cfg.data_file;
    return cfg;
}

namespace {

template <class T>
T parse_env_integer(const char* name, const std::string& text) {
    T v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        fail(ErrorCode::ConfigError, std::string(name) + ": expected an integer, got '" + text + "'");
    }
    return v;
}

}  // namespace

Overrides env_overrides(const EnvLookup& lookup) {
    Overrides o;
    if (auto v = lookup("VPID_CONFIG")) o.config = *v;
    if (auto v = lookup("VPID_SEED")) o.seed = parse_env_integer<std::uint64_t>("VPID_SEED", *v);
    if (auto v = lookup("VPID_INSTANCES")) o.instances = parse_env_integer<std::size_t>("VPID_INSTANCES", *v);
    if (auto v = lookup("VPID_WEIGHTING")) o.weighting = parse_weighting_kind(*v);
    if (auto v = lookup("VPID_HISTORY")) o.history = parse_env_integer<int>("VPID_HISTORY", *v);
    if (auto v = lookup("VPID_OUT")) o.out = *v;
    if (auto v = lookup("VPID_DATA")) o.data = *v;
    if (auto v = lookup("VPID_THREADS")) o.threads = parse_env_integer<unsigned>("VPID_THREADS", *v);
    if (auto v = lookup("VPID_WITH_NOISE")) {
        if (*v == "1" || *v == "true") {
            o.with_noise = true;
        } else if (*v == "0" || *v == "false") {
            o.with_noise = false;
        } else {
            fail(ErrorCode::ConfigError, "VPID_WITH_NOISE: expected 0, 1, true or false");
        }
    }
    return o;
}

Overrides merge(const Overrides& lo, const Overrides& hi) {
    Overrides o = lo;
    if (hi.config) o.config = hi.config;
    if (hi.seed) o.seed = hi.seed;
    if (hi.instances) o.instances = hi.instances;
    if (hi.weighting) o.weighting = hi.weighting;
    if (hi.history) o.history = hi.history;
    if (hi.out) o.out = hi.out;
    if (hi.data) o.data = hi.data;
    if (hi.threads) o.threads = hi.threads;
    if (hi.with_noise) o.with_noise = hi.with_noise;
    return o;
}

void apply(const Overrides& o, RunConfig& cfg) {
    if (o.seed) cfg.master_seed = *o.seed;
    if (o.instances) cfg.n_instances = *o.instances;
    if (o.weighting) {
        cfg.weighting = *o.weighting;
        cfg.schemes = {*o.weighting};
    }
    if (o.history) cfg.histories = {*o.history};
    if (o.out) cfg.output_dir = *o.out;
    if (o.data) cfg.data_file = *o.data;
    if (o.threads) cfg.threads = *o.threads;
    cfg.validate();
}

// -- CSV ----------------------------------------------------------------------

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) fail(ErrorCode::IoError, "cannot format number");
    return std::string(buf, ptr);
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
    return out;
}

void close_checked(std::ofstream& out, const std::filesystem::path& path) {
    out.close();
    if (!out) fail(ErrorCode::IoError, "failed writing " + path.string());
}

double parse_field(std::string_view text, std::size_t line) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        fail(ErrorCode::DataError, "line " + std::to_string(line) + ": cannot parse '" + std::string(text) + "'");
    }
    if (!std::isfinite(v)) fail(ErrorCode::DataError, "line " + std::to_string(line) + ": non-finite value");
    return v;
}

}  // namespace

void write_data_csv(const std::filesystem::path& path, std::span<const double> strain,
                    std::span<const double> stress) {
    if (strain.size() != stress.size()) fail(ErrorCode::DimensionMismatch, "strain and stress columns differ");
    auto out = open_for_write(path);
    out << "strain,stress\n";
    for (std::size_t i = 0; i < strain.size(); ++i) {
        out << format_double(strain[i]) << ',' << format_double(stress[i]) << '\n';
    }
    close_checked(out, path);
}

ExperimentData read_data_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open data file " + path.string());
    std::string line;
    if (!std::getline(in, line)) fail(ErrorCode::DataError, path.string() + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line != "strain,stress") fail(ErrorCode::DataError, path.string() + ": header must be 'strain,stress'");

    ExperimentData data;
    data.provenance = ExperimentData::Provenance::File;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            fail(ErrorCode::DataError, path.string() + ": line " + std::to_string(lineno) + " needs two fields");
        }
        data.abscissae.push_back(parse_field(std::string_view(line).substr(0, comma), lineno));
        data.observations.push_back(parse_field(std::string_view(line).substr(comma + 1), lineno));
    }
    if (data.size() < 2) fail(ErrorCode::DataError, path.string() + ": needs at least two observations");
    return data;
}

HardeningParams read_params_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "cannot open parameter file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    json j;
    try {
        j = json::parse(text.str());
    } catch (const json::parse_error& e) {
        fail(ErrorCode::ConfigError, path.string() + ": not valid JSON: " + e.what());
    }
    HardeningParams p;
    ObjectReader r(j, path.filename().string());
    auto a = p.to_array();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string key(HardeningParams::kNames[i]);
        if (!r.find(key)) config_fail(r.child(key), "missing");
        r.number(key, a[i]);
    }
    return HardeningParams::from_array(a);
}

void write_params_file(const std::filesystem::path& path, const HardeningParams& p) {
    json j = json::object();
    for (std::size_t i = 0; i < HardeningParams::kSize; ++i) j[std::string(HardeningParams::kNames[i])] = p[i];
    auto out = open_for_write(path);
    out << j.dump(2) << '\n';
    close_checked(out, path);
}

void write_cloud_csv(const std::filesystem::path& path, const CloudReport& report) {
    auto out = open_for_write(path);
    out << "member";
    for (auto name : HardeningParams::kNames) out << ',' << name;
    out << ",admissible";
    for (const auto& h : report.size_per_history) out << ",dist_h" << h.id;
    out << '\n';
    for (std::size_t j = 0; j < report.cloud.size(); ++j) {
        out << j;
        for (std::size_t k = 0; k < HardeningParams::kSize; ++k) out << ',' << format_double(report.cloud[j][k]);
        out << ',' << (report.admissible[j] ? 1 : 0);
        for (const auto& h : report.size_per_history) out << ',' << format_double(h.distances[j]);
        out << '\n';
    }
    close_checked(out, path);
}

}  // namespace vpid::cli
