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

#pragma once

// Batch front end: run configuration, CSV persistence and the four
// commands behind the `vpid` executable. Commands throw vpid::Error;
// exit_code() maps the error to the process exit status.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vpid/constitutive.hpp"
#include "vpid/identification.hpp"
#include "vpid/loading.hpp"
#include "vpid/metric.hpp"
#include "vpid/noise.hpp"
#include "vpid/sensitivity.hpp"
#include "vpid/weighting.hpp"

namespace vpid::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kDataError = 3,
    kNonConvergence = 4,
    kNumericalFailure = 5,
};

int exit_code(ErrorCode code) noexcept;

struct ProgramConfig {
    std::string preset = "default";  // "default" or "extended"
    double max_shear = TorsionDefaults::kMaxShear;
    std::vector<double> reversals = TorsionDefaults::kReversals;
    int points = TorsionDefaults::kPoints;
    double duration = TorsionDefaults::kDuration;  // s

    static ProgramConfig from_preset(std::string_view name);
    StrainProgram build() const;
};

struct RunConfig {
    MaterialParams material;  // hardening entry unused; see truth
    HardeningParams truth = reference_sets::kCovInverse;
    HardeningParams start = reference_sets::kIdentity;  // identification start point
    ProgramConfig program;
    NoiseModel noise = NoiseModel::two_source(10.0, 5.0);
    WeightingKind weighting = WeightingKind::FullInverseCov;
    std::vector<WeightingKind> schemes{WeightingKind::FullInverseCov, WeightingKind::Identity,
                                       WeightingKind::DiagInverseCov};
    double weighting_sigma1 = 10.0;  // MPa, builds Cov for the covariance-based weightings
    double weighting_sigma2 = 5.0;   // MPa
    std::size_t n_instances = 10000;
    std::uint64_t master_seed = 0;
    std::vector<int> histories{1, 2};
    TimeGrid metric_grid;
    unsigned threads = 1;  // 0 = hardware concurrency
    std::filesystem::path output_dir = "out";
    std::filesystem::path data_file;  // identify input; montecarlo fits it when set

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Strict JSON: unknown keys and wrong types are ConfigErrors with a field path.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

/// Values that can come from flags or from VPID_* environment variables.
struct Overrides {
    std::optional<std::filesystem::path> config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> instances;
    std::optional<WeightingKind> weighting;
    std::optional<int> history;
    std::optional<std::filesystem::path> out;
    std::optional<std::filesystem::path> data;
    std::optional<unsigned> threads;
    std::optional<bool> with_noise;
};

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

/// Reads VPID_CONFIG, VPID_SEED, VPID_INSTANCES, VPID_WEIGHTING, VPID_HISTORY,
/// VPID_OUT, VPID_DATA, VPID_THREADS and VPID_WITH_NOISE. Throws ConfigError
/// on unparsable values.
Overrides env_overrides(const EnvLookup& lookup);

/// Fields set in `hi` win over `lo`.
Overrides merge(const Overrides& lo, const Overrides& hi);

/// Applies overrides to `cfg`; --weighting also restricts the Monte Carlo schemes.
void apply(const Overrides& o, RunConfig& cfg);

// -- CSV ------------------------------------------------------------------

/// Shortest text that round-trips the double.
std::string format_double(double v);

void write_data_csv(const std::filesystem::path& path, std::span<const double> strain,
                    std::span<const double> stress);

/// Header `strain,stress`. Throws DataError for malformed content or fewer
/// than two rows, IoError when the file cannot be opened.
ExperimentData read_data_csv(const std::filesystem::path& path);

/// JSON object with the six hardening parameters by name.
HardeningParams read_params_file(const std::filesystem::path& path);
void write_params_file(const std::filesystem::path& path, const HardeningParams& p);

/// One row per member: member, six parameters, admissible flag, one distance per history.
void write_cloud_csv(const std::filesystem::path& path, const CloudReport& report);

// -- commands -------------------------------------------------------------

struct SimulateResult {
    ExperimentData data;
    std::filesystem::path file;
};
SimulateResult cmd_simulate(const RunConfig& cfg, bool with_noise, std::ostream& log);

struct IdentifyResult {
    FitResult fit;
    std::filesystem::path file;
};
/// Writes fit.json and fit_log.csv. A non-converged fit is returned, not thrown.
IdentifyResult cmd_identify(const RunConfig& cfg, std::ostream& log);

/// One report per configured scheme; writes cloud_<scheme>.csv and summary.csv.
std::vector<CloudReport> cmd_montecarlo(const RunConfig& cfg, std::ostream& log);

struct DistanceReport {
    double euclidean = 0.0;
    double euclidean_nondim = 0.0;
    std::vector<std::pair<int, double>> mechanics;  // history id, MPa
    std::vector<std::pair<int, AxiomReport>> axioms;
};
DistanceReport cmd_distance(const RunConfig& cfg, const HardeningParams& p1, const HardeningParams& p2,
                            std::ostream& log);

}  // namespace vpid::cli
