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

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "json.hpp"

#include "vpid/cli_io.hpp"
#include "vpid/errors.hpp"

namespace vpid::cli {

namespace {

WeightingScheme make_scheme(WeightingKind kind, const RunConfig& cfg, std::span<const double> exp) {
    if (kind == WeightingKind::Identity) return WeightingScheme::identity(exp.size());
    const Eigen::MatrixXd cov =
        covariance(NoiseModel::two_source(cfg.weighting_sigma1, cfg.weighting_sigma2), exp);
    if (kind == WeightingKind::DiagInverseCov) return WeightingScheme::diag_inverse_cov(cov);
    if (kind == WeightingKind::FullInverseCov) return WeightingScheme::full_inverse_cov(cov);
    fail(ErrorCode::ConfigError, "weighting '" + std::string(to_string(kind)) + "' cannot be built from the config");
}

/// Data file from the config, checked against the configured strain program.
ExperimentData load_matching_data(const RunConfig& cfg, const StrainProgram& program) {
    if (cfg.data_file.empty()) fail(ErrorCode::ConfigError, "data_file: no data file given (use --data)");
    ExperimentData data = read_data_csv(cfg.data_file);
    data.validate(HardeningParams::kSize);
    if (data.size() != program.size()) {
        fail(ErrorCode::DataError, cfg.data_file.string() + ": " + std::to_string(data.size()) +
                                       " rows but the configured program has " + std::to_string(program.size()) +
                                       " samples");
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (std::abs(data.abscissae[i] - program.shear_values[i]) > 1e-9) {
            fail(ErrorCode::DataError, cfg.data_file.string() + ": strain in row " + std::to_string(i + 1) +
                                           " does not match the configured program");
        }
    }
    return data;
}

IdentifyOptions identify_options(const RunConfig& cfg) {
    IdentifyOptions opts;
    opts.fd.threads = cfg.threads;
    return opts;
}

std::vector<HistoryMetric> history_metrics(const RunConfig& cfg) {
    std::vector<HistoryMetric> hs;
    for (int id : cfg.histories) {
        hs.push_back({id, MechanicsMetric(MetricSpec::mechanics(benchmark_history(id), cfg.material, cfg.metric_grid))});
    }
    return hs;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

SimulateResult cmd_simulate(const RunConfig& cfg, bool with_noise, std::ostream& log) {
    const StrainProgram program = cfg.program.build();
    SimulateResult res;
    res.data.abscissae = program.shear_values;
    res.data.observations = model_response(cfg.truth, cfg.material, program);
    if (with_noise) {
        const auto noise = sample_noise(cfg.noise, res.data.observations, cfg.master_seed, 0);
        for (std::size_t i = 0; i < noise.size(); ++i) res.data.observations[i] += noise[i];
    }
    res.file = cfg.output_dir / "data.csv";
    write_data_csv(res.file, res.data.abscissae, res.data.observations);
    log << "simulate: " << program.size() << " samples";
    if (with_noise) log << ", noise " << cfg.noise.describe() << " seed " << cfg.master_seed;
    log << " -> " << res.file.string() << '\n';
    return res;
}

IdentifyResult cmd_identify(const RunConfig& cfg, std::ostream& log) {
    const StrainProgram program = cfg.program.build();
    const ExperimentData data = load_matching_data(cfg, program);
    const WeightingScheme scheme = make_scheme(cfg.weighting, cfg, data.observations);

    IdentifyResult res;
    res.fit = identify(cfg.start, data, scheme, cfg.material, program, identify_options(cfg));
    const FitResult& fit = res.fit;

    nlohmann::json j;
    for (std::size_t k = 0; k < HardeningParams::kSize; ++k) {
        j["params"][std::string(HardeningParams::kNames[k])] = fit.params[k];
    }
    j["phi"] = fit.phi;
    j["iterations"] = fit.iterations;
    j["converged"] = fit.converged;
    j["stop_reason"] = std::string(to_string(fit.reason));
    j["weighting"] = std::string(to_string(cfg.weighting));
    j["observations"] = data.size();

    res.file = cfg.output_dir / "fit.json";
    {
        std::error_code ec;
        std::filesystem::create_directories(cfg.output_dir, ec);
        std::ofstream out(res.file, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::IoError, "cannot write " + res.file.string());
        out << j.dump(2) << '\n';
        if (!out) fail(ErrorCode::IoError, "failed writing " + res.file.string());
    }
    write_params_file(cfg.output_dir / "params.json", fit.params);
    {
        const auto path = cfg.output_dir / "fit_log.csv";
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
        out << "iteration,phi\n";
        for (std::size_t i = 0; i < fit.phi_history.size(); ++i) out << i << ',' << format_double(fit.phi_history[i]) << '\n';
    }

    log << "identify: " << (fit.converged ? "converged" : "NOT converged") << " (" << to_string(fit.reason)
        << ") after " << fit.iterations << " iterations, Phi = " << fit.phi << '\n';
    for (std::size_t k = 0; k < HardeningParams::kSize; ++k) {
        log << "  " << std::left << std::setw(7) << HardeningParams::kNames[k] << ' ' << fit.params[k] << '\n';
    }
    return res;
}

std::vector<CloudReport> cmd_montecarlo(const RunConfig& cfg, std::ostream& log) {
    const StrainProgram program = cfg.program.build();
    const std::vector<HistoryMetric> hs = history_metrics(cfg);
    const CloudOptions copts{cfg.n_instances, cfg.master_seed, cfg.threads};

    // Base solution: the configured truth with its own noise-free response,
    // or a fit of the data file per weighting.
    std::vector<double> exp;
    std::optional<LinearizedModel> truth_lin;
    std::optional<ExperimentData> data;
    if (cfg.data_file.empty()) {
        FdOptions fd;
        fd.threads = cfg.threads;
        truth_lin = linearize_at(cfg.truth, cfg.material, program, fd);
        exp.assign(truth_lin->mod_star.data(), truth_lin->mod_star.data() + truth_lin->mod_star.size());
    } else {
        data = load_matching_data(cfg, program);
        exp = data->observations;
    }

    std::vector<CloudReport> reports;
    for (WeightingKind kind : cfg.schemes) {
        const WeightingScheme scheme = make_scheme(kind, cfg, exp);
        LinearizedModel lin;
        if (truth_lin) {
            lin = *truth_lin;
        } else {
            const FitResult fit = identify(cfg.start, *data, scheme, cfg.material, program, identify_options(cfg));
            if (!fit.converged) {
                fail(ErrorCode::MaxIterationsExceeded,
                     "base fit for weighting " + std::string(to_string(kind)) + " did not converge");
            }
            lin = linearize(fit, cfg.material, program);
        }
        CloudReport report = monte_carlo_cloud(lin, scheme, cfg.noise, exp, hs, copts);
        write_cloud_csv(cfg.output_dir / ("cloud_" + std::string(to_string(kind)) + ".csv"), report);
        reports.push_back(std::move(report));
    }

    const auto summary_path = cfg.output_dir / "summary.csv";
    std::ofstream out(summary_path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot write " + summary_path.string());
    out << "scheme,seed,n_instances,noise";
    for (int id : cfg.histories) out << ",size_h" << id;
    for (auto name : HardeningParams::kNames) out << ",var_" << name;
    out << ",inadmissible\n";
    for (const auto& r : reports) {
        out << to_string(r.scheme) << ',' << r.seed << ',' << r.cloud.size() << ',' << csv_quote(r.noise);
        for (const auto& h : r.size_per_history) out << ',' << format_double(h.size);
        for (double v : r.variances) out << ',' << format_double(v);
        std::size_t bad = 0;
        for (bool a : r.admissible) bad += a ? 0 : 1;
        out << ',' << bad << '\n';
    }
    out.close();
    if (!out) fail(ErrorCode::IoError, "failed writing " + summary_path.string());

    log << "montecarlo: " << cfg.n_instances << " instances, noise " << cfg.noise.describe() << ", seed "
        << cfg.master_seed << "\n\nCloud size (MPa)\n" << std::left << std::setw(14) << "weighting";
    for (int id : cfg.histories) log << std::setw(12) << ("history " + std::to_string(id));
    log << '\n';
    for (const auto& r : reports) {
        log << std::setw(14) << to_string(r.scheme);
        for (const auto& h : r.size_per_history) log << std::setw(12) << std::fixed << std::setprecision(3) << h.size;
        log << '\n';
    }
    log << "\nVariance of normalized parameters\n" << std::setw(14) << "weighting";
    for (auto name : HardeningParams::kNames) log << std::setw(11) << name;
    log << '\n' << std::defaultfloat << std::setprecision(3);
    for (const auto& r : reports) {
        log << std::setw(14) << to_string(r.scheme);
        for (double v : r.variances) log << std::setw(11) << v;
        log << '\n';
    }
    log << std::setprecision(6);
    return reports;
}

DistanceReport cmd_distance(const RunConfig& cfg, const HardeningParams& p1, const HardeningParams& p2,
                            std::ostream& log) {
    DistanceReport rep;
    rep.euclidean = dist_euclidean(p1, p2);
    rep.euclidean_nondim = dist_euclidean_nondim(p1, p2, cfg.truth);
    log << "euclidean          " << rep.euclidean << '\n'
        << "euclidean_nondim   " << rep.euclidean_nondim << "  (reference: truth_hardening)\n";
    const std::vector<HardeningParams> samples{p1, p2, cfg.truth};
    for (int id : cfg.histories) {
        const MetricSpec spec = MetricSpec::mechanics(benchmark_history(id), cfg.material, cfg.metric_grid);
        const double d = MechanicsMetric(spec)(p1, p2);
        rep.mechanics.emplace_back(id, d);
        log << "mechanics h" << id << "      " << d << " MPa\n";
        rep.axioms.emplace_back(id, check_metric_axioms(spec, samples, 1e-9, cfg.threads));
    }
    for (const auto& [id, a] : rep.axioms) {
        log << "\naxiom check, history " << id << " (samples: p1, p2, truth_hardening)\n" << a.to_text();
    }
    return rep;
}

}  // namespace vpid::cli
