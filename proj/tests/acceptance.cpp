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

// Acceptance run: one PASS/FAIL line per criterion, INFO lines for context.
// Exit status is 0 only when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vpid/cli_io.hpp"
#include "vpid/constitutive.hpp"
#include "vpid/errors.hpp"
#include "vpid/identification.hpp"
#include "vpid/loading.hpp"
#include "vpid/metric.hpp"
#include "vpid/noise.hpp"
#include "vpid/sensitivity.hpp"

namespace {

using namespace vpid;
namespace fs = std::filesystem;

// Pinned thresholds.
constexpr double kGradientTol = 1e-6;      // 1: relative, analytic vs finite difference
constexpr int kRandomStates = 200;         // 1
constexpr double kDetTol = 1e-10;          // 2
constexpr int kStarts = 20;                // 3
constexpr int kStartsRequired = 19;        // 3
constexpr double kStartSpread = 0.3;       // 3
constexpr double kRecoveryTol = 1e-3;      // 3: relative per component
constexpr int kLinearInstances = 50;       // 4
constexpr double kLinearTol = 1e-8;        // 4: relative
constexpr double kNoiseFreeTol = 1e-12;    // 4
constexpr std::size_t kCloudSize = 2000;   // 5, 6, 7
constexpr double kOrderingMargin = 0.10;   // 5
constexpr double kDiagonalAgreement = 0.05;  // 5
constexpr double kHistoryAgreement = 0.05;   // 6
constexpr int kMetricSamples = 21;         // 8: 210 pairs, 9261 ordered triples
constexpr double kMetricSlack = 1e-9;      // 8
constexpr int kDraws = 100000;             // 9
constexpr std::size_t kLargeCloud = 10000;  // 10
constexpr std::size_t kSmallCloud = 2500;   // 10
constexpr double kConvergenceTol = 0.02;   // 10

const MaterialParams kSteel = MaterialParams::steel_42CrMo4();

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& check) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = check();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

void info(const std::string& line) {
    std::printf("INFO    %s\n", line.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Tensor2 random_unimodular_spd(std::mt19937_64& rng, double amp) {
    std::uniform_real_distribution<double> u(-amp, amp);
    Tensor2 F = Tensor2::identity();
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) F(i, j) += u(rng);
    }
    if (!(det(F) > 0.0)) F = Tensor2::identity();
    return unimodular(symmetric_part(transpose(F) * F));
}

Tensor2 fd_gradient(const Tensor2& A, const std::function<double(const Tensor2&)>& psi) {
    Tensor2 G;
    const double h = 1e-6 * frobenius_norm(A);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i; j < 3; ++j) {
            Tensor2 d = Tensor2::dyad(i, j, h);
            if (i != j) d(j, i) = h;
            const double q = (psi(A + d) - psi(A - d)) / (2.0 * h);
            G(i, j) = G(j, i) = (i == j) ? 2.0 * q : q;
        }
    }
    return G;
}

// -- 1 ---------------------------------------------------------------------------

Outcome hyperelastic_consistency() {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int n = 0; n < kRandomStates; ++n) {
        InternalState st;
        st.Ci = random_unimodular_spd(rng, 0.15);
        st.C1i = random_unimodular_spd(rng, 0.15);
        st.C2i = random_unimodular_spd(rng, 0.15);
        const Tensor2 C = symmetric_part(transpose(Tensor2::identity() + 0.2 * Tensor2::dyad(0, 1, 1.0)) *
                                         (Tensor2::identity() + 0.2 * Tensor2::dyad(0, 1, 1.0))) *
                          std::uniform_real_distribution<double>(0.98, 1.02)(rng);
        const Tensor2 Ci_inv = inverse(st.Ci);
        const Tensor2 T = second_pk_stress(C, st, kSteel);
        const Tensor2 T_fd = fd_gradient(C, [&](const Tensor2& A) { return elastic_energy(A * Ci_inv, kSteel); });
        const Backstresses b = backstresses(st, kSteel);
        const Tensor2 C1_inv = inverse(st.C1i);
        const Tensor2 C2_inv = inverse(st.C2i);
        const auto& h = kSteel.hardening;
        const Tensor2 X1_fd = fd_gradient(st.Ci, [&](const Tensor2& A) { return kinematic_energy(A * C1_inv, h.c1); });
        const Tensor2 X2_fd = fd_gradient(st.Ci, [&](const Tensor2& A) { return kinematic_energy(A * C2_inv, h.c2); });
        worst = std::max({worst, frobenius_norm(T - T_fd) / frobenius_norm(T),
                          frobenius_norm(b.X1 - X1_fd) / frobenius_norm(b.X1),
                          frobenius_norm(b.X2 - X2_fd) / frobenius_norm(b.X2)});
    }
    return {worst <= kGradientTol, fmt("%d states, max relative deviation %.2e (tol %.0e)", kRandomStates, worst, kGradientTol)};
}

// -- 2 ---------------------------------------------------------------------------

double max_det_defect(const TensorPath& F, double t1, double dt) {
    const TensorPath C = [&](double t) {
        const Tensor2 f = F(t);
        return transpose(f) * f;
    };
    const Trajectory tr = evolve_state(C, InternalState{}, kSteel, 0.0, t1, dt);
    double worst = 0.0;
    for (const auto& st : tr.states) {
        worst = std::max({worst, std::abs(det(st.Ci) - 1.0), std::abs(det(st.C1i) - 1.0), std::abs(det(st.C2i) - 1.0)});
    }
    return worst;
}

Outcome incompressibility() {
    const StrainProgram torsion = default_torsion_program();
    const double dt_torsion =
        torsion.duration / static_cast<double>(torsion.size() - 1) / kResponseIntegrator.substeps;
    const double d0 = max_det_defect(torsion.path(), torsion.duration, dt_torsion);
    const TimeGrid grid;
    const double dt_hist = grid.duration / grid.steps / grid.substeps;
    const double d1 = max_det_defect(benchmark_history(1).rescaled(grid.duration).path(), grid.duration, dt_hist);
    const double d2 = max_det_defect(benchmark_history(2).rescaled(grid.duration).path(), grid.duration, dt_hist);
    const double worst = std::max({d0, d1, d2});
    return {worst <= kDetTol, fmt("max |det - 1|: torsion %.1e, history 1 %.1e, history 2 %.1e", d0, d1, d2)};
}

// -- 3 ---------------------------------------------------------------------------

Outcome truth_recovery() {
    const StrainProgram program = default_torsion_program();
    const HardeningParams& truth = reference_sets::kCovInverse;
    ExperimentData data;
    data.observations = model_response(truth, kSteel, program);
    data.abscissae = program.shear_values;
    const auto scheme = WeightingScheme::identity(data.size());
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> u(1.0 - kStartSpread, 1.0 + kStartSpread);
    int ok = 0;
    double worst = 0.0;
    int max_iter = 0;
    for (int s = 0; s < kStarts; ++s) {
        auto a = truth.to_array();
        for (auto& v : a) v *= u(rng);
        const FitResult fit = identify(HardeningParams::from_array(a), data, scheme, kSteel, program);
        double err = 0.0;
        for (std::size_t k = 0; k < HardeningParams::kSize; ++k) {
            err = std::max(err, std::abs(fit.params[k] - truth[k]) / truth[k]);
        }
        worst = std::max(worst, err);
        max_iter = std::max(max_iter, fit.iterations);
        if (fit.converged && err <= kRecoveryTol) ++ok;
    }
    return {ok >= kStartsRequired,
            fmt("%d/%d starts recovered (need %d), worst relative error %.1e, max %d iterations", ok, kStarts,
                kStartsRequired, worst, max_iter)};
}

// -- 4 ---------------------------------------------------------------------------

Outcome closed_form() {
    std::mt19937_64 rng(404);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.5, 2.0);
    double worst = 0.0;
    double worst_exact = 0.0;
    for (int inst = 0; inst < kLinearInstances; ++inst) {
        const Eigen::Index n = 20 + inst;
        LinearizedModel lin;
        lin.p_star = HardeningParams::from_array(std::vector<double>{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)});
        lin.mod_star.resize(n);
        lin.jacobian.resize(n, 6);
        Eigen::MatrixXd B(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            lin.mod_star(i) = 100.0 * g(rng);
            for (Eigen::Index j = 0; j < 6; ++j) lin.jacobian(i, j) = g(rng);
            for (Eigen::Index j = 0; j < n; ++j) B(i, j) = g(rng);
        }
        const auto scheme =
            WeightingScheme::custom(B * B.transpose() + static_cast<double>(n) * Eigen::MatrixXd::Identity(n, n));
        std::vector<double> exp(static_cast<std::size_t>(n));
        std::vector<double> noise(exp.size());
        for (std::size_t i = 0; i < exp.size(); ++i) {
            exp[i] = lin.mod_star(static_cast<Eigen::Index>(i)) + g(rng);
            noise[i] = 2.0 * g(rng);
        }
        const auto pa = reidentify_linear(lin, scheme, exp, noise).to_array();
        const Eigen::Map<const Eigen::VectorXd> closed(pa.data(), 6);

        const Eigen::MatrixXd M = scheme.factor(WhiteningFactor::Cholesky);
        const Eigen::Map<const Eigen::VectorXd> e(exp.data(), n);
        const Eigen::Map<const Eigen::VectorXd> z(noise.data(), n);
        LmOptions opts;
        opts.nonnegative = false;
        opts.tol_g = 1e-13;
        const auto ps = lin.p_star.to_array();
        const LmResult lm = levenberg_marquardt(
            [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
                return M * (e + z - lin.response(HardeningParams::from_array({x.data(), 6})));
            },
            [&](const Eigen::VectorXd&) -> Eigen::MatrixXd { return -M * lin.jacobian; },
            Eigen::Map<const Eigen::VectorXd>(ps.data(), 6), opts);
        worst = std::max(worst, (lm.x - closed).norm() / closed.norm());

        const std::vector<double> mod(lin.mod_star.data(), lin.mod_star.data() + n);
        const std::vector<double> zero(mod.size(), 0.0);
        const auto back = reidentify_linear(lin, scheme, mod, zero).to_array();
        for (std::size_t k = 0; k < 6; ++k) worst_exact = std::max(worst_exact, std::abs(back[k] - ps[k]) / ps[k]);
    }
    return {worst <= kLinearTol && worst_exact <= kNoiseFreeTol,
            fmt("%d instances, max relative gap to LM %.1e (tol %.0e), noise-free deviation %.1e", kLinearInstances,
                worst, kLinearTol, worst_exact)};
}

// -- 5, 6, 7 -------------------------------------------------------------------------

struct CloudSet {
    std::vector<CloudReport> reports;  // full, identity, diag
    const CloudReport& by(WeightingKind k) const {
        for (const auto& r : reports) {
            if (r.scheme == k) return r;
        }
        fail(ErrorCode::OutOfRange, "scheme missing");
    }
};

CloudSet run_clouds(const std::string& preset, std::size_t n, const fs::path& dir) {
    cli::RunConfig cfg = cli::parse_config("{}");
    cfg.program = cli::ProgramConfig::from_preset(preset);
    cfg.n_instances = n;
    cfg.output_dir = dir;
    std::ostringstream log;
    return {cli::cmd_montecarlo(cfg, log)};
}

Outcome weighting_ordering(const CloudSet& c) {
    const auto& full = c.by(WeightingKind::FullInverseCov);
    const auto& id = c.by(WeightingKind::Identity);
    const auto& diag = c.by(WeightingKind::DiagInverseCov);
    bool pass = true;
    std::string detail;
    for (int h : {1, 2}) {
        const double smaller = std::min(id.size_for(h), diag.size_for(h));
        const double margin = (smaller - full.size_for(h)) / smaller;
        const double agree = std::abs(id.size_for(h) - diag.size_for(h)) / smaller;
        pass = pass && margin >= kOrderingMargin && agree <= kDiagonalAgreement;
        detail += fmt("h%d Size full %.3f identity %.3f diag %.3f (margin %.1f%%, diag gap %.1f%%); ", h,
                      full.size_for(h), id.size_for(h), diag.size_for(h), 100 * margin, 100 * agree);
    }
    return {pass, detail + "extended torsion program, N_noise = 2000"};
}

Outcome history_insensitivity(const CloudSet& c) {
    bool pass = true;
    std::string detail;
    for (const auto& r : c.reports) {
        const double a = r.size_for(1);
        const double b = r.size_for(2);
        const double rel = std::abs(a - b) / std::min(a, b);
        pass = pass && rel <= kHistoryAgreement;
        detail += fmt("%s %.2f%%; ", std::string(to_string(r.scheme)).c_str(), 100 * rel);
    }
    return {pass, detail + fmt("tol %.0f%%", 100 * kHistoryAgreement)};
}

bool kappas_smallest(const std::array<double, 6>& v) {
    std::array<std::size_t, 6> order{};
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    return (order[0] == 4 && order[1] == 5) || (order[0] == 5 && order[1] == 4);
}

std::string variance_text(const std::array<double, 6>& v) {
    std::string s;
    for (std::size_t k = 0; k < 6; ++k) s += fmt("%s %.2e ", std::string(HardeningParams::kNames[k]).c_str(), v[k]);
    return s;
}

Outcome variance_pattern(const CloudSet& c) {
    const auto& v = c.by(WeightingKind::FullInverseCov).variances;
    return {kappas_smallest(v), variance_text(v) + "(full_inv_cov)"};
}

void default_program_info(const CloudSet& c) {
    const auto& full = c.by(WeightingKind::FullInverseCov);
    const auto& id = c.by(WeightingKind::Identity);
    const auto& diag = c.by(WeightingKind::DiagInverseCov);
    for (int h : {1, 2}) {
        const double smaller = std::min(id.size_for(h), diag.size_for(h));
        info(fmt("default program h%d: Size full %.3f identity %.3f diag %.3f, margin %.1f%%", h, full.size_for(h),
                 id.size_for(h), diag.size_for(h), 100 * (smaller - full.size_for(h)) / smaller));
    }
    for (const auto& r : c.reports) {
        info(fmt("default program %s: history gap %.2f%%", std::string(to_string(r.scheme)).c_str(),
                 100 * std::abs(r.size_for(1) - r.size_for(2)) / std::min(r.size_for(1), r.size_for(2))));
    }
    info("default program variances: " + variance_text(full.variances) +
         (kappas_smallest(full.variances) ? "(kappas smallest)" : "(kappas not smallest)"));
}

// -- 8 ---------------------------------------------------------------------------

Outcome metric_axioms() {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> u(0.7, 1.3);
    std::vector<HardeningParams> samples;
    for (int i = 0; i < kMetricSamples; ++i) {
        auto a = reference_sets::kCovInverse.to_array();
        for (auto& v : a) v *= u(rng);
        samples.push_back(HardeningParams::from_array(a));
    }
    bool pass = true;
    std::string detail;
    for (int h : {1, 2}) {
        const AxiomReport r =
            check_metric_axioms(MetricSpec::mechanics(benchmark_history(h), kSteel), samples, kMetricSlack);
        pass = pass && r.nonnegative() && r.symmetric() && r.triangle() && r.separation();
        detail += fmt("h%d: %zu pairs, %zu triples, triangle violations %zu, separation violations %zu, min distance "
                      "%.2f MPa; ",
                      h, r.pairs, r.triples, r.triangle_violations, r.separation_violations.size(),
                      r.min_distinct_distance);
    }
    const std::vector<HardeningParams> few(samples.begin(), samples.begin() + 5);
    const AxiomReport elastic =
        check_metric_axioms(MetricSpec::mechanics(benchmark_history(1, 0.001), kSteel), few, kMetricSlack);
    pass = pass && !elastic.separation() && elastic.triangle();
    detail += fmt("elastic history: %zu separation violations among %zu samples", elastic.separation_violations.size(),
                  few.size());
    return {pass, detail};
}

// -- 9 ---------------------------------------------------------------------------

Outcome noise_statistics() {
    bool pass = true;
    std::string detail;
    const std::vector<double> flat(kDraws, 1.0);

    const double sigma = 4.0;
    const auto w = sample_noise(NoiseModel::white(sigma), flat, 9, 0);
    const double wmean = std::accumulate(w.begin(), w.end(), 0.0) / kDraws;
    pass = pass && std::abs(wmean) < 4 * sigma / std::sqrt(kDraws);
    detail += fmt("white mean %.3f; ", wmean);

    for (double alpha : {0.3, 0.8}) {
        const auto x = sample_noise(NoiseModel::autoregressive(alpha, 1.0), flat, 9, 1);
        const double m = std::accumulate(x.begin(), x.end(), 0.0) / kDraws;
        double c0 = 0.0;
        double c1 = 0.0;
        for (int i = 0; i < kDraws; ++i) {
            c0 += (x[i] - m) * (x[i] - m);
            if (i > 0) c1 += (x[i] - m) * (x[i - 1] - m);
        }
        const double rho = c1 / c0;
        const double se = std::sqrt((1 - alpha * alpha) / kDraws);
        const double sd_mean = std::sqrt((1 + alpha) / (1 - alpha) / (1 - alpha * alpha) / kDraws);
        pass = pass && std::abs(rho - alpha) <= 3 * se && std::abs(m) < 4 * sd_mean;
        detail += fmt("AR(%.1f) lag-1 %.4f (%.1f se); ", alpha, rho, std::abs(rho - alpha) / se);
    }

    const std::vector<double> exp{50.0, 200.0, -350.0, 500.0, 120.0};
    const auto model = NoiseModel::two_source(10.0, 5.0);
    const Eigen::MatrixXd C = covariance(model, exp);
    const Eigen::Index n = static_cast<Eigen::Index>(exp.size());
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd S2 = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
    NormalStream rng(99, 2);
    for (int k = 0; k < kDraws; ++k) {
        const auto v = sample_noise(model, exp, rng);
        const Eigen::Map<const Eigen::VectorXd> x(v.data(), n);
        const Eigen::MatrixXd o = x * x.transpose();
        S += o;
        S2 += o.cwiseProduct(o);
        mean += x;
    }
    S /= kDraws;
    S2 /= kDraws;
    mean /= kDraws;
    double worst_z = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        pass = pass && std::abs(mean(i)) < 4 * std::sqrt(C(i, i) / kDraws);
        for (Eigen::Index j = 0; j < n; ++j) {
            const double se = std::sqrt((S2(i, j) - S(i, j) * S(i, j)) / kDraws);
            worst_z = std::max(worst_z, std::abs(S(i, j) - C(i, j)) / se);
        }
    }
    pass = pass && worst_z <= 3.0;
    detail += fmt("two-source covariance worst entry %.2f se", worst_z);
    return {pass, detail};
}

// -- 10 --------------------------------------------------------------------------

Outcome mc_convergence(const fs::path& dir) {
    cli::RunConfig cfg = cli::parse_config("{}");
    cfg.program = cli::ProgramConfig::from_preset("extended");
    cfg.n_instances = kLargeCloud;
    cfg.schemes = {WeightingKind::FullInverseCov};
    cfg.histories = {1};
    cfg.output_dir = dir;
    std::ostringstream log;
    const CloudReport big = cli::cmd_montecarlo(cfg, log).front();
    cfg.n_instances = kSmallCloud;
    const CloudReport small = cli::cmd_montecarlo(cfg, log).front();
    const double rel = std::abs(big.size_for(1) - small.size_for(1)) / big.size_for(1);
    return {rel < kConvergenceTol, fmt("Size %.4f at %zu vs %.4f at %zu, drift %.2f%% (tol %.0f%%)", big.size_for(1),
                                       kLargeCloud, small.size_for(1), kSmallCloud, 100 * rel, 100 * kConvergenceTol)};
}

// -- 11 --------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism(const fs::path& dir) {
    cli::RunConfig cfg = cli::parse_config("{}");
    cfg.n_instances = 200;
    cfg.master_seed = 2024;
    std::ostringstream log;
    cfg.threads = 1;
    cfg.output_dir = dir / "seq";
    cli::cmd_montecarlo(cfg, log);
    cfg.threads = 4;
    cfg.output_dir = dir / "par";
    cli::cmd_montecarlo(cfg, log);
    cfg.threads = 1;
    cfg.output_dir = dir / "again";
    cli::cmd_montecarlo(cfg, log);
    int same = 0;
    int total = 0;
    for (const char* f : {"cloud_full_inv_cov.csv", "cloud_identity.csv", "cloud_diag_inv_cov.csv", "summary.csv"}) {
        const std::string a = slurp(dir / "seq" / f);
        ++total;
        if (!a.empty() && a == slurp(dir / "par" / f) && a == slurp(dir / "again" / f)) ++same;
    }
    return {same == total, fmt("%d/%d output files byte-identical across threads 1, 4 and a repeat run", same, total)};
}

}  // namespace

int main() {
    const fs::path work = fs::temp_directory_path() / "vpid_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    report(1, "hyperelastic consistency", hyperelastic_consistency);
    report(2, "incompressibility", incompressibility);
    report(3, "synthetic-truth recovery", truth_recovery);
    report(4, "closed-form re-identification", closed_form);

    CloudSet extended;
    try {
        const auto t0 = std::chrono::steady_clock::now();
        extended = run_clouds("extended", kCloudSize, work / "extended");
        info(fmt("extended-program clouds for criteria 5-7: %.1f s",
                 std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()));
    } catch (const std::exception& e) {
        info(std::string("extended clouds failed: ") + e.what());
    }
    report(5, "weighting ordering", [&] { return weighting_ordering(extended); });
    report(6, "history insensitivity", [&] { return history_insensitivity(extended); });
    report(7, "variance pattern", [&] { return variance_pattern(extended); });
    try {
        default_program_info(run_clouds("default", kCloudSize, work / "default"));
    } catch (const std::exception& e) {
        info(std::string("default-program clouds failed: ") + e.what());
    }

    report(8, "metric axioms", metric_axioms);
    report(9, "noise statistics", noise_statistics);
    report(10, "Monte Carlo convergence", [&] { return mc_convergence(work / "convergence"); });
    report(11, "determinism", [&] { return determinism(work / "determinism"); });

    fs::remove_all(work);
    std::printf("%s: %d of 11 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
