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

// vpid: simulate | identify | montecarlo | distance
//
// Settings are resolved as flags > VPID_* environment variables > config
// file > built-in defaults.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vpid/cli_io.hpp"
#include "vpid/errors.hpp"

namespace {

using namespace vpid;
using namespace vpid::cli;

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> instances;
    std::string weighting;
    std::optional<int> history;
    std::string out;
    std::string data;
    std::optional<unsigned> threads;
    bool with_noise = false;
    std::string p1;
    std::string p2;
};

Overrides to_overrides(const Flags& f) {
    Overrides o;
    if (!f.config.empty()) o.config = f.config;
    o.seed = f.seed;
    o.instances = f.instances;
    if (!f.weighting.empty()) o.weighting = parse_weighting_kind(f.weighting);
    o.history = f.history;
    if (!f.out.empty()) o.out = f.out;
    if (!f.data.empty()) o.data = f.data;
    o.threads = f.threads;
    if (f.with_noise) o.with_noise = true;
    return o;
}

std::optional<std::string> getenv_lookup(const char* name) {
    if (const char* v = std::getenv(name)) return std::string(v);
    return std::nullopt;
}

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "JSON run configuration");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--instances", f.instances, "Monte Carlo instances")->check(CLI::PositiveNumber);
    cmd->add_option("--weighting", f.weighting, "weighting matrix")
        ->check(CLI::IsMember({"identity", "diag_inv_cov", "full_inv_cov"}));
    cmd->add_option("--history", f.history, "metric deformation history")->check(CLI::IsMember({1, 2}));
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hardening-parameter identification and sensitivity under measurement noise"};
    app.require_subcommand(1);
    Flags f;

    auto* sim = app.add_subcommand("simulate", "write the model response at the truth parameters as strain,stress CSV");
    add_common(sim, f);
    sim->add_flag("--with-noise", f.with_noise, "add one noise realization");

    auto* ident = app.add_subcommand("identify", "fit the hardening parameters to a strain,stress CSV");
    add_common(ident, f);
    ident->add_option("--data", f.data, "data file (strain,stress)");

    auto* mc = app.add_subcommand("montecarlo", "parameter clouds from linearized re-identification of noisy data");
    add_common(mc, f);
    mc->add_option("--data", f.data, "fit this data file instead of using the truth parameters");

    auto* dist = app.add_subcommand("distance", "distances between two parameter files");
    add_common(dist, f);
    dist->add_option("p1", f.p1, "first parameter file (JSON)")->required();
    dist->add_option("p2", f.p2, "second parameter file (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        const Overrides o = merge(env_overrides(getenv_lookup), to_overrides(f));
        RunConfig cfg = o.config ? load_config(*o.config) : RunConfig{};
        apply(o, cfg);

        if (sim->parsed()) {
            cmd_simulate(cfg, o.with_noise.value_or(false), std::cout);
        } else if (ident->parsed()) {
            const IdentifyResult r = cmd_identify(cfg, std::cout);
            if (!r.fit.converged) return kNonConvergence;
        } else if (mc->parsed()) {
            cmd_montecarlo(cfg, std::cout);
        } else if (dist->parsed()) {
            cmd_distance(cfg, read_params_file(f.p1), read_params_file(f.p2), std::cout);
        }
    } catch (const Error& e) {
        std::cerr << "vpid: " << to_string(e.code()) << ": " << e.what() << '\n';
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "vpid: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kOk;
}
