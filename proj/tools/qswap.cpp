// qswap — controlled-SWAP interferometry toolkit, command-line front end
//
// Every subcommand reads matrix/channel JSON files, runs the corresponding
// estimator in exact (--shots 0) or sampled mode, and writes a JSON result
// document. Exit codes: 0 success, 2 usage error, 3 unreadable/malformed
// input, 4 physics invariant violation, 5 optimizer non-convergence (the
// result document is still written).

#include "qswap/qswap.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace qswap;

struct CommonOpts {
    long long shots = 0;
    std::uint64_t seed = 0;
    std::string out_path;
    bool pretty = false;
};

struct OptimizerFlags {
    int restarts = 5;
    int max_iters = 2000;
    double step_size = 0.5;
    double grad_tol = 1e-8;
    double value_tol = 1e-12;
};

std::uint64_t seed_from_env() {
    const char* env = std::getenv("QSWAP_SEED");
    if (env == nullptr) return 0;
    try {
        return std::stoull(env);
    } catch (...) {
        return 0;
    }
}

void add_common(CLI::App* cmd, CommonOpts& o, const char* shots_help) {
    cmd->add_option("--shots", o.shots, shots_help)->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", o.seed, "Random seed (default: QSWAP_SEED env var, else 0)");
    cmd->add_option("--out", o.out_path, "Write the JSON result to this path instead of stdout");
    cmd->add_flag("--pretty", o.pretty, "Print a human-readable summary to stdout");
}

void add_optimizer(CLI::App* cmd, OptimizerFlags& f) {
    cmd->add_option("--restarts", f.restarts, "Independent optimizer restarts")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iters", f.max_iters, "Iteration cap per restart")->check(CLI::PositiveNumber);
    cmd->add_option("--step", f.step_size, "Gradient step size");
    cmd->add_option("--grad-tol", f.grad_tol, "Gradient-norm convergence tolerance");
    cmd->add_option("--value-tol", f.value_tol, "Value-change convergence tolerance");
}

OptimizerConfig to_config(const OptimizerFlags& f, const CommonOpts& o) {
    OptimizerConfig cfg;
    cfg.restarts = f.restarts;
    cfg.max_iters = f.max_iters;
    cfg.step_size = f.step_size;
    cfg.grad_tol = f.grad_tol;
    cfg.value_tol = f.value_tol;
    cfg.seed = o.seed;
    cfg.shots_per_eval = o.shots;
    return cfg;
}

std::string iso_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json visibility_to_json(const VisibilityEstimate& v) {
    Json j;
    j["v"] = v.v;
    j["p0"] = v.p0;
    j["stderr_p0"] = v.stderr_p0;
    j["stderr_v"] = 2.0 * v.stderr_p0;
    j["shots_used"] = v.shots_used;
    return j;
}

Json config_echo(const std::string& command, const CommonOpts& o, Json inputs) {
    Json c;
    c["command"] = command;
    c["shots"] = o.shots;
    c["seed"] = o.seed;
    c["inputs"] = std::move(inputs);
    return c;
}

// Standard error of a visibility estimate v measured with N shots:
// v = 2*p0 - 1, so stderr(v) = 2*sqrt(p0(1-p0)/N) = sqrt((1-v^2)/N).
double visibility_stderr(double v, long long shots) {
    if (shots <= 0) return 0.0;
    return std::sqrt(std::max(0.0, 1.0 - v * v) / static_cast<double>(shots));
}

Json per_probe_stderr(const std::vector<double>& visibilities, long long shots) {
    Json arr = Json::array();
    for (double v : visibilities) arr.push_back(visibility_stderr(v, shots));
    return arr;
}

void emit(const CommonOpts& o, const std::string& command, Json estimate, Json config,
          const std::string& pretty_text) {
    Json doc;
    doc["command"] = command;
    doc["estimate"] = std::move(estimate);
    doc["config"] = std::move(config);
    doc["version"] = kVersion;
    doc["timestamp"] = iso_timestamp();
    if (!o.out_path.empty()) {
        save_json(o.out_path, doc);
        if (o.pretty) std::cout << pretty_text;
    } else if (o.pretty) {
        std::cout << pretty_text;
    } else {
        std::cout << doc.dump(2) << '\n';
    }
}

DensityOperator load_density(const std::string& path) { return density_from_json(load_json(path)); }
KrausChannel load_channel(const std::string& path) { return kraus_from_json(load_json(path)); }
Observable load_observable(const std::string& path) {
    return make_observable(matrix_from_json(load_json(path)));
}

std::string shots_label(long long shots) {
    return shots > 0 ? std::to_string(shots) : std::string("exact");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Controlled-SWAP interferometry estimator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", qswap::kVersion);

    const std::uint64_t env_seed = seed_from_env();

    // overlap
    CommonOpts overlap_opts{0, env_seed, "", false};
    std::string overlap_a, overlap_b;
    CLI::App* overlap_cmd = app.add_subcommand("overlap", "Estimate tr(rho_a rho_b)");
    overlap_cmd->add_option("--a", overlap_a, "Density JSON for the reference state")->required();
    overlap_cmd->add_option("--b", overlap_b, "Density JSON for the probed state")->required();
    add_common(overlap_cmd, overlap_opts, "Interferometer shots; 0 = exact");

    // tomography
    CommonOpts tomo_opts{0, env_seed, "", false};
    std::string tomo_state;
    CLI::App* tomo_cmd = app.add_subcommand("tomography", "Reconstruct a density operator");
    tomo_cmd->add_option("--state", tomo_state, "Density JSON of the state to reconstruct")->required();
    add_common(tomo_cmd, tomo_opts, "Shots per probe; 0 = exact");

    // purity
    CommonOpts purity_opts{0, env_seed, "", false};
    std::string purity_state;
    CLI::App* purity_cmd = app.add_subcommand("purity", "Estimate tr(rho^2)");
    purity_cmd->add_option("--state", purity_state, "Density JSON")->required();
    add_common(purity_cmd, purity_opts, "Interferometer shots; 0 = exact");

    // bloch
    CommonOpts bloch_opts{0, env_seed, "", false};
    std::string bloch_state;
    CLI::App* bloch_cmd = app.add_subcommand("bloch", "Qubit Bloch-vector length from purity");
    bloch_cmd->add_option("--state", bloch_state, "Qubit density JSON")->required();
    add_common(bloch_cmd, bloch_opts, "Interferometer shots; 0 = exact");

    // expectation
    CommonOpts expect_opts{0, env_seed, "", false};
    std::string expect_obs, expect_state;
    CLI::App* expect_cmd = app.add_subcommand("expectation", "Estimate <A> for a Hermitian observable");
    expect_cmd->add_option("--observable", expect_obs, "Matrix JSON of the observable")->required();
    expect_cmd->add_option("--state", expect_state, "Density JSON")->required();
    add_common(expect_cmd, expect_opts, "Interferometer shots; 0 = exact");

    // eigen
    CommonOpts eigen_opts{0, env_seed, "", false};
    OptimizerFlags eigen_flags;
    std::string eigen_state, eigen_which = "max";
    CLI::App* eigen_cmd = app.add_subcommand("eigen", "Extremal eigenvalue by visibility search");
    eigen_cmd->add_option("--state", eigen_state, "Density JSON")->required();
    eigen_cmd->add_option("--which", eigen_which, "min or max")
        ->check(CLI::IsMember({"min", "max"}));
    add_common(eigen_cmd, eigen_opts, "Shots per visibility evaluation; 0 = exact");
    add_optimizer(eigen_cmd, eigen_flags);

    // channel-tomography
    CommonOpts chtomo_opts{0, env_seed, "", false};
    std::string chtomo_channel;
    CLI::App* chtomo_cmd = app.add_subcommand("channel-tomography",
                                              "Reconstruct the bipartite state of a channel");
    chtomo_cmd->add_option("--channel", chtomo_channel, "Kraus channel JSON")->required();
    add_common(chtomo_cmd, chtomo_opts, "Shots per probe; 0 = exact");

    // capacity-test
    CommonOpts cap_opts{0, env_seed, "", false};
    OptimizerFlags cap_flags;
    std::string cap_channel;
    CLI::App* cap_cmd = app.add_subcommand("capacity-test",
                                           "Two-way capacity criterion for a qubit channel");
    cap_cmd->add_option("--channel", cap_channel, "Kraus channel JSON")->required();
    add_common(cap_cmd, cap_opts, "Shots per visibility evaluation; 0 = exact");
    add_optimizer(cap_cmd, cap_flags);

    // distill-test: the criterion is spectral and always exact, so no --shots
    CommonOpts distill_opts{0, env_seed, "", false};
    std::string distill_state;
    CLI::App* distill_cmd = app.add_subcommand("distill-test",
                                               "Two-way distillability of a two-qubit state");
    distill_cmd->add_option("--state", distill_state, "Two-qubit density JSON")->required();
    distill_cmd->add_option("--seed", distill_opts.seed,
                            "Random seed (default: QSWAP_SEED env var, else 0)");
    distill_cmd->add_option("--out", distill_opts.out_path,
                            "Write the JSON result to this path instead of stdout");
    distill_cmd->add_flag("--pretty", distill_opts.pretty,
                          "Print a human-readable summary to stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto guarded = [](const std::function<int()>& body) -> int {
        try {
            return body();
        } catch (const FormatError& e) {
            std::cerr << "input error: " << e.what() << '\n';
            return 3;
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "input error: " << e.what() << '\n';
            return 3;
        } catch (const DensityError& e) {
            std::cerr << "invariant violation (" << to_string(e.violation) << "): " << e.what() << '\n';
            return 4;
        } catch (const std::invalid_argument& e) {
            std::cerr << "invariant violation: " << e.what() << '\n';
            return 4;
        } catch (const std::out_of_range& e) {
            std::cerr << "invariant violation: " << e.what() << '\n';
            return 4;
        } catch (const std::domain_error& e) {
            std::cerr << "invariant violation: " << e.what() << '\n';
            return 4;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 1;
        }
    };

    if (overlap_cmd->parsed()) {
        return guarded([&] {
            const DensityOperator a = load_density(overlap_a);
            const DensityOperator b = load_density(overlap_b);
            const VisibilityEstimate est = overlap(a, b, overlap_opts.shots, overlap_opts.seed);
            std::ostringstream pretty;
            pretty << "overlap (shots: " << shots_label(overlap_opts.shots) << ")\n"
                   << "  v          " << est.v << "\n"
                   << "  p0         " << est.p0 << "\n"
                   << "  stderr(p0) " << est.stderr_p0 << "\n";
            emit(overlap_opts, "overlap", visibility_to_json(est),
                 config_echo("overlap", overlap_opts, Json{{"a", overlap_a}, {"b", overlap_b}}),
                 pretty.str());
            return 0;
        });
    }

    if (tomo_cmd->parsed()) {
        return guarded([&] {
            const DensityOperator rho = load_density(tomo_state);
            const ReconstructionReport rep = run_tomography(rho, tomo_opts.shots, tomo_opts.seed);
            Json j = reconstruction_to_json(rep);
            j["per_probe_stderr_v"] = per_probe_stderr(rep.per_probe_visibilities, tomo_opts.shots);
            std::ostringstream pretty;
            pretty << "tomography (dim " << rho.dim << ", shots/probe: "
                   << shots_label(tomo_opts.shots) << ")\n"
                   << "  probes       " << rep.schedule.probes.size() << "\n"
                   << "  total shots  " << rep.total_shots << "\n";
            emit(tomo_opts, "tomography", std::move(j),
                 config_echo("tomography", tomo_opts, Json{{"state", tomo_state}}), pretty.str());
            return 0;
        });
    }

    if (purity_cmd->parsed()) {
        return guarded([&] {
            const DensityOperator rho = load_density(purity_state);
            const VisibilityEstimate est = overlap(rho, rho, purity_opts.shots, purity_opts.seed);
            std::ostringstream pretty;
            pretty << "purity (shots: " << shots_label(purity_opts.shots) << ")\n"
                   << "  v          " << est.v << "\n"
                   << "  stderr(v)  " << 2.0 * est.stderr_p0 << "\n";
            emit(purity_opts, "purity", visibility_to_json(est),
                 config_echo("purity", purity_opts, Json{{"state", purity_state}}), pretty.str());
            return 0;
        });
    }

    if (bloch_cmd->parsed()) {
        return guarded([&] {
            const DensityOperator rho = load_density(bloch_state);
            if (rho.dim != 2) {
                throw std::invalid_argument("bloch: the Bloch-length map is defined for qubits");
            }
            const VisibilityEstimate est = overlap(rho, rho, bloch_opts.shots, bloch_opts.seed);
            const BlochLength len = bloch_length(est.v);
            Json j;
            j["purity"] = est.v;
            j["stderr_purity"] = 2.0 * est.stderr_p0;
            j["length"] = len.length;
            j["clamped"] = len.clamped;
            std::ostringstream pretty;
            pretty << "bloch (shots: " << shots_label(bloch_opts.shots) << ")\n"
                   << "  purity   " << est.v << "\n"
                   << "  |r|      " << len.length << (len.clamped ? "  (clamped)" : "") << "\n";
            emit(bloch_opts, "bloch", std::move(j),
                 config_echo("bloch", bloch_opts, Json{{"state", bloch_state}}), pretty.str());
            return 0;
        });
    }

    if (expect_cmd->parsed()) {
        return guarded([&] {
            const Observable a = load_observable(expect_obs);
            const DensityOperator rho = load_density(expect_state);
            const ExpectationEstimate est = expectation(a, rho, expect_opts.shots, expect_opts.seed);
            Json j;
            j["value"] = est.value;
            j["stderr"] = est.stderr_value;
            j["gamma"] = est.gamma;
            j["visibility"] = visibility_to_json(est.visibility);
            std::ostringstream pretty;
            pretty << "expectation (shots: " << shots_label(expect_opts.shots) << ")\n"
                   << "  <A>     " << est.value << "\n"
                   << "  stderr  " << est.stderr_value << "\n";
            emit(expect_opts, "expectation", std::move(j),
                 config_echo("expectation", expect_opts,
                             Json{{"observable", expect_obs}, {"state", expect_state}}),
                 pretty.str());
            return 0;
        });
    }

    if (eigen_cmd->parsed()) {
        return guarded([&] {
            const DensityOperator rho = load_density(eigen_state);
            const Extremum which = eigen_which == "max" ? Extremum::max : Extremum::min;
            const ExtremalResult res = extremal_eigen(rho, which, to_config(eigen_flags, eigen_opts));
            Json estimate = extremal_to_json(res);
            estimate["stderr_eigenvalue"] =
                visibility_stderr(res.eigenvalue_estimate, eigen_opts.shots);
            Json config = config_echo("eigen", eigen_opts, Json{{"state", eigen_state}});
            config["which"] = eigen_which;
            config["restarts"] = eigen_flags.restarts;
            config["max_iters"] = eigen_flags.max_iters;
            std::ostringstream pretty;
            pretty << "eigen " << eigen_which << " (shots/eval: " << shots_label(eigen_opts.shots)
                   << ")\n"
                   << "  eigenvalue  " << res.eigenvalue_estimate << "\n"
                   << "  converged   " << (res.converged ? "yes" : "no") << "\n"
                   << "  iterations  " << res.iterations_used << "\n";
            emit(eigen_opts, "eigen", std::move(estimate), std::move(config), pretty.str());
            return res.converged ? 0 : 5;
        });
    }

    if (chtomo_cmd->parsed()) {
        return guarded([&] {
            const KrausChannel ch = load_channel(chtomo_channel);
            const ChannelTomographyReport rep =
                channel_tomography(ch, chtomo_opts.shots, chtomo_opts.seed);
            Json j;
            j["choi"] = choi_to_json(rep.choi);
            j["a_marginal_deviation"] = rep.a_marginal_deviation;
            j["bistochastic"] = is_bistochastic(rep.choi, 1e-6);
            j["visibilities"] = rep.reconstruction.per_probe_visibilities;
            j["per_probe_stderr_v"] =
                per_probe_stderr(rep.reconstruction.per_probe_visibilities, chtomo_opts.shots);
            j["total_shots"] = rep.reconstruction.total_shots;
            std::ostringstream pretty;
            pretty << "channel-tomography (dim " << ch.dim << ", shots/probe: "
                   << shots_label(chtomo_opts.shots) << ")\n"
                   << "  kept-side marginal deviation  " << rep.a_marginal_deviation << "\n";
            emit(chtomo_opts, "channel-tomography", std::move(j),
                 config_echo("channel-tomography", chtomo_opts, Json{{"channel", chtomo_channel}}),
                 pretty.str());
            return 0;
        });
    }

    if (cap_cmd->parsed()) {
        return guarded([&] {
            const KrausChannel ch = load_channel(cap_channel);
            const ChoiState c = choi_state(ch);
            const CapacityVerdict verdict = two_way_capacity_positive(c, to_config(cap_flags, cap_opts));
            Json j;
            j["verdict"] = verdict.positive;
            j["lambda_max"] = verdict.lambda_max;
            j["stderr_lambda_max"] = visibility_stderr(verdict.lambda_max, cap_opts.shots);
            j["inconclusive"] = verdict.inconclusive;
            j["optimizer"] = extremal_to_json(verdict.optimizer);
            std::ostringstream pretty;
            pretty << "capacity-test (shots/eval: " << shots_label(cap_opts.shots) << ")\n"
                   << "  lambda_max  " << verdict.lambda_max << "\n"
                   << "  Q_two_way positive: " << (verdict.positive ? "yes" : "no")
                   << (verdict.inconclusive ? "  (inconclusive: near threshold)" : "") << "\n";
            emit(cap_opts, "capacity-test", std::move(j),
                 config_echo("capacity-test", cap_opts, Json{{"channel", cap_channel}}),
                 pretty.str());
            return verdict.optimizer.converged ? 0 : 5;
        });
    }

    if (distill_cmd->parsed()) {
        return guarded([&] {
            const DensityOperator rho = load_density(distill_state);
            const DistillabilityResult res = distillability_operator_test(rho);
            Json j;
            j["verdict"] = res.distillable;
            j["min_eig"] = res.min_eig;
            std::ostringstream pretty;
            pretty << "distill-test\n"
                   << "  min eigenvalue  " << res.min_eig << "\n"
                   << "  two-way distillable: " << (res.distillable ? "yes" : "no") << "\n";
            emit(distill_opts, "distill-test", std::move(j),
                 config_echo("distill-test", distill_opts, Json{{"state", distill_state}}),
                 pretty.str());
            return 0;
        });
    }

    std::cerr << "unknown command\n";
    return 2;
}
