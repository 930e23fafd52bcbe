// Command-line front end: single binary with subcommands for single runs,
// extreme problems, instance generation, and the three ensemble sweeps.
#include "latq/engine.hpp"
#include "latq/errors.hpp"
#include "latq/experiments.hpp"
#include "latq/problems.hpp"
#include "latq/reduced.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace {

struct CommonFlags {
    std::string format = "csv";
    int max_n = latq::kDefaultFullSimMaxN;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonFlags& common) {
    cmd->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"csv", "structured-text"}))
        ->capture_default_str();
    cmd->add_option("--max-n", common.max_n, "Full-simulation size cap")->capture_default_str();
    cmd->add_option("--threads", common.threads, "Worker threads for ensemble points")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void warn_cap_override(const CommonFlags& common) {
    if (common.max_n > latq::kDefaultFullSimMaxN) {
        std::cerr << "warning: raising the full-simulation cap to n = " << common.max_n
                  << "; the state vector alone needs 2^n * 8 bytes (n = " << common.max_n
                  << " -> " << (double(sizeof(double)) * std::ldexp(1.0, common.max_n - 20))
                  << " MiB)\n";
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw latq::Error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw latq::Error("write to '" + path + "' failed");
}

std::string join_command(int argc, char** argv) {
    std::string command;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) command += ' ';
        command += argv[i];
    }
    return command;
}

// Per-step trace plus summary for run/extreme. CSV carries the summary as a
// trailing comment line so the rows stay machine-readable.
std::string trace_csv(const latq::RunRecord& record, double solutions, bool profile) {
    std::ostringstream out;
    out << "step,p_soln,norm_drift";
    if (profile) {
        for (int k = 0; k <= record.n; ++k) out << ",size_" << k;
    }
    out << '\n';
    for (const latq::StepRecord& step : record.trace) {
        out << step.step << ',' << fmt(step.p_soln) << ',' << fmt(step.norm_drift);
        if (profile) {
            for (int k = 0; k <= record.n; ++k) {
                const double v = k < static_cast<int>(step.level_profile.size())
                                     ? step.level_profile[k]
                                     : 0.0;
                out << ',' << fmt(v);
            }
        }
        out << '\n';
    }
    out << "# n=" << record.n << " L=" << record.L << " policy=" << to_string(record.policy)
        << " solutions=" << fmt(solutions) << " chosen_steps=" << record.chosen_steps
        << " cost=" << fmt(record.cost) << " p_soln_at_chosen=" << fmt(record.chosen_p_soln)
        << " max_norm_drift=" << fmt(record.max_norm_drift) << '\n';
    return out.str();
}

std::string trace_text(const latq::RunRecord& record, double solutions, bool profile) {
    std::ostringstream out;
    out << "# run: n=" << record.n << " L=" << record.L
        << " policy=" << to_string(record.policy) << " steps=" << record.steps << '\n';
    auto cell = [&out](const std::string& text) { out << std::setw(16) << std::left << text; };
    cell("step");
    cell("p_soln");
    cell("norm_drift");
    out << '\n';
    for (const latq::StepRecord& step : record.trace) {
        cell(std::to_string(step.step));
        cell(fmt(step.p_soln));
        cell(fmt(step.norm_drift));
        out << '\n';
    }
    if (profile) {
        out << "# probability in goods by set size\n";
        for (const latq::StepRecord& step : record.trace) {
            out << "step " << step.step << ':';
            for (double v : step.level_profile) out << ' ' << fmt(v);
            out << '\n';
        }
    }
    out << "solutions: " << fmt(solutions) << '\n';
    out << "chosen_steps: " << record.chosen_steps << '\n';
    out << "cost: " << fmt(record.cost) << '\n';
    out << "p_soln_at_chosen: " << fmt(record.chosen_p_soln) << '\n';
    out << "max_norm_drift: " << fmt(record.max_norm_drift) << '\n';
    return out.str();
}

void emit_sweep(const latq::SweepResult& result, const CommonFlags& common,
                const std::string& out_path, const std::string& command, double wall_seconds) {
    for (const std::string& warning : result.warnings) {
        std::cerr << "warning: " << warning << '\n';
    }
    const std::string text = common.format == "csv" ? latq::to_csv(result)
                                                    : latq::to_structured_text(result);
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    write_file(out_path, text);
    write_file(out_path + ".meta", latq::metadata_text(result, command, wall_seconds));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and experiment harness for structured quantum search over the "
                 "lattice of assumption sets"};
    app.set_version_flag("--version", latq::kVersion);
    app.require_subcommand(1);
    const std::string command = join_command(argc, argv);

    // --- run: one instance, fixed step count -------------------------------
    auto* run_cmd = app.add_subcommand("run", "Run one instance on the full simulator");
    auto run_common = std::make_shared<CommonFlags>();
    auto run_instance_path = std::make_shared<std::string>();
    auto run_n = std::make_shared<int>(0);
    auto run_m = std::make_shared<int>(0);
    auto run_seed = std::make_shared<std::uint64_t>(1);
    auto run_index = std::make_shared<std::uint64_t>(0);
    auto run_steps = std::make_shared<int>(0);
    auto run_policy = std::make_shared<std::string>("staged");
    auto run_profile = std::make_shared<bool>(false);
    auto* opt_instance =
        run_cmd->add_option("--instance", *run_instance_path, "Instance file to load");
    auto* opt_n = run_cmd->add_option("--n", *run_n, "Generate: assumption count (even)");
    run_cmd->add_option("--m", *run_m, "Generate: constraint-nogood count")
        ->capture_default_str();
    run_cmd->add_option("--seed", *run_seed, "Generate: ensemble seed")->capture_default_str();
    run_cmd->add_option("--index", *run_index, "Generate: instance index in the ensemble")
        ->capture_default_str();
    run_cmd->add_option("--steps", *run_steps, "Steps to run (default: L)");
    run_cmd->add_option("--policy", *run_policy, "Phase policy")
        ->check(CLI::IsMember({"staged", "nogood-only"}))
        ->capture_default_str();
    run_cmd->add_flag("--profile", *run_profile, "Record probability in goods by set size");
    opt_instance->excludes(opt_n);
    add_common(run_cmd, *run_common);
    run_cmd->callback([=] {
        warn_cap_override(*run_common);
        latq::ProblemInstance problem;
        if (!run_instance_path->empty()) {
            problem = latq::load_instance(*run_instance_path);
        } else if (*run_n > 0) {
            const latq::EnsembleSpec spec{*run_n, *run_m, 1, *run_seed};
            problem = latq::gen_random_csp(spec, *run_index);
        } else {
            throw latq::Error("run: provide --instance FILE or --n to generate an instance");
        }
        const latq::ConsistencyMap consistency = latq::close_nogoods(problem);
        latq::EngineOptions options;
        options.max_n = run_common->max_n;
        options.record_profile = *run_profile;
        const int steps = *run_steps > 0 ? *run_steps : std::max(problem.L, 1);
        const latq::RunRecord record =
            latq::run_trial(consistency, steps, latq::phase_policy_from_string(*run_policy),
                            options);
        const double solutions = static_cast<double>(latq::solution_count(consistency));
        std::cout << (run_common->format == "csv" ? trace_csv(record, solutions, *run_profile)
                                                  : trace_text(record, solutions, *run_profile));
    });

    // --- extreme: reduced simulators ----------------------------------------
    auto* extreme_cmd =
        app.add_subcommand("extreme", "Run an extreme problem on the reduced simulator");
    auto extreme_common = std::make_shared<CommonFlags>();
    auto extreme_kind = std::make_shared<std::string>();
    auto extreme_n = std::make_shared<int>(0);
    auto extreme_l = std::make_shared<int>(-1);
    auto extreme_steps = std::make_shared<int>(0);
    auto extreme_policy = std::make_shared<std::string>("staged");
    auto extreme_profile = std::make_shared<bool>(false);
    extreme_cmd->add_option("--kind", *extreme_kind, "Extreme kind")
        ->check(CLI::IsMember({"min", "max"}))
        ->required();
    extreme_cmd->add_option("--n", *extreme_n, "Assumption count")->required();
    extreme_cmd->add_option("--L", *extreme_l, "Solution size (default: n/2)");
    extreme_cmd->add_option("--steps", *extreme_steps, "Steps to run (default: L)");
    extreme_cmd->add_option("--policy", *extreme_policy, "Phase policy")
        ->check(CLI::IsMember({"staged", "nogood-only"}))
        ->capture_default_str();
    extreme_cmd->add_flag("--profile", *extreme_profile,
                          "Print probability in goods by set size");
    add_common(extreme_cmd, *extreme_common);
    extreme_cmd->callback([=] {
        const latq::ExtremeKind kind = latq::extreme_kind_from_string(*extreme_kind);
        const int l = *extreme_l >= 0 ? *extreme_l : *extreme_n / 2;
        const int steps = *extreme_steps > 0 ? *extreme_steps : std::max(l, 1);
        const latq::RunRecord record =
            latq::run_extreme(kind, *extreme_n, l, steps,
                              latq::phase_policy_from_string(*extreme_policy));
        const double solutions =
            kind == latq::ExtremeKind::MinNogood
                ? latq::divide_by_sqrt_pow2(latq::binomial(*extreme_n, l), 0)
                : 1.0;
        std::cout << (extreme_common->format == "csv"
                          ? trace_csv(record, solutions, *extreme_profile)
                          : trace_text(record, solutions, *extreme_profile));
    });

    // --- gen: emit instance files -------------------------------------------
    auto* gen_cmd = app.add_subcommand("gen", "Generate random-ensemble instance files");
    auto gen_n = std::make_shared<int>(0);
    auto gen_m = std::make_shared<int>(0);
    auto gen_count = std::make_shared<int>(1);
    auto gen_seed = std::make_shared<std::uint64_t>(1);
    auto gen_dir = std::make_shared<std::string>(".");
    gen_cmd->add_option("--n", *gen_n, "Assumption count (even)")->required();
    gen_cmd->add_option("--m", *gen_m, "Constraint-nogood count")->capture_default_str();
    gen_cmd->add_option("--count", *gen_count, "Number of instances")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    gen_cmd->add_option("--seed", *gen_seed, "Ensemble seed")->capture_default_str();
    gen_cmd->add_option("--out-dir", *gen_dir, "Output directory")->capture_default_str();
    gen_cmd->callback([=] {
        std::filesystem::create_directories(*gen_dir);
        const latq::EnsembleSpec spec{*gen_n, *gen_m, *gen_count, *gen_seed};
        for (int i = 0; i < *gen_count; ++i) {
            const latq::ProblemInstance problem = latq::gen_random_csp(spec, i);
            std::ostringstream name;
            name << "instance_n" << *gen_n << "_m" << *gen_m << "_s" << *gen_seed << "_i" << i
                 << ".json";
            const std::string path = (std::filesystem::path(*gen_dir) / name.str()).string();
            latq::save_instance(problem, path);
            std::cout << path << '\n';
        }
    });

    // --- sweeps ---------------------------------------------------------------
    auto* transition_cmd =
        app.add_subcommand("transition", "Mean cost vs alpha over the random ensemble");
    auto tr_common = std::make_shared<CommonFlags>();
    auto tr_n = std::make_shared<int>(16);
    auto tr_alpha_min = std::make_shared<double>(0.25);
    auto tr_alpha_max = std::make_shared<double>(2.5);
    auto tr_alpha_step = std::make_shared<double>(0.25);
    auto tr_instances = std::make_shared<int>(200);
    auto tr_seed = std::make_shared<std::uint64_t>(1);
    auto tr_policy = std::make_shared<std::string>("staged");
    auto tr_out = std::make_shared<std::string>();
    transition_cmd->add_option("--n", *tr_n, "Assumption count (even)")->capture_default_str();
    transition_cmd->add_option("--alpha-min", *tr_alpha_min, "Grid start")->capture_default_str();
    transition_cmd->add_option("--alpha-max", *tr_alpha_max, "Grid end (inclusive)")
        ->capture_default_str();
    transition_cmd->add_option("--alpha-step", *tr_alpha_step, "Grid step")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    transition_cmd->add_option("--instances", *tr_instances, "Instances per point")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    transition_cmd->add_option("--seed", *tr_seed, "Ensemble seed")->capture_default_str();
    transition_cmd->add_option("--policy", *tr_policy, "Phase policy")
        ->check(CLI::IsMember({"staged", "nogood-only"}))
        ->capture_default_str();
    transition_cmd->add_option("--out", *tr_out, "Output file (plus .meta sidecar)");
    add_common(transition_cmd, *tr_common);
    transition_cmd->callback([=] {
        warn_cap_override(*tr_common);
        std::vector<double> alphas;
        const int points =
            static_cast<int>(std::floor((*tr_alpha_max - *tr_alpha_min) / *tr_alpha_step + 1e-9));
        for (int i = 0; i <= points; ++i) alphas.push_back(*tr_alpha_min + i * *tr_alpha_step);
        latq::ExperimentOptions options;
        options.threads = tr_common->threads;
        options.max_n = tr_common->max_n;
        options.instances = *tr_instances;
        const auto start = std::chrono::steady_clock::now();
        const latq::SweepResult result = latq::transition_sweep(
            *tr_n, alphas, latq::phase_policy_from_string(*tr_policy), *tr_seed, options);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                                .count();
        emit_sweep(result, *tr_common, *tr_out, command, wall);
    });

    auto* scaling_cmd = app.add_subcommand("scaling", "Mean cost vs n at fixed alpha");
    auto sc_common = std::make_shared<CommonFlags>();
    auto sc_alpha = std::make_shared<double>(1.0);
    auto sc_ns = std::make_shared<std::vector<int>>();
    auto sc_instances = std::make_shared<int>(200);
    auto sc_seed = std::make_shared<std::uint64_t>(1);
    auto sc_policy = std::make_shared<std::string>("staged");
    auto sc_law = std::make_shared<std::string>("from-alpha");
    auto sc_out = std::make_shared<std::string>();
    scaling_cmd->add_option("--alpha", *sc_alpha, "Constraint density")->capture_default_str();
    scaling_cmd->add_option("--n-list", *sc_ns, "Comma-separated even n values")
        ->delimiter(',')
        ->required();
    scaling_cmd->add_option("--instances", *sc_instances, "Instances per point")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    scaling_cmd->add_option("--seed", *sc_seed, "Ensemble seed")->capture_default_str();
    scaling_cmd->add_option("--policy", *sc_policy, "Phase policy")
        ->check(CLI::IsMember({"staged", "nogood-only"}))
        ->capture_default_str();
    scaling_cmd->add_option("--law", *sc_law, "Constraint count rule")
        ->check(CLI::IsMember({"from-alpha", "none", "max"}))
        ->capture_default_str();
    scaling_cmd->add_option("--out", *sc_out, "Output file (plus .meta sidecar)");
    add_common(scaling_cmd, *sc_common);
    scaling_cmd->callback([=] {
        warn_cap_override(*sc_common);
        latq::ExperimentOptions options;
        options.threads = sc_common->threads;
        options.max_n = sc_common->max_n;
        options.instances = *sc_instances;
        const auto start = std::chrono::steady_clock::now();
        const latq::SweepResult result = latq::scaling_sweep(
            *sc_alpha, *sc_ns, latq::phase_policy_from_string(*sc_policy), *sc_seed,
            latq::constraint_law_from_string(*sc_law), options);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                                .count();
        emit_sweep(result, *sc_common, *sc_out, command, wall);
    });

    auto* extreme_curve_cmd =
        app.add_subcommand("extreme-curve", "Cost curve for both extreme kinds (reduced)");
    auto ec_common = std::make_shared<CommonFlags>();
    auto ec_n_min = std::make_shared<int>(10);
    auto ec_n_max = std::make_shared<int>(40);
    auto ec_policy = std::make_shared<std::string>("staged");
    auto ec_out = std::make_shared<std::string>();
    extreme_curve_cmd->add_option("--n-min", *ec_n_min, "Smallest n")->capture_default_str();
    extreme_curve_cmd->add_option("--n-max", *ec_n_max, "Largest n")->capture_default_str();
    extreme_curve_cmd->add_option("--policy", *ec_policy, "Phase policy")
        ->check(CLI::IsMember({"staged", "nogood-only"}))
        ->capture_default_str();
    extreme_curve_cmd->add_option("--out", *ec_out, "Output file (plus .meta sidecar)");
    add_common(extreme_curve_cmd, *ec_common);
    extreme_curve_cmd->callback([=] {
        const auto start = std::chrono::steady_clock::now();
        const latq::SweepResult result = latq::extreme_cost_curve(
            *ec_n_min, *ec_n_max, latq::phase_policy_from_string(*ec_policy));
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                                .count();
        emit_sweep(result, *ec_common, *ec_out, command, wall);
    });

    auto* ratio_cmd =
        app.add_subcommand("ratio", "Mean cost over the unstructured baseline sqrt(N_L/S)");
    auto ra_common = std::make_shared<CommonFlags>();
    auto ra_alpha = std::make_shared<double>(1.0);
    auto ra_ns = std::make_shared<std::vector<int>>();
    auto ra_instances = std::make_shared<int>(200);
    auto ra_seed = std::make_shared<std::uint64_t>(1);
    auto ra_policy = std::make_shared<std::string>("staged");
    auto ra_out = std::make_shared<std::string>();
    ratio_cmd->add_option("--alpha", *ra_alpha, "Constraint density")->capture_default_str();
    ratio_cmd->add_option("--n-list", *ra_ns, "Comma-separated even n values")
        ->delimiter(',')
        ->required();
    ratio_cmd->add_option("--instances", *ra_instances, "Instances per point")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    ratio_cmd->add_option("--seed", *ra_seed, "Ensemble seed")->capture_default_str();
    ratio_cmd->add_option("--policy", *ra_policy, "Phase policy")
        ->check(CLI::IsMember({"staged", "nogood-only"}))
        ->capture_default_str();
    ratio_cmd->add_option("--out", *ra_out, "Output file (plus .meta sidecar)");
    add_common(ratio_cmd, *ra_common);
    ratio_cmd->callback([=] {
        warn_cap_override(*ra_common);
        latq::ExperimentOptions options;
        options.threads = ra_common->threads;
        options.max_n = ra_common->max_n;
        options.instances = *ra_instances;
        const auto start = std::chrono::steady_clock::now();
        const latq::SweepResult result = latq::unstructured_ratio(
            *ra_alpha, *ra_ns, latq::phase_policy_from_string(*ra_policy), *ra_seed, options);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                                .count();
        emit_sweep(result, *ra_common, *ra_out, command, wall);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const latq::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
