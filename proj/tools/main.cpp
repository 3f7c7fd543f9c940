#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "echosculpt/fidelity.hpp"
#include "echosculpt/instances.hpp"
#include "echosculpt/io.hpp"
#include "echosculpt/kernels.hpp"
#include "echosculpt/oracle.hpp"
#include "echosculpt/parallel.hpp"
#include "echosculpt/pulse_sequence.hpp"
#include "echosculpt/rng.hpp"
#include "echosculpt/scheduler.hpp"
#include "echosculpt/walsh.hpp"

namespace es = echosculpt;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kVerifyTolRad = 1e-9;

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const es::InfeasibleError*>(&e)) return 2;
    if (dynamic_cast<const es::BasisInfeasibleError*>(&e)) return 2;
    return 1;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

nlohmann::json manifest_base(const std::string& command, std::uint64_t seed) {
    nlohmann::json m;
    m["command"] = command;
    m["version"] = kVersion;
    m["seed"] = seed;
    m["threads"] = es::worker_count();
    m["kernel_backend"] = std::string(es::kernels::backend_name(es::kernels::active_backend()));
    m["tolerances"] = {{"tol_opt", 1e-10},
                       {"tol_feas_scale", 1e-10},
                       {"zero_time_rel", 1e-9},
                       {"verify_rad", kVerifyTolRad}};
    return m;
}

void add_input(nlohmann::json& m, const std::string& role, const std::string& path) {
    m["inputs"][role] = {{"path", path}, {"fnv1a", hex64(es::fnv1a_hash(es::read_text_file(path)))}};
}

void write_manifest(const nlohmann::json& m, const std::string& out_path) {
    es::write_text_file(out_path + ".manifest.json", m.dump(2) + "\n");
}

std::string mode_name(es::SolveMode m) {
    return m == es::SolveMode::symmetric ? "symmetric" : "direct";
}

es::SolveMode parse_mode(const std::string& s) {
    if (s == "symmetric") return es::SolveMode::symmetric;
    if (s == "direct") return es::SolveMode::direct;
    throw CLI::ValidationError("--mode must be 'symmetric' or 'direct'");
}

es::PermutationStrategy parse_perm(const std::string& s, std::uint64_t seed) {
    es::PermutationStrategy p;
    p.seed = es::derive_seed(seed, 0x7065726dull);
    if (s == "exhaustive") {
        p.kind = es::PermutationStrategy::Kind::exhaustive;
    } else if (s == "random") {
        p.kind = es::PermutationStrategy::Kind::random;
    } else if (s.rfind("random:", 0) == 0) {
        p.kind = es::PermutationStrategy::Kind::random;
        p.iterations = std::stoi(s.substr(7));
        if (p.iterations < 0) throw CLI::ValidationError("--perm random iteration count");
    } else {
        throw CLI::ValidationError("--perm must be 'exhaustive' or 'random:ITERS'");
    }
    return p;
}

double max_constrained_residual(const es::SpinSystem& sys, const es::PhaseTarget& tgt,
                                const std::vector<double>& achieved) {
    double worst = 0.0;
    for (int row = 0; row < sys.interaction_count(); ++row) {
        const es::Interaction x = es::row_interaction(sys.spin_count(), row);
        if (auto t = es::interaction_target(tgt, x))
            worst = std::max(worst, std::fabs(achieved[row] - *t));
    }
    return worst;
}

// ---------------------------------------------------------------- rescale

struct RescaleArgs {
    std::string system_path, target_path, out_path = "sequence.json";
    std::string mode = "symmetric", perm = "random:10000";
    std::optional<double> rros_k;
    std::uint64_t seed = 1;
    bool force_full = false, defer_one_spin = false;
};

int run_rescale(const RescaleArgs& args) {
    const es::SpinSystem sys = es::load_spin_system(args.system_path);
    const es::PhaseTarget tgt = es::load_phase_target(args.target_path, sys.spin_count());

    es::CompileOptions opts;
    opts.mode = parse_mode(args.mode);
    opts.rros_k = args.rros_k;
    opts.seed = args.seed;
    opts.perm = parse_perm(args.perm, args.seed);
    opts.force_full = args.force_full;
    opts.defer_one_spin = args.defer_one_spin;

    if (opts.mode == es::SolveMode::direct && tgt.has_nonzero_one_spin())
        std::cerr << "warning: direct networks with nonzero one-spin targets are sensitive "
                     "to clock rounding; prefer symmetric mode\n";

    const es::CompileResult result = es::compile_schedule(sys, tgt, opts);

    es::PulseSequence seq = es::emit_pulses(result.schedule);
    seq.metadata.mode = mode_name(opts.mode);
    seq.metadata.provenance = "rescale";
    seq.metadata.z_phase_post_rotations = result.deferred_z_phases;

    es::PhaseTarget effective = tgt;
    for (auto [spin, phase] : result.deferred_z_phases) {
        (void)phase;
        effective.one_spin[spin] = 0.0;
    }
    const double residual =
        max_constrained_residual(sys, effective, es::simulate_phases(sys, seq));

    es::save_sequence(args.out_path, seq);

    nlohmann::json m = manifest_base("rescale", args.seed);
    add_input(m, "system", args.system_path);
    add_input(m, "target", args.target_path);
    m["mode"] = args.mode;
    m["perm"] = args.perm;
    m["k"] = args.rros_k ? nlohmann::json(*args.rros_k) : nlohmann::json(nullptr);
    m["k_refine"] = 1.2;
    m["max_attempts"] = 3;
    m["defer_one_spin"] = args.defer_one_spin;
    m["force_full"] = args.force_full;
    m["outputs"] = {args.out_path};
    write_manifest(m, args.out_path);

    std::printf("total_time_s      %s\n", es::format_double(result.schedule.total_time()).c_str());
    std::printf("naive_time_s      %s\n", es::format_double(result.naive_time_s).c_str());
    std::printf("lower_bound_s     %s\n", es::format_double(result.lower_bound_s).c_str());
    std::printf("periods           %d\n", result.schedule.column_count());
    std::printf("pulses            %d\n", seq.pulse_count());
    std::printf("basis             %s\n", result.used_rros ? "rros" : "full");
    std::printf("optimality        %s\n",
                result.schedule.subset_optimal_only ? "subset-only" : "exact");
    std::printf("verify_residual   %s rad\n", es::format_double(residual).c_str());
    if (!result.deferred_z_phases.empty())
        std::printf("deferred z rotations recorded in metadata for %zu spin(s)\n",
                    result.deferred_z_phases.size());
    if (residual >= kVerifyTolRad) {
        std::cerr << "error: emitted sequence failed phase verification\n";
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------- refocus

struct RefocusArgs {
    std::string system_path, retain, phase = "pi", out_path = "sequence.json";
};

int run_refocus(const RefocusArgs& args) {
    const es::SpinSystem sys = es::load_spin_system(args.system_path);
    const double phase = es::parse_phase_literal(args.phase);

    es::Interaction retain{};
    const auto comma = args.retain.find(',');
    if (comma == std::string::npos) {
        retain = es::Interaction::offset(std::stoi(args.retain));
    } else {
        retain = es::Interaction::coupling(std::stoi(args.retain.substr(0, comma)),
                                           std::stoi(args.retain.substr(comma + 1)));
    }
    if (retain.spin_a < 0 || std::max(retain.spin_a, retain.spin_b) >= sys.spin_count())
        throw es::ParseError("--retain index out of range");

    const es::PulseSequence seq = es::build_refocusing_network(sys, retain, phase);
    es::save_sequence(args.out_path, seq);

    nlohmann::json m = manifest_base("refocus", 0);
    add_input(m, "system", args.system_path);
    m["retain"] = args.retain;
    m["phase"] = args.phase;
    m["outputs"] = {args.out_path};
    write_manifest(m, args.out_path);

    const int q = sys.spin_count();
    std::printf("retained          %s\n", es::interaction_name(retain).c_str());
    std::printf("total_time_s      %s\n", es::format_double(seq.total_time()).c_str());
    std::printf("periods           %zu\n", seq.segments.size());
    std::printf("pulses            %d\n", seq.pulse_count());
    if (retain.is_coupling())
        std::printf("pulse_bound       %d\n", q * (q - 1) / 2 + (q - 1 + 1) / 2 + 2);
    return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string system_path, sequence_path, target_path;
};

int run_verify(const VerifyArgs& args) {
    const es::SpinSystem sys = es::load_spin_system(args.system_path);
    const es::PulseSequence seq = es::load_sequence(args.sequence_path);
    std::optional<es::PhaseTarget> tgt;
    if (!args.target_path.empty())
        tgt = es::load_phase_target(args.target_path, sys.spin_count());

    const std::vector<double> achieved = es::simulate_phases(sys, seq);

    nlohmann::json m = manifest_base("verify", 0);
    add_input(m, "system", args.system_path);
    add_input(m, "sequence", args.sequence_path);
    if (tgt) add_input(m, "target", args.target_path);
    std::printf("# manifest %s\n", m.dump().c_str());

    double worst = 0.0;
    for (int row = 0; row < sys.interaction_count(); ++row) {
        const es::Interaction x = es::row_interaction(sys.spin_count(), row);
        std::printf("%-10s achieved % .12e", es::interaction_name(x).c_str(), achieved[row]);
        if (tgt) {
            const auto t = es::interaction_target(*tgt, x);
            if (t) {
                const double resid = std::fabs(achieved[row] - *t);
                worst = std::max(worst, resid);
                std::printf("  target % .12e  residual %.3e", *t, resid);
            } else {
                std::printf("  target free");
            }
        }
        std::printf("\n");
    }
    std::printf("max_residual_rad  %s\n", es::format_double(worst).c_str());
    return worst < kVerifyTolRad ? 0 : 1;
}

// ---------------------------------------------------------------- scan-rounding

struct ScanArgs {
    std::string system_path, sequence_path, target_path, out_path = "scan.csv";
    double res_from = 1e-3, res_to = 1e-9;
    int points = 121;
};

int run_scan(const ScanArgs& args) {
    const es::SpinSystem sys = es::load_spin_system(args.system_path);
    const es::PulseSequence seq = es::load_sequence(args.sequence_path);
    const es::PhaseTarget tgt = es::load_phase_target(args.target_path, sys.spin_count());

    const auto resolutions = es::log_spaced(args.res_from, args.res_to, args.points);
    const auto points = es::rounding_scan(sys, seq, tgt, resolutions);
    es::write_text_file(args.out_path, es::scan_to_csv(points));

    nlohmann::json m = manifest_base("scan-rounding", 0);
    add_input(m, "system", args.system_path);
    add_input(m, "sequence", args.sequence_path);
    add_input(m, "target", args.target_path);
    m["res_from"] = args.res_from;
    m["res_to"] = args.res_to;
    m["points"] = args.points;
    m["outputs"] = {args.out_path};
    write_manifest(m, args.out_path);

    std::printf("wrote %d scan points to %s\n", args.points, args.out_path.c_str());
    return 0;
}

// ---------------------------------------------------------------- rros-sweep

struct SweepArgs {
    int q = 12;
    double k_from = 1.0, k_to = 3.0;
    int k_steps = 5, trials = 200;
    std::uint64_t seed = 1;
    std::string out_path = "sweep.csv";
};

int run_sweep(const SweepArgs& args) {
    if (args.q < 2 || args.k_steps < 1 || args.trials < 1)
        throw CLI::ValidationError("rros-sweep: bad q/k-steps/trials");
    std::vector<double> ks(args.k_steps);
    for (int i = 0; i < args.k_steps; ++i)
        ks[i] = args.k_steps == 1
                    ? args.k_from
                    : args.k_from + (args.k_to - args.k_from) * i / (args.k_steps - 1);

    const int p = args.q * (args.q - 1) / 2;
    const std::size_t total = static_cast<std::size_t>(args.k_steps) * args.trials;
    std::vector<char> success(total, 0);

    es::parallel_for(total, [&](std::size_t idx) {
        const int ik = static_cast<int>(idx) / args.trials;
        const int trial = static_cast<int>(idx) % args.trials;
        const std::uint64_t trial_seed =
            es::derive_seed(es::derive_seed(args.seed, static_cast<std::uint64_t>(ik)),
                            static_cast<std::uint64_t>(trial));
        es::Rng rng(trial_seed);
        const es::SpinSystem sys = es::random_sweep_system(args.q, rng);
        const es::PhaseTarget tgt = es::random_sweep_target(args.q, rng);
        // One attempt per trial: the sweep measures per-sample feasibility.
        es::RrosConfig cfg;
        cfg.k = ks[ik];
        cfg.seed = es::derive_seed(trial_seed, 0x62617369ull);
        try {
            const es::SignMatrix basis = es::rros_basis(args.q, p, cfg, true);
            (void)es::solve_schedule(sys, tgt, basis, es::SolveMode::symmetric);
            success[idx] = 1;
        } catch (const es::BasisInfeasibleError&) {
        }
    });

    std::string csv = "k,successes,trials,fraction,ci_low,ci_high\n";
    std::vector<std::pair<double, double>> fit_points;
    for (int ik = 0; ik < args.k_steps; ++ik) {
        int s = 0;
        for (int t = 0; t < args.trials; ++t)
            s += success[static_cast<std::size_t>(ik) * args.trials + t];
        const double frac = static_cast<double>(s) / args.trials;
        const auto [lo, hi] = es::credible_interval(s, args.trials);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s,%d,%d,%s,%s,%s\n", es::format_csv(ks[ik]).c_str(),
                      s, args.trials, es::format_csv(frac).c_str(), es::format_csv(lo).c_str(),
                      es::format_csv(hi).c_str());
        csv += buf;
        fit_points.emplace_back(ks[ik], frac);
        std::printf("k=%.3f  success %d/%d (%.1f%%)  ci [%.3f, %.3f]\n", ks[ik], s,
                    args.trials, 100.0 * frac, lo, hi);
    }
    es::write_text_file(args.out_path, csv);

    nlohmann::json m = manifest_base("rros-sweep", args.seed);
    m["q"] = args.q;
    m["k_from"] = args.k_from;
    m["k_to"] = args.k_to;
    m["k_steps"] = args.k_steps;
    m["trials"] = args.trials;
    m["outputs"] = {args.out_path};
    write_manifest(m, args.out_path);

    try {
        const es::LogisticFit fit = es::logistic_fit(fit_points);
        std::printf("logistic fit: b=%.6g c=%.6g residual=%.3e\n", fit.b, fit.c, fit.residual);
    } catch (const std::exception& e) {
        std::printf("logistic fit skipped: %s\n", e.what());
    }
    return 0;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
    int q_from = 10, q_to = 20, trials = 3;
    double k = 4.0;
    std::uint64_t seed = 1;
    std::string out_path = "bench.csv";
};

int run_bench(const BenchArgs& args) {
    if (args.q_from < 2 || args.q_to < args.q_from || args.trials < 1)
        throw CLI::ValidationError("bench: bad q range or trials");
    std::string csv = "q,r,median_seconds\n";
    std::vector<double> log_r, log_t;
    for (int q = args.q_from; q <= args.q_to; ++q) {
        std::vector<double> secs;
        for (int t = 0; t < args.trials; ++t) {
            const std::uint64_t s =
                es::derive_seed(es::derive_seed(args.seed, static_cast<std::uint64_t>(q)),
                                static_cast<std::uint64_t>(t));
            es::Rng rng(s);
            const es::SpinSystem sys = es::random_sweep_system(q, rng);
            const es::PhaseTarget tgt = es::random_sweep_target(q, rng);
            es::RrosConfig cfg;
            cfg.k = args.k;
            cfg.seed = es::derive_seed(s, 0x62656e63ull);
            const auto start = std::chrono::steady_clock::now();
            (void)es::rros_solve(sys, tgt, cfg, es::SolveMode::symmetric);
            const auto stop = std::chrono::steady_clock::now();
            secs.push_back(std::chrono::duration<double>(stop - start).count());
        }
        std::sort(secs.begin(), secs.end());
        const double median = secs[secs.size() / 2];
        const int r = q * (q + 1) / 2;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%d,%d,%s\n", q, r, es::format_csv(median).c_str());
        csv += buf;
        std::printf("q=%d r=%d median %.4f s\n", q, r, median);
        log_r.push_back(std::log(static_cast<double>(r)));
        log_t.push_back(std::log(std::max(median, 1e-9)));
    }
    es::write_text_file(args.out_path, csv);

    nlohmann::json m = manifest_base("bench", args.seed);
    m["q_from"] = args.q_from;
    m["q_to"] = args.q_to;
    m["k"] = args.k;
    m["trials"] = args.trials;
    m["deterministic"] = false;  // wall-clock contents
    m["outputs"] = {args.out_path};
    write_manifest(m, args.out_path);

    if (log_r.size() >= 2) {
        // Informational log-log slope of time against r.
        const auto n = static_cast<double>(log_r.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < log_r.size(); ++i) {
            sx += log_r[i];
            sy += log_t[i];
            sxx += log_r[i] * log_r[i];
            sxy += log_r[i] * log_t[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        std::printf("log-log slope of median time vs r: %.2f\n", slope);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("ECHO_SCULPT_KERNELS")) {
        const std::string want = env;
        try {
            if (want == "scalar") es::kernels::set_backend(es::kernels::Backend::scalar);
            else if (want == "avx2") es::kernels::set_backend(es::kernels::Backend::avx2);
        } catch (const std::exception& e) {
            std::cerr << "warning: " << e.what() << "\n";
        }
    }

    CLI::App app{
        "echosculpt: compile always-on z/zz Hamiltonians and target phases into "
        "minimum-time spin-echo pulse schedules"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    RescaleArgs rescale;
    auto* cr = app.add_subcommand("rescale", "solve a full rescaling schedule");
    cr->add_option("--system", rescale.system_path, "spin-system JSON file")->required();
    cr->add_option("--target", rescale.target_path, "phase-target JSON file")->required();
    cr->add_option("--mode", rescale.mode, "symmetric|direct (default symmetric)");
    cr->add_option("--rros", rescale.rros_k, "RROS oversampling factor k");
    cr->add_option("--seed", rescale.seed, "random seed");
    cr->add_option("--perm", rescale.perm, "exhaustive|random:ITERS (default random:10000)");
    cr->add_option("--out", rescale.out_path, "output sequence file");
    cr->add_flag("--force-full", rescale.force_full, "allow the full basis beyond 20 spins");
    cr->add_flag("--defer-one-spin", rescale.defer_one_spin,
                 "symmetric mode: move nonzero one-spin targets into metadata z rotations");

    RefocusArgs refocus;
    auto* cf = app.add_subcommand("refocus", "isolate a single interaction");
    cf->add_option("--system", refocus.system_path, "spin-system JSON file")->required();
    cf->add_option("--retain", refocus.retain, "interaction: 'i' or 'i,j'")->required();
    cf->add_option("--phase", refocus.phase, "retained phase (e.g. pi, -pi/2, 1.57)");
    cf->add_option("--out", refocus.out_path, "output sequence file");

    VerifyArgs verify;
    auto* cv = app.add_subcommand("verify", "simulate a sequence and report phases");
    cv->add_option("--system", verify.system_path, "spin-system JSON file")->required();
    cv->add_option("--sequence", verify.sequence_path, "sequence JSON file")->required();
    cv->add_option("--target", verify.target_path, "optional phase-target file");

    ScanArgs scan;
    auto* cs = app.add_subcommand("scan-rounding", "clock-resolution infidelity scan");
    cs->add_option("--system", scan.system_path, "spin-system JSON file")->required();
    cs->add_option("--sequence", scan.sequence_path, "sequence JSON file")->required();
    cs->add_option("--target", scan.target_path, "phase-target JSON file")->required();
    cs->add_option("--res-from", scan.res_from, "coarsest resolution in seconds");
    cs->add_option("--res-to", scan.res_to, "finest resolution in seconds");
    cs->add_option("--points", scan.points, "number of log-spaced resolutions");
    cs->add_option("--out", scan.out_path, "output CSV");

    SweepArgs sweep;
    auto* cw = app.add_subcommand("rros-sweep", "RROS success-probability sweep over k");
    cw->add_option("--q", sweep.q, "spin count")->required();
    cw->add_option("--k-from", sweep.k_from, "lowest k");
    cw->add_option("--k-to", sweep.k_to, "highest k");
    cw->add_option("--k-steps", sweep.k_steps, "number of k values");
    cw->add_option("--trials", sweep.trials, "random instances per k");
    cw->add_option("--seed", sweep.seed, "random seed");
    cw->add_option("--out", sweep.out_path, "output CSV");

    BenchArgs bench;
    auto* cb = app.add_subcommand("bench", "RROS wall-clock benchmark");
    cb->add_option("--q-from", bench.q_from, "lowest spin count");
    cb->add_option("--q-to", bench.q_to, "highest spin count");
    cb->add_option("--k", bench.k, "RROS oversampling factor");
    cb->add_option("--trials", bench.trials, "instances per q");
    cb->add_option("--seed", bench.seed, "random seed");
    cb->add_option("--out", bench.out_path, "output CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cr->parsed()) return run_rescale(rescale);
        if (cf->parsed()) return run_refocus(refocus);
        if (cv->parsed()) return run_verify(verify);
        if (cs->parsed()) return run_scan(scan);
        if (cw->parsed()) return run_sweep(sweep);
        if (cb->parsed()) return run_bench(bench);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 1;
}
