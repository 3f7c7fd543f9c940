#include "echosculpt/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "echosculpt/rng.hpp"

namespace echosculpt {

namespace {

constexpr double kPhaseResidualTol = 1e-9;  // rad, schedule verification

}  // namespace

LpProblem build_lp_problem(const ConstraintSystem& cs, const SignMatrix& basis) {
    const std::size_t rows = cs.rows.size();
    const std::size_t cols = basis.column_count();
    LpProblem p;
    p.a = DenseMatrix(rows, cols);
    p.b = cs.rhs_seconds;
    p.c.assign(cols, 1.0);
    for (std::size_t r = 0; r < rows; ++r) {
        const Interaction& x = cs.rows[r];
        if (x.is_coupling()) {
            const SignRow& a = basis.one_spin_rows[x.spin_a];
            const SignRow& b = basis.one_spin_rows[x.spin_b];
            for (std::size_t m = 0; m < cols; ++m) p.a.at(r, m) = a[m] * b[m];
        } else {
            const SignRow& a = basis.one_spin_rows[x.spin_a];
            for (std::size_t m = 0; m < cols; ++m) p.a.at(r, m) = a[m];
        }
    }
    return p;
}

namespace {

double max_phase_residual(const SpinSystem& sys, const ConstraintSystem& cs,
                          const Schedule& sched) {
    double worst = 0.0;
    for (std::size_t r = 0; r < cs.rows.size(); ++r) {
        const double freq = interaction_frequency(sys, cs.rows[r]);
        const double resid = std::fabs(freq) *
                             std::fabs(sched.signed_time(cs.rows[r]) - cs.rhs_seconds[r]);
        worst = std::max(worst, resid);
    }
    return worst;
}

Schedule schedule_from_solution(const SpinSystem& sys, const ConstraintSystem& cs,
                                const SignMatrix& basis, const std::vector<double>& x,
                                SolveMode mode) {
    Schedule sched;
    sched.q = basis.q;
    sched.form = mode == SolveMode::direct ? ScheduleForm::direct : ScheduleForm::symmetric_half;

    double total = 0.0;
    for (double v : x) total += std::max(v, 0.0);
    const double threshold = zero_time_threshold(total);

    auto collect = [&](double cutoff) {
        sched.columns.clear();
        sched.times.clear();
        for (std::size_t m = 0; m < x.size(); ++m)
            if (x[m] > cutoff) {
                sched.columns.push_back(basis.column(static_cast<int>(m)));
                sched.times.push_back(x[m]);
            }
    };
    collect(threshold);
    if (max_phase_residual(sys, cs, sched) >= kPhaseResidualTol) {
        // A sub-threshold column carried real phase weight; keep everything
        // strictly positive instead.
        collect(0.0);
    }
    return sched;
}

}  // namespace

ConstraintSystem assemble_constraints(const SpinSystem& sys, const PhaseTarget& tgt,
                                      SolveMode mode) {
    screen_feasibility(sys, tgt);
    const int q = sys.spin_count();
    ConstraintSystem cs;
    for (int row = 0; row < sys.interaction_count(); ++row) {
        const Interaction x = row_interaction(q, row);
        const auto target = interaction_target(tgt, x);
        if (!target) continue;
        if (mode == SolveMode::symmetric && !x.is_coupling()) {
            if (*target != 0.0)
                throw InfeasibleError(
                    "symmetric mode cannot realize a nonzero one-spin target on " +
                    interaction_name(x) +
                    "; use direct mode or defer it to pulse-phase z rotations");
            continue;  // cancelled by the mirrored half regardless
        }
        const double freq = interaction_frequency(sys, x);
        if (freq == 0.0) continue;  // screened: target must be zero here
        double rhs = *target / freq;
        if (mode == SolveMode::symmetric) rhs *= 0.5;
        cs.rows.push_back(x);
        cs.rhs_seconds.push_back(rhs);
    }
    return cs;
}

Schedule solve_schedule(const SpinSystem& sys, const PhaseTarget& tgt,
                        const SignMatrix& basis, SolveMode mode) {
    const ConstraintSystem cs = assemble_constraints(sys, tgt, mode);
    Schedule empty;
    empty.q = sys.spin_count();
    empty.form = mode == SolveMode::direct ? ScheduleForm::direct : ScheduleForm::symmetric_half;
    if (cs.rows.empty()) return empty;

    const LpProblem problem = build_lp_problem(cs, basis);
    const LpSolution sol = solve_lp(problem);
    switch (sol.status) {
        case LpStatus::optimal:
            break;
        case LpStatus::infeasible:
            throw BasisInfeasibleError("no nonnegative solution over the given columns");
        case LpStatus::unbounded:
            throw std::logic_error("solve_schedule: total time cannot be unbounded");
        case LpStatus::iteration_limit:
            throw std::runtime_error("solve_schedule: simplex iteration limit exceeded");
    }
    if (!sol.certificate_ok)
        throw std::runtime_error("solve_schedule: optimality certificate failed");

    Schedule sched = schedule_from_solution(sys, cs, basis, sol.x, mode);
    if (sched.column_count() > static_cast<int>(cs.rows.size()))
        throw std::logic_error("solve_schedule: vertex has more columns than constraints");
    if (max_phase_residual(sys, cs, sched) >= kPhaseResidualTol)
        throw std::runtime_error("solve_schedule: phase verification failed");
    return sched;
}

namespace {

Schedule apply_permutation(const Schedule& s, const std::vector<int>& perm) {
    Schedule out = s;
    for (std::size_t m = 0; m < perm.size(); ++m) {
        out.columns[m] = s.columns[perm[m]];
        out.times[m] = s.times[perm[m]];
    }
    return out;
}

int permuted_pulse_count(const Schedule& s, const std::vector<int>& perm) {
    int count = 0;
    for (int i = 0; i < s.q; ++i) {
        std::int8_t prev = 1;
        for (int m : perm) {
            if (s.columns[m][i] != prev) ++count;
            prev = s.columns[m][i];
        }
        if (prev != 1) ++count;
    }
    return count;
}

}  // namespace

Schedule optimize_permutation(const Schedule& s, const PermutationStrategy& strategy) {
    const int n = s.column_count();
    if (n <= 1) return s;

    std::vector<int> identity(n);
    std::iota(identity.begin(), identity.end(), 0);
    std::vector<int> best = identity;
    int best_count = permuted_pulse_count(s, identity);

    if (strategy.kind == PermutationStrategy::Kind::exhaustive && n <= 8) {
        std::vector<int> perm = identity;
        while (std::next_permutation(perm.begin(), perm.end())) {
            const int c = permuted_pulse_count(s, perm);
            if (c < best_count) {
                best_count = c;
                best = perm;
            }
        }
    } else {
        Rng rng(strategy.seed);
        std::vector<int> perm(n);
        for (int it = 0; it < strategy.iterations; ++it) {
            perm = identity;
            rng.shuffle(perm);
            const int c = permuted_pulse_count(s, perm);
            if (c < best_count) {
                best_count = c;
                best = perm;
            }
        }
    }
    return apply_permutation(s, best);
}

Schedule symmetrize(const Schedule& s) {
    if (s.form == ScheduleForm::symmetric) return s;
    const double scale = s.form == ScheduleForm::symmetric_half ? 1.0 : 0.5;
    Schedule out;
    out.q = s.q;
    out.form = ScheduleForm::symmetric;
    out.subset_optimal_only = s.subset_optimal_only;
    out.columns.reserve(2 * s.columns.size());
    out.times.reserve(2 * s.times.size());
    for (std::size_t m = 0; m < s.columns.size(); ++m) {
        out.columns.push_back(s.columns[m]);
        out.times.push_back(scale * s.times[m]);
    }
    for (std::size_t m = 0; m < s.columns.size(); ++m) {
        std::vector<std::int8_t> neg(s.columns[m].size());
        for (std::size_t i = 0; i < neg.size(); ++i)
            neg[i] = static_cast<std::int8_t>(-s.columns[m][i]);
        out.columns.push_back(std::move(neg));
        out.times.push_back(scale * s.times[m]);
    }
    return out;
}

Schedule merge_duplicate_columns(const Schedule& s) {
    Schedule out;
    out.q = s.q;
    out.form = s.form;
    out.subset_optimal_only = s.subset_optimal_only;
    std::map<std::vector<std::int8_t>, std::size_t> seen;
    for (std::size_t m = 0; m < s.columns.size(); ++m) {
        auto [it, inserted] = seen.try_emplace(s.columns[m], out.columns.size());
        if (inserted) {
            out.columns.push_back(s.columns[m]);
            out.times.push_back(s.times[m]);
        } else {
            out.times[it->second] += s.times[m];
        }
    }
    return out;
}

SignMatrix rros_basis(int q, int n_rows, const RrosConfig& config, bool canonical_half) {
    if (q < 1 || q > 62) throw std::invalid_argument("rros_basis: q out of range");
    if (config.k < 1.0) throw std::invalid_argument("rros_basis: k must be at least 1");
    if (n_rows < 1) throw std::invalid_argument("rros_basis: no constraint rows");
    const std::uint64_t space = canonical_half ? (1ull << (q - 1)) : (1ull << q);
    const auto count = static_cast<std::uint64_t>(
        std::ceil(config.k * static_cast<double>(n_rows)));
    if (count > space)
        throw std::invalid_argument("rros_basis: k*r exceeds the available column space");

    Rng rng(config.seed);
    const auto indices = rng.sample_without_replacement(space, count);
    std::vector<std::vector<std::int8_t>> columns;
    columns.reserve(indices.size());
    for (std::uint64_t h : indices)
        columns.push_back(column_from_index(canonical_half ? 2 * h : h, q));
    return matrix_from_columns(q, columns);
}

namespace {

// Re-solve on the columns carrying the largest times; accept only when the
// refined schedule is no longer than the first.
Schedule refine_rros(const SpinSystem& sys, const PhaseTarget& tgt, SolveMode mode,
                     const SignMatrix& basis, const Schedule& first,
                     const RrosConfig& config, int n_rows) {
    const auto target_count =
        static_cast<std::size_t>(std::ceil(config.k_refine * n_rows));
    if (config.k_refine < 1.0 || target_count >= static_cast<std::size_t>(basis.column_count()))
        return first;
    if (first.columns.size() >= target_count) return first;

    // Solution columns first (largest times), padded with unused columns.
    std::vector<std::size_t> order(first.columns.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return first.times[a] > first.times[b];
    });
    std::map<std::vector<std::int8_t>, int> used;
    std::vector<std::vector<std::int8_t>> subset;
    for (std::size_t idx : order) {
        subset.push_back(first.columns[idx]);
        used[first.columns[idx]] = 1;
    }
    for (int m = 0; m < basis.column_count() && subset.size() < target_count; ++m) {
        auto col = basis.column(m);
        if (!used.count(col)) {
            used[col] = 1;
            subset.push_back(std::move(col));
        }
    }

    try {
        Schedule refined = solve_schedule(sys, tgt, matrix_from_columns(basis.q, subset), mode);
        refined.subset_optimal_only = first.subset_optimal_only;
        const double tol = 1e-12 * std::max(1.0, first.total_time());
        if (refined.total_time() <= first.total_time() + tol) return refined;
    } catch (const BasisInfeasibleError&) {
    }
    return first;
}

}  // namespace

Schedule rros_solve(const SpinSystem& sys, const PhaseTarget& tgt, const RrosConfig& config,
                    SolveMode mode) {
    if (config.k_refine < 1.0)
        throw std::invalid_argument("rros_solve: k_refine must be at least 1");
    if (config.max_attempts < 1)
        throw std::invalid_argument("rros_solve: max_attempts must be at least 1");
    const ConstraintSystem cs = assemble_constraints(sys, tgt, mode);
    if (cs.rows.empty()) {
        Schedule empty;
        empty.q = sys.spin_count();
        empty.form =
            mode == SolveMode::direct ? ScheduleForm::direct : ScheduleForm::symmetric_half;
        return empty;
    }
    const int n_rows = static_cast<int>(cs.rows.size());
    const bool half = mode == SolveMode::symmetric;
    const std::uint64_t space =
        half ? (1ull << (sys.spin_count() - 1)) : (1ull << sys.spin_count());

    for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
        RrosConfig attempt_config = config;
        attempt_config.seed = derive_seed(config.seed, static_cast<std::uint64_t>(attempt));
        const SignMatrix basis = rros_basis(sys.spin_count(), n_rows, attempt_config, half);
        try {
            Schedule sched = solve_schedule(sys, tgt, basis, mode);
            sched.subset_optimal_only =
                static_cast<std::uint64_t>(basis.column_count()) < space;
            return refine_rros(sys, tgt, mode, basis, sched, attempt_config, n_rows);
        } catch (const BasisInfeasibleError&) {
        }
    }
    throw BasisInfeasibleError("rros_solve: no feasible column subset after " +
                               std::to_string(config.max_attempts) + " attempts");
}

CompileResult compile_schedule(const SpinSystem& sys, const PhaseTarget& tgt,
                               const CompileOptions& opts) {
    const int q = sys.spin_count();
    CompileResult result;

    PhaseTarget effective = tgt;
    if (opts.mode == SolveMode::symmetric && opts.defer_one_spin) {
        for (int i = 0; i < q; ++i)
            if (effective.one_spin[i] && *effective.one_spin[i] != 0.0) {
                result.deferred_z_phases.emplace_back(i, *effective.one_spin[i]);
                effective.one_spin[i] = 0.0;
            }
    }
    screen_feasibility(sys, effective);
    result.naive_time_s = naive_time(sys, effective);
    result.lower_bound_s = lower_bound_time(sys, effective);

    const double r_total = q * (q + 1) / 2;
    bool use_full;
    if (opts.rros_k) {
        use_full = q <= kFullBasisSpinCutoff &&
                   std::ldexp(1.0, q) <= 2.0 * (*opts.rros_k) * r_total;
    } else if (q <= kFullBasisSpinCutoff || opts.force_full) {
        use_full = true;
    } else {
        throw std::invalid_argument(
            "exhaustive basis is impractical beyond " + std::to_string(kFullBasisSpinCutoff) +
            " spins; pass an RROS oversampling factor (--rros) or force the full basis");
    }

    Schedule sched;
    if (use_full) {
        SignMatrix basis = build_full_sign_matrix(q);
        if (opts.mode == SolveMode::symmetric && q >= 1) {
            // The mirrored half supplies the second half of S: search only
            // columns whose first-spin sign is +1.
            std::vector<std::vector<std::int8_t>> first_half;
            const int cols = basis.column_count();
            for (int m = 0; m < cols; ++m) {
                auto col = basis.column(m);
                if (col[0] > 0) first_half.push_back(std::move(col));
            }
            basis = matrix_from_columns(q, first_half);
        }
        sched = solve_schedule(sys, effective, basis, opts.mode);
    } else {
        RrosConfig rc;
        rc.k = *opts.rros_k;
        rc.k_refine = opts.rros_k_refine;
        rc.max_attempts = opts.rros_max_attempts;
        rc.seed = opts.seed;
        sched = rros_solve(sys, effective, rc, opts.mode);
        result.used_rros = true;
    }

    PermutationStrategy perm = opts.perm;
    if (perm.seed == 0) perm.seed = derive_seed(opts.seed, 0x7065726dull);
    sched = optimize_permutation(sched, perm);

    if (opts.mode == SolveMode::symmetric)
        sched = merge_duplicate_columns(symmetrize(sched));

    result.schedule = std::move(sched);
    return result;
}

}  // namespace echosculpt
