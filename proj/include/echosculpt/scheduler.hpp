#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "echosculpt/lp.hpp"
#include "echosculpt/model.hpp"
#include "echosculpt/schedule.hpp"
#include "echosculpt/walsh.hpp"

namespace echosculpt {

enum class SolveMode { direct, symmetric };

// Raised when a particular column subset admits no nonnegative solution;
// RROS retries on this, a full basis never throws it for a screened target.
struct BasisInfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One equality row per constrained interaction: sum_m S_row,m tau_m = rhs
// seconds. Free rows and zero-frequency zero-target rows are omitted; in
// symmetric mode one-spin rows are omitted and two-spin targets halved.
struct ConstraintSystem {
    std::vector<Interaction> rows;
    std::vector<double> rhs_seconds;
};

ConstraintSystem assemble_constraints(const SpinSystem& sys, const PhaseTarget& tgt,
                                      SolveMode mode);

// Equality system over the basis columns with unit costs: minimize total
// time subject to every constrained row reaching its signed duration.
LpProblem build_lp_problem(const ConstraintSystem& cs, const SignMatrix& basis);

// Minimum-total-time schedule over the given sign-matrix columns. Throws
// BasisInfeasibleError when the columns cannot meet the targets.
Schedule solve_schedule(const SpinSystem& sys, const PhaseTarget& tgt,
                        const SignMatrix& basis, SolveMode mode);

struct PermutationStrategy {
    enum class Kind { exhaustive, random } kind = Kind::random;
    int iterations = 10000;
    std::uint64_t seed = 0;
};

// Reorders columns to minimize the pulse count; phases are column-order
// invariant. Exhaustive search above 8 columns falls back to the identity
// plus `iterations` random permutations.
Schedule optimize_permutation(const Schedule& s, const PermutationStrategy& strategy);

// R -> [R, -R] with the half times (times are halved first if the input is
// a direct-form schedule). Two-spin phases are preserved; one-spin phases
// cancel exactly, including after any rounding of the shared times.
Schedule symmetrize(const Schedule& s);

// Coalesce columns with identical sign patterns, summing their times.
Schedule merge_duplicate_columns(const Schedule& s);

struct RrosConfig {
    double k = 4.0;
    double k_refine = 1.2;
    int max_attempts = 3;
    std::uint64_t seed = 0;
};

// ceil(k * n_rows) distinct columns sampled uniformly without replacement;
// canonical_half restricts to columns whose first-spin sign is +1 (the only
// columns a symmetric search needs). The full S matrix is never materialized.
SignMatrix rros_basis(int q, int n_rows, const RrosConfig& config, bool canonical_half);

// Solve on a fresh random basis, resampling on infeasibility up to
// max_attempts times, then refine onto the ceil(k_refine * n_rows) columns
// with the largest times when that does not lengthen the schedule.
Schedule rros_solve(const SpinSystem& sys, const PhaseTarget& tgt, const RrosConfig& config,
                    SolveMode mode);

struct CompileOptions {
    SolveMode mode = SolveMode::symmetric;
    std::optional<double> rros_k;  // engaged explicitly; required above the full-basis cutoff
    double rros_k_refine = 1.2;
    int rros_max_attempts = 3;
    std::uint64_t seed = 0;
    PermutationStrategy perm{};
    bool force_full = false;      // override the q <= 20 exhaustive-basis cutoff
    bool defer_one_spin = false;  // symmetric mode: record nonzero one-spin targets
                                  // as metadata z-rotations instead of rejecting
};

struct CompileResult {
    Schedule schedule;  // final form (symmetrized and merged in symmetric mode)
    bool used_rros = false;
    double naive_time_s = 0.0;
    double lower_bound_s = 0.0;
    std::vector<std::pair<int, double>> deferred_z_phases;
};

inline constexpr int kFullBasisSpinCutoff = 20;

// assemble -> basis selection -> solve -> permute -> symmetrize+merge -> done.
CompileResult compile_schedule(const SpinSystem& sys, const PhaseTarget& tgt,
                               const CompileOptions& opts);

}  // namespace echosculpt
