#pragma once

#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace echosculpt {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A constrained nonzero phase on an interaction whose frequency is zero.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Always-on z/zz Hamiltonian: q resonance offsets and up to q(q-1)/2
// couplings, all in angular frequency units (rad/s). Immutable after
// construction.
class SpinSystem {
  public:
    SpinSystem(int q, std::vector<double> offsets_rad,
               std::map<std::pair<int, int>, double> couplings_rad);

    int spin_count() const { return q_; }
    int pair_count() const { return q_ * (q_ - 1) / 2; }
    int interaction_count() const { return q_ * (q_ + 1) / 2; }

    double offset(int i) const { return offsets_.at(i); }
    // Zero for pairs that were never given.
    double coupling(int i, int j) const;

    const std::vector<double>& offsets() const { return offsets_; }
    const std::map<std::pair<int, int>, double>& couplings() const { return couplings_; }

  private:
    int q_;
    std::vector<double> offsets_;
    std::map<std::pair<int, int>, double> couplings_;  // keys i < j
};

// Desired phases in radians. A disengaged optional means the interaction is
// free to end at any phase; couplings not listed in a target file default to
// a constrained phase of zero.
struct PhaseTarget {
    std::vector<std::optional<double>> one_spin;
    std::map<std::pair<int, int>, std::optional<double>> two_spin;

    std::optional<double> one_spin_target(int i) const { return one_spin.at(i); }
    std::optional<double> two_spin_target(int i, int j) const {
        auto it = two_spin.find({i, j});
        return it == two_spin.end() ? std::optional<double>(0.0) : it->second;
    }
    bool has_nonzero_one_spin() const {
        for (const auto& t : one_spin)
            if (t && *t != 0.0) return true;
        return false;
    }
};

// One- or two-spin interaction label. spin_b < 0 marks a one-spin row.
struct Interaction {
    int spin_a;
    int spin_b;

    static Interaction offset(int i) { return {i, -1}; }
    static Interaction coupling(int i, int j) { return {i < j ? i : j, i < j ? j : i}; }
    bool is_coupling() const { return spin_b >= 0; }
    bool operator==(const Interaction&) const = default;
};

// Canonical row ordering: one-spin rows 0..q-1, then (i,j) pairs in
// lexicographic order. Bijective with 0..q(q+1)/2-1.
int interaction_row(int q, const Interaction& x);
Interaction row_interaction(int q, int row);
std::string interaction_name(const Interaction& x);

double interaction_frequency(const SpinSystem& sys, const Interaction& x);
std::optional<double> interaction_target(const PhaseTarget& tgt, const Interaction& x);

// Throws InfeasibleError if any constrained nonzero target sits on a
// zero-frequency interaction.
void screen_feasibility(const SpinSystem& sys, const PhaseTarget& tgt);

// Eq.-style sequential upper bound: sum of |target/frequency| over
// constrained rows; free rows and zero targets contribute nothing.
double naive_time(const SpinSystem& sys, const PhaseTarget& tgt);

// Slowest single gate on its own: max |target/frequency|; a firm lower
// bound on any schedule's total time.
double lower_bound_time(const SpinSystem& sys, const PhaseTarget& tgt);

}  // namespace echosculpt
