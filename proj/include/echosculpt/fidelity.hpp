#pragma once

#include <string>
#include <utility>
#include <vector>

#include "echosculpt/model.hpp"
#include "echosculpt/pulse_sequence.hpp"

namespace echosculpt {

// Phase errors in radians: q one-spin entries and q(q-1)/2 two-spin entries
// in canonical pair order.
struct PhaseError {
    std::vector<double> one_spin;
    std::vector<double> two_spin;

    int spin_count() const { return static_cast<int>(one_spin.size()); }
    static PhaseError zeros(int q) {
        return {std::vector<double>(q, 0.0), std::vector<double>(q * (q - 1) / 2, 0.0)};
    }
};

// achieved - target per interaction; free targets contribute zero error.
PhaseError phase_error_from(const std::vector<double>& achieved, const PhaseTarget& tgt);

inline constexpr int kExactFidelityMaxSpins = 24;

// Propagator fidelity |tr(U^dag V)|^2 / |tr(U^dag U)|^2 for the diagonal
// error propagator: F = |sum_z exp(i theta(z))|^2 / 4^q over all 2^q states,
// theta(z) = sum_i dPhi_i s_i/2 + sum_{i<j} dphi_ij s_i s_j / 4 with
// s_i = +/-1. The sum is partitioned deterministically and each partition is
// compensated, so results are identical across runs.
double exact_fidelity(const PhaseError& error);

// Small-error estimate sum dphi^2 / 16; assumes a symmetrized network
// (warns on stderr when any one-spin error is nonzero).
double approx_infidelity(const PhaseError& error);

struct RoundingScanPoint {
    double resolution_s;
    double infidelity;
};

// For each resolution: round, re-simulate, difference against the target,
// and score 1 - exact_fidelity (q <= 24) or approx_infidelity (larger q).
std::vector<RoundingScanPoint> rounding_scan(const SpinSystem& sys, const PulseSequence& seq,
                                             const PhaseTarget& tgt,
                                             const std::vector<double>& resolutions_s);

std::string scan_to_csv(const std::vector<RoundingScanPoint>& points);

std::vector<double> log_spaced(double from, double to, int points);

}  // namespace echosculpt
