#pragma once

#include <string>
#include <utility>
#include <vector>

#include "echosculpt/model.hpp"
#include "echosculpt/schedule.hpp"

namespace echosculpt {

struct PulseSegment {
    double delay_s = 0.0;
    std::vector<int> pulses_after;  // spins receiving a pi pulse after the delay
};

struct SequenceMetadata {
    std::string mode;        // "direct" | "symmetric" | "refocus"
    std::string provenance;  // generator note
    bool subset_optimal_only = false;
    // One-spin phases deferred to pulse-phase z rotations; bookkeeping only,
    // never simulated.
    std::vector<std::pair<int, double>> z_phase_post_rotations;
};

// Alternating delays and pi-pulse sets; the executable artifact. A leading
// zero-delay segment carries any pulses required before the first delay.
struct PulseSequence {
    int q = 0;
    std::vector<PulseSegment> segments;
    SequenceMetadata metadata;

    double total_time() const;
    int pulse_count() const;
    std::vector<int> per_spin_pulse_count() const;
};

// Pad R with all-+1 boundary columns and pulse every spin at each of its
// sign changes. Per-spin pulse parity is even by construction.
PulseSequence emit_pulses(const Schedule& schedule);

// Reconstruct every spin's sign trajectory from the pulse positions and
// accumulate all q(q+1)/2 phases (canonical row order). This is the
// independent verification oracle for every schedule producer; it shares no
// sign-trajectory code with emit_pulses.
std::vector<double> simulate_phases(const SpinSystem& sys, const PulseSequence& seq);

// Round every delay to the nearest multiple of the resolution, halves away
// from zero. Pulses are untouched.
PulseSequence round_times(PulseSequence seq, double resolution_s);

std::string serialize_sequence(const PulseSequence& seq);
PulseSequence parse_sequence(const std::string& json_text);
PulseSequence load_sequence(const std::string& path);
void save_sequence(const std::string& path, const PulseSequence& seq);

// Isolate one interaction at full strength while refocusing everything else:
// Walsh assignments with the retained rows on W_0 products, equal delays, and
// a global negation of one retained spin when the signed duration is negative.
PulseSequence build_refocusing_network(const SpinSystem& sys, const Interaction& retain,
                                       double phase_rad);

}  // namespace echosculpt
