#include <cmath>

#include "echosculpt/pulse_sequence.hpp"
#include "echosculpt/walsh.hpp"

namespace echosculpt {

PulseSequence build_refocusing_network(const SpinSystem& sys, const Interaction& retain,
                                       double phase_rad) {
    const int q = sys.spin_count();
    const double freq = interaction_frequency(sys, retain);
    if (freq == 0.0)
        throw InfeasibleError("cannot retain zero-frequency interaction " +
                              interaction_name(retain));

    // Retained coupling: both spins share W_1 so their product is W_0.
    // Retained offset: that spin sits on W_0 itself. Everyone else takes the
    // next unused Walsh function, so all remaining rows and products are
    // nonidentity and refocus over equal delays.
    std::vector<int> walsh_index(q, -1);
    int next = 0;
    if (retain.is_coupling()) {
        walsh_index[retain.spin_a] = walsh_index[retain.spin_b] = 1;
        next = 2;
    } else {
        walsh_index[retain.spin_a] = 0;
        next = 1;
    }
    for (int i = 0; i < q; ++i)
        if (walsh_index[i] < 0) walsh_index[i] = next++;

    int max_index = 0;
    for (int w : walsh_index) max_index = std::max(max_index, w);
    int length = 1;
    while (length <= max_index) length *= 2;

    const double signed_duration = phase_rad / freq;
    const double tau = std::fabs(signed_duration) / length;

    Schedule sched;
    sched.q = q;
    sched.form = ScheduleForm::direct;
    if (tau > 0.0) {
        std::vector<SignRow> rows(q);
        for (int i = 0; i < q; ++i) rows[i] = walsh_function(walsh_index[i], length);
        if (signed_duration < 0.0) {
            // Negate one retained row: extra pi pulses at both ends flip the
            // retained evolution's sign.
            for (auto& v : rows[retain.spin_a]) v = static_cast<std::int8_t>(-v);
        }
        for (int m = 0; m < length; ++m) {
            std::vector<std::int8_t> col(q);
            for (int i = 0; i < q; ++i) col[i] = rows[i][m];
            sched.columns.push_back(std::move(col));
            sched.times.push_back(tau);
        }
    }

    PulseSequence seq = emit_pulses(sched);
    seq.q = q;
    seq.metadata.mode = "refocus";
    seq.metadata.provenance = "refocusing network retaining " + interaction_name(retain);
    return seq;
}

}  // namespace echosculpt
