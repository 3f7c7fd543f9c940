#include "echosculpt/schedule.hpp"

#include "echosculpt/exact_sum.hpp"

namespace echosculpt {

double Schedule::total_time() const {
    double t = 0.0;
    for (double v : times) t += v;
    return t;
}

double Schedule::signed_time(const Interaction& x) const {
    ExactSum acc;
    for (std::size_t m = 0; m < columns.size(); ++m) {
        const int s = x.is_coupling()
                          ? columns[m][x.spin_a] * columns[m][x.spin_b]
                          : columns[m][x.spin_a];
        acc.add(s > 0 ? times[m] : -times[m]);
    }
    return acc.value();
}

double Schedule::achieved_phase(const SpinSystem& sys, const Interaction& x) const {
    return interaction_frequency(sys, x) * signed_time(x);
}

std::vector<double> Schedule::achieved_phases(const SpinSystem& sys) const {
    std::vector<double> out(sys.interaction_count());
    for (int row = 0; row < sys.interaction_count(); ++row)
        out[row] = achieved_phase(sys, row_interaction(q, row));
    return out;
}

int Schedule::pulse_count() const {
    int count = 0;
    for (int i = 0; i < q; ++i) {
        std::int8_t prev = 1;  // implicit all-+1 boundary columns
        for (const auto& col : columns) {
            if (col[i] != prev) ++count;
            prev = col[i];
        }
        if (prev != 1) ++count;
    }
    return count;
}

}  // namespace echosculpt
