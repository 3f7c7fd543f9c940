#pragma once

#include <cstdint>
#include <vector>

#include "echosculpt/model.hpp"

namespace echosculpt {

// direct:          every constrained interaction solved in one block
// symmetric_half:  the R block of a symmetric network, two-spin targets halved
// symmetric:       R followed by -R; one-spin phases cancel identically
enum class ScheduleForm { direct, symmetric_half, symmetric };

// A reduced sign matrix R (stored as its one-spin columns; two-spin rows are
// derived products) paired with the nonnegative evolution time of each column.
struct Schedule {
    int q = 0;
    ScheduleForm form = ScheduleForm::direct;
    std::vector<std::vector<std::int8_t>> columns;  // each of length q
    std::vector<double> times;                      // seconds
    bool subset_optimal_only = false;               // RROS basis marker

    int column_count() const { return static_cast<int>(columns.size()); }
    double total_time() const;

    // Exact signed time sum for one interaction row of R.
    double signed_time(const Interaction& x) const;
    double achieved_phase(const SpinSystem& sys, const Interaction& x) const;
    // All q(q+1)/2 phases in canonical row order.
    std::vector<double> achieved_phases(const SpinSystem& sys) const;

    // Boundary-inclusive sign changes summed over the one-spin rows; the
    // number of pi pulses the column order costs.
    int pulse_count() const;
};

}  // namespace echosculpt
