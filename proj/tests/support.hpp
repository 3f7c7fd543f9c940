#pragma once

#include <map>
#include <optional>
#include <vector>

#include "echosculpt/model.hpp"
#include "echosculpt/rng.hpp"
#include "echosculpt/schedule.hpp"

namespace echosculpt::test {

// Four-spin reduced network with nine periods; the workhorse fixture for the
// symmetrization and pulse-emission counts.
inline Schedule chain4_reduced_schedule() {
    const int signs[4][9] = {
        {+1, +1, -1, -1, -1, -1, +1, +1, +1},
        {+1, +1, +1, -1, -1, -1, -1, +1, +1},
        {+1, +1, +1, +1, -1, -1, -1, -1, -1},
        {+1, -1, -1, +1, +1, -1, -1, -1, +1},
    };
    const double times_ms[9] = {3.5, 1.3, 1.8, 3.0, 1.8, 3.0, 1.8, 1.7, 1.3};
    Schedule s;
    s.q = 4;
    s.form = ScheduleForm::direct;
    for (int m = 0; m < 9; ++m) {
        std::vector<std::int8_t> col(4);
        for (int i = 0; i < 4; ++i) col[i] = static_cast<std::int8_t>(signs[i][m]);
        s.columns.push_back(std::move(col));
        s.times.push_back(times_ms[m] * 1e-3);
    }
    return s;
}

inline SpinSystem make_system(int q, std::vector<double> offsets_hz,
                              std::vector<std::tuple<int, int, double>> couplings_hz) {
    std::vector<double> offsets(q);
    for (int i = 0; i < q; ++i) offsets[i] = kTwoPi * offsets_hz.at(i);
    std::map<std::pair<int, int>, double> couplings;
    for (auto [i, j, hz] : couplings_hz) couplings[{i, j}] = kTwoPi * hz;
    return SpinSystem(q, std::move(offsets), std::move(couplings));
}

inline PhaseTarget zero_target(int q) {
    PhaseTarget tgt;
    tgt.one_spin.assign(q, 0.0);
    return tgt;
}

// Random fully coupled system with frequencies log-uniform in [1, 100] Hz
// and random signs on the offsets.
inline SpinSystem random_system(int q, Rng& rng) {
    std::vector<double> offsets(q);
    for (int i = 0; i < q; ++i)
        offsets[i] = (rng.coin() ? 1.0 : -1.0) * kTwoPi * rng.log_uniform(1.0, 100.0);
    std::map<std::pair<int, int>, double> couplings;
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j)
            couplings[{i, j}] = kTwoPi * rng.log_uniform(1.0, 100.0);
    return SpinSystem(q, std::move(offsets), std::move(couplings));
}

// Mixed target: couplings uniform in [-pi, pi] with a sprinkling of frees
// and zeros; one-spin targets zero unless allow_one_spin.
inline PhaseTarget random_target(int q, Rng& rng, bool allow_one_spin) {
    PhaseTarget tgt;
    tgt.one_spin.resize(q);
    for (int i = 0; i < q; ++i) {
        if (allow_one_spin && rng.uniform() < 0.5)
            tgt.one_spin[i] = rng.uniform(-kPi, kPi);
        else if (rng.uniform() < 0.2)
            tgt.one_spin[i] = std::nullopt;  // free
        else
            tgt.one_spin[i] = 0.0;
    }
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) {
            const double u = rng.uniform();
            if (u < 0.15)
                tgt.two_spin[{i, j}] = std::nullopt;
            else if (u < 0.3)
                tgt.two_spin[{i, j}] = 0.0;
            else
                tgt.two_spin[{i, j}] = rng.uniform(-kPi, kPi);
        }
    return tgt;
}

}  // namespace echosculpt::test
