#include "echosculpt/instances.hpp"

namespace echosculpt {

SpinSystem random_sweep_system(int q, Rng& rng) {
    std::vector<double> offsets(q);
    for (int i = 0; i < q; ++i) offsets[i] = kTwoPi * rng.log_uniform(1.0, 100.0);
    std::map<std::pair<int, int>, double> couplings;
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j)
            couplings[{i, j}] = kTwoPi * rng.log_uniform(1.0, 100.0);
    return SpinSystem(q, std::move(offsets), std::move(couplings));
}

PhaseTarget random_sweep_target(int q, Rng& rng) {
    PhaseTarget tgt;
    tgt.one_spin.assign(q, 0.0);
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) tgt.two_spin[{i, j}] = rng.uniform(-kPi, kPi);
    return tgt;
}

}  // namespace echosculpt
