#pragma once

#include "echosculpt/model.hpp"
#include "echosculpt/rng.hpp"

namespace echosculpt {

// Fixed random-instance family for sweeps and benchmarks: every offset and
// coupling log-uniform in [1, 100] Hz, coupling targets uniform in
// [-pi, pi], one-spin targets zero. Draw order is part of the contract so
// seeded results are reproducible.
SpinSystem random_sweep_system(int q, Rng& rng);
PhaseTarget random_sweep_target(int q, Rng& rng);

}  // namespace echosculpt
