#pragma once

#include <utility>
#include <vector>

#include "echosculpt/model.hpp"
#include "echosculpt/schedule.hpp"
#include "echosculpt/scheduler.hpp"

namespace echosculpt {

// Exhaustive minimum-time reference: enumerate every column subset of the
// full basis up to the constraint count, solve each by least squares, keep
// nonnegative consistent solutions, return the shortest. Independent of the
// simplex path; q <= 4 only.
Schedule brute_force_min_time(const SpinSystem& sys, const PhaseTarget& tgt, SolveMode mode);

struct LogisticFit {
    double b = 0.0;        // transition sharpness
    double c = 0.0;        // 50% success point
    double residual = 0.0; // sum of squared errors
};

double logistic(double b, double c, double k);

// Least-squares fit of f(k) = 1 / (1 + exp(-b (k - c))) by grid search plus
// coordinate refinement.
LogisticFit logistic_fit(const std::vector<std::pair<double, double>>& points);

// Central +/-34% credible region of the Beta(s+1, n-s+1) posterior.
std::pair<double, double> credible_interval(int successes, int trials);

}  // namespace echosculpt
