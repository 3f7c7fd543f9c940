#include "echosculpt/model.hpp"

#include <cmath>

namespace echosculpt {

SpinSystem::SpinSystem(int q, std::vector<double> offsets_rad,
                       std::map<std::pair<int, int>, double> couplings_rad)
    : q_(q), offsets_(std::move(offsets_rad)), couplings_(std::move(couplings_rad)) {
    if (q_ < 1) throw ParseError("spin count must be at least 1");
    if (static_cast<int>(offsets_.size()) != q_)
        throw ParseError("offsets length does not match spin count");
    for (double w : offsets_)
        if (!std::isfinite(w)) throw ParseError("non-finite offset frequency");
    for (const auto& [key, w] : couplings_) {
        auto [i, j] = key;
        if (i < 0 || j <= i || j >= q_)
            throw ParseError("coupling indices out of range: (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
        if (!std::isfinite(w)) throw ParseError("non-finite coupling frequency");
    }
}

double SpinSystem::coupling(int i, int j) const {
    if (i > j) std::swap(i, j);
    auto it = couplings_.find({i, j});
    return it == couplings_.end() ? 0.0 : it->second;
}

int interaction_row(int q, const Interaction& x) {
    if (!x.is_coupling()) return x.spin_a;
    const int i = x.spin_a, j = x.spin_b;
    return q + i * q - i * (i + 1) / 2 + (j - i - 1);
}

Interaction row_interaction(int q, int row) {
    if (row < q) return Interaction::offset(row);
    int k = row - q;
    for (int i = 0; i < q - 1; ++i) {
        const int span = q - 1 - i;
        if (k < span) return Interaction::coupling(i, i + 1 + k);
        k -= span;
    }
    throw std::out_of_range("interaction row out of range");
}

std::string interaction_name(const Interaction& x) {
    if (!x.is_coupling()) return "Phi_" + std::to_string(x.spin_a);
    return "phi_" + std::to_string(x.spin_a) + "," + std::to_string(x.spin_b);
}

double interaction_frequency(const SpinSystem& sys, const Interaction& x) {
    return x.is_coupling() ? sys.coupling(x.spin_a, x.spin_b) : sys.offset(x.spin_a);
}

std::optional<double> interaction_target(const PhaseTarget& tgt, const Interaction& x) {
    return x.is_coupling() ? tgt.two_spin_target(x.spin_a, x.spin_b)
                           : tgt.one_spin_target(x.spin_a);
}

void screen_feasibility(const SpinSystem& sys, const PhaseTarget& tgt) {
    const int q = sys.spin_count();
    for (int row = 0; row < sys.interaction_count(); ++row) {
        const Interaction x = row_interaction(q, row);
        const auto t = interaction_target(tgt, x);
        if (t && *t != 0.0 && interaction_frequency(sys, x) == 0.0)
            throw InfeasibleError("nonzero target on zero-frequency interaction " +
                                  interaction_name(x));
    }
}

double naive_time(const SpinSystem& sys, const PhaseTarget& tgt) {
    screen_feasibility(sys, tgt);
    const int q = sys.spin_count();
    double total = 0.0;
    for (int row = 0; row < sys.interaction_count(); ++row) {
        const Interaction x = row_interaction(q, row);
        const auto t = interaction_target(tgt, x);
        if (!t || *t == 0.0) continue;
        total += std::fabs(*t / interaction_frequency(sys, x));
    }
    return total;
}

double lower_bound_time(const SpinSystem& sys, const PhaseTarget& tgt) {
    screen_feasibility(sys, tgt);
    const int q = sys.spin_count();
    double bound = 0.0;
    for (int row = 0; row < sys.interaction_count(); ++row) {
        const Interaction x = row_interaction(q, row);
        const auto t = interaction_target(tgt, x);
        if (!t || *t == 0.0) continue;
        bound = std::max(bound, std::fabs(*t / interaction_frequency(sys, x)));
    }
    return bound;
}

}  // namespace echosculpt
