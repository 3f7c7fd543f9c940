#include "echosculpt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/distributions/beta.hpp>

#include "echosculpt/walsh.hpp"

namespace echosculpt {

namespace {

// Next k-combination of column indices in lexicographic order.
bool next_combination(std::vector<int>& idx, int m) {
    const int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < m - k + i) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

Schedule brute_force_min_time(const SpinSystem& sys, const PhaseTarget& tgt, SolveMode mode) {
    const int q = sys.spin_count();
    if (q > 4)
        throw std::invalid_argument("brute_force_min_time: q must be at most 4");
    const ConstraintSystem cs = assemble_constraints(sys, tgt, mode);
    Schedule best;
    best.q = q;
    best.form = mode == SolveMode::direct ? ScheduleForm::direct : ScheduleForm::symmetric_half;
    if (cs.rows.empty()) return best;

    SignMatrix basis = build_full_sign_matrix(q);
    if (mode == SolveMode::symmetric) {
        std::vector<std::vector<std::int8_t>> half;
        for (int m = 0; m < basis.column_count(); ++m) {
            auto col = basis.column(m);
            if (col[0] > 0) half.push_back(std::move(col));
        }
        basis = matrix_from_columns(q, half);
    }

    const int rows = static_cast<int>(cs.rows.size());
    const int cols = basis.column_count();
    Eigen::MatrixXd a(rows, cols);
    Eigen::VectorXd b(rows);
    for (int r = 0; r < rows; ++r) {
        b(r) = cs.rhs_seconds[r];
        const SignRow sr = basis.row(cs.rows[r]);
        for (int m = 0; m < cols; ++m) a(r, m) = sr[m];
    }

    double bnorm = 0.0;
    for (int r = 0; r < rows; ++r) bnorm = std::max(bnorm, std::fabs(b(r)));
    const double tol = 1e-10 * std::max(1.0, bnorm);  // matches the solver's tol_feas

    double best_time = std::numeric_limits<double>::infinity();
    std::vector<int> best_subset;
    Eigen::VectorXd best_x;

    if (b.lpNorm<Eigen::Infinity>() <= tol) {
        best_time = 0.0;  // the empty subset already meets an all-zero target
    }

    for (int size = 1; size <= rows && size <= cols; ++size) {
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i) idx[i] = i;
        do {
            Eigen::MatrixXd sub(rows, size);
            for (int c = 0; c < size; ++c) sub.col(c) = a.col(idx[c]);
            Eigen::VectorXd x = sub.colPivHouseholderQr().solve(b);
            if ((sub * x - b).lpNorm<Eigen::Infinity>() > tol) continue;
            bool nonneg = true;
            double total = 0.0;
            for (int c = 0; c < size; ++c) {
                if (x(c) < -tol) { nonneg = false; break; }
                total += std::max(x(c), 0.0);
            }
            if (!nonneg) continue;
            if (total < best_time - 1e-15) {
                best_time = total;
                best_subset = idx;
                best_x = x;
            }
        } while (next_combination(idx, cols));
    }

    if (!std::isfinite(best_time))
        throw BasisInfeasibleError("brute_force_min_time: no nonnegative subset solution");

    for (std::size_t c = 0; c < best_subset.size(); ++c) {
        const double t = std::max(best_x(static_cast<int>(c)), 0.0);
        if (t <= zero_time_threshold(best_time)) continue;
        best.columns.push_back(basis.column(best_subset[c]));
        best.times.push_back(t);
    }
    return best;
}

double logistic(double b, double c, double k) {
    return 1.0 / (1.0 + std::exp(-b * (k - c)));
}

namespace {

double logistic_residual(const std::vector<std::pair<double, double>>& pts, double b, double c) {
    double sum = 0.0;
    for (const auto& [k, f] : pts) {
        const double d = logistic(b, c, k) - f;
        sum += d * d;
    }
    return sum;
}

// Golden-section minimization of g over [lo, hi].
template <typename G>
double golden_min(G&& g, double lo, double hi, int iters = 80) {
    constexpr double phi = 0.6180339887498949;
    double a = lo, d = hi;
    double b = d - phi * (d - a), c = a + phi * (d - a);
    double gb = g(b), gc = g(c);
    for (int i = 0; i < iters; ++i) {
        if (gb < gc) {
            d = c;
            c = b;
            gc = gb;
            b = d - phi * (d - a);
            gb = g(b);
        } else {
            a = b;
            b = c;
            gb = gc;
            c = a + phi * (d - a);
            gc = g(c);
        }
    }
    return gb < gc ? b : c;
}

}  // namespace

LogisticFit logistic_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 4)
        throw std::invalid_argument("logistic_fit: need at least 4 points");
    double fmin = 1.0, fmax = 0.0, kmin = points[0].first, kmax = points[0].first;
    for (const auto& [k, f] : points) {
        fmin = std::min(fmin, f);
        fmax = std::max(fmax, f);
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
    }
    if (fmax < 1e-9 || fmin > 1.0 - 1e-9)
        throw std::invalid_argument("logistic_fit: degenerate data (all 0 or all 1)");

    const double span = std::max(kmax - kmin, 1e-6);
    double best_b = 1.0, best_c = 0.5 * (kmin + kmax);
    double best_r = std::numeric_limits<double>::infinity();
    for (int ib = 0; ib <= 128; ++ib) {
        const double b = std::exp(std::log(1e-2) +
                                  (std::log(1e3) - std::log(1e-2)) * ib / 128.0);
        for (int ic = 0; ic <= 128; ++ic) {
            const double c = kmin - span + 3.0 * span * ic / 128.0;
            const double r = logistic_residual(points, b, c);
            if (r < best_r) {
                best_r = r;
                best_b = b;
                best_c = c;
            }
        }
    }

    double wb = best_b, wc = span;
    for (int round = 0; round < 120; ++round) {
        best_b = golden_min(
            [&](double b) { return logistic_residual(points, b, best_c); },
            std::max(best_b - wb, 1e-4), best_b + wb);
        best_c = golden_min(
            [&](double c) { return logistic_residual(points, best_b, c); },
            best_c - wc, best_c + wc);
        wb *= 0.7;
        wc *= 0.7;
    }
    return {best_b, best_c, logistic_residual(points, best_b, best_c)};
}

std::pair<double, double> credible_interval(int successes, int trials) {
    if (trials < 1 || successes < 0 || successes > trials)
        throw std::invalid_argument("credible_interval: need 0 <= successes <= trials");
    const boost::math::beta_distribution<double> posterior(successes + 1.0,
                                                           trials - successes + 1.0);
    return {boost::math::quantile(posterior, 0.16), boost::math::quantile(posterior, 0.84)};
}

}  // namespace echosculpt
