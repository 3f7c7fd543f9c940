#include "echosculpt/lp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "echosculpt/kernels.hpp"

namespace echosculpt {

namespace {

constexpr double kPivotTol = 1e-9;       // smallest usable ratio-test pivot
constexpr double kDriveOutTol = 1e-8;    // pivot size when expelling artificials
constexpr double kSingularTol = 1e-13;   // LU pivot threshold (relative)

// LU factorization of the current basis (partial pivoting) plus a
// product-form eta file for the pivots applied since the last refactor.
class BasisFactor {
  public:
    void factor(std::size_t n, const std::vector<std::vector<double>>& cols) {
        n_ = n;
        lu_.assign(n * n, 0.0);
        ipiv_.assign(n, 0);
        etas_.clear();
        for (std::size_t j = 0; j < n; ++j)
            std::copy(cols[j].begin(), cols[j].end(), lu_.begin() + j * n);

        const auto& K = kernels::active();
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            double best = std::fabs(lu_[k * n + k]);
            for (std::size_t i = k + 1; i < n; ++i) {
                const double v = std::fabs(lu_[k * n + i]);
                if (v > best) { best = v; p = i; }
            }
            if (best < kSingularTol)
                throw std::runtime_error("simplex: singular basis matrix");
            ipiv_[k] = static_cast<int>(p);
            if (p != k)
                for (std::size_t j = 0; j < n; ++j)
                    std::swap(lu_[j * n + k], lu_[j * n + p]);
            const double piv = lu_[k * n + k];
            for (std::size_t i = k + 1; i < n; ++i) lu_[k * n + i] /= piv;
            for (std::size_t j = k + 1; j < n; ++j) {
                const double m = lu_[j * n + k];
                if (m != 0.0)
                    K.axpy(-m, &lu_[k * n + k + 1], &lu_[j * n + k + 1], n - k - 1);
            }
        }
    }

    // Solve B x = v in place.
    void ftran(std::vector<double>& v) const {
        const auto& K = kernels::active();
        for (std::size_t k = 0; k < n_; ++k)
            if (static_cast<std::size_t>(ipiv_[k]) != k) std::swap(v[k], v[ipiv_[k]]);
        for (std::size_t k = 0; k < n_; ++k)
            if (v[k] != 0.0) K.axpy(-v[k], &lu_[k * n_ + k + 1], &v[k + 1], n_ - k - 1);
        for (std::size_t k = n_; k-- > 0;) {
            v[k] /= lu_[k * n_ + k];
            if (v[k] != 0.0 && k > 0) K.axpy(-v[k], &lu_[k * n_], v.data(), k);
        }
        for (const auto& e : etas_) {
            const double xt = v[e.pos] / e.d[e.pos];
            K.axpy(-xt, e.d.data(), v.data(), n_);
            v[e.pos] = xt;
        }
    }

    // Solve B^T y = v in place.
    void btran(std::vector<double>& v) const {
        const auto& K = kernels::active();
        for (std::size_t e = etas_.size(); e-- > 0;) {
            const auto& eta = etas_[e];
            const double s = K.dot(eta.d.data(), v.data(), n_) - eta.d[eta.pos] * v[eta.pos];
            v[eta.pos] = (v[eta.pos] - s) / eta.d[eta.pos];
        }
        for (std::size_t k = 0; k < n_; ++k) {
            const double s = k ? K.dot(&lu_[k * n_], v.data(), k) : 0.0;
            v[k] = (v[k] - s) / lu_[k * n_ + k];
        }
        for (std::size_t k = n_; k-- > 0;)
            v[k] -= K.dot(&lu_[k * n_ + k + 1], &v[k + 1], n_ - k - 1);
        for (std::size_t k = n_; k-- > 0;)
            if (static_cast<std::size_t>(ipiv_[k]) != k) std::swap(v[k], v[ipiv_[k]]);
    }

    void push_eta(int pos, std::vector<double> d) { etas_.push_back({pos, std::move(d)}); }
    std::size_t eta_count() const { return etas_.size(); }

  private:
    struct Eta {
        int pos;
        std::vector<double> d;
    };
    std::size_t n_ = 0;
    std::vector<double> lu_;
    std::vector<int> ipiv_;
    std::vector<Eta> etas_;
};

struct WorkProblem {
    std::size_t rows = 0, cols = 0;
    DenseMatrix a;                // rows x cols, row signs applied so b >= 0
    std::vector<double> b;        // >= 0
    std::vector<int> kept;        // original row index per work row
    std::vector<double> row_sign; // applied sign per work row
};

class Simplex {
  public:
    Simplex(const LpProblem& p, const LpOptions& o) : prob_(p), opts_(o) {
        bnorm_ = 0.0;
        for (double v : p.b) bnorm_ = std::max(bnorm_, std::fabs(v));
        tol_feas_ = opts_.tol_feas_scale * std::max(1.0, bnorm_);
    }

    LpSolution run();

  private:
    enum class LoopResult { optimal, unbounded, iteration_limit };

    void build_work();
    void refactor();
    std::vector<double> basis_column(int col) const;
    LoopResult iterate(const std::vector<double>& cost);
    bool eliminate_artificials();
    void drop_rows(const std::vector<char>& redundant);
    LpSolution finalize(LpStatus status);
    double cost_of(const std::vector<double>& cost, int col) const {
        return col < static_cast<int>(work_.cols) ? cost[col] : 1.0;
    }

    const LpProblem& prob_;
    LpOptions opts_;
    double bnorm_ = 0.0;
    double tol_feas_ = 0.0;

    WorkProblem work_;
    std::vector<int> basis_;       // column per basic position; >= cols means artificial
    std::vector<double> xb_;
    std::vector<char> in_basis_;   // structural columns only
    BasisFactor factor_;
    int iterations_ = 0;
    int max_iterations_ = 0;
};

void Simplex::build_work() {
    const std::size_t rows = prob_.a.rows, cols = prob_.a.cols;
    work_.rows = 0;
    work_.cols = cols;
    work_.kept.clear();
    work_.row_sign.clear();
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < rows; ++i) {
        keep.push_back(i);
        work_.kept.push_back(static_cast<int>(i));
        work_.row_sign.push_back(prob_.b[i] < 0.0 ? -1.0 : 1.0);
    }
    work_.rows = keep.size();
    work_.a = DenseMatrix(work_.rows, cols);
    work_.b.resize(work_.rows);
    for (std::size_t r = 0; r < work_.rows; ++r) {
        work_.b[r] = work_.row_sign[r] * prob_.b[keep[r]];
        for (std::size_t j = 0; j < cols; ++j)
            work_.a.at(r, j) = work_.row_sign[r] * prob_.a.at(keep[r], j);
    }
}

std::vector<double> Simplex::basis_column(int col) const {
    std::vector<double> v(work_.rows, 0.0);
    if (col < static_cast<int>(work_.cols)) {
        const double* src = work_.a.col(col);
        std::copy(src, src + work_.rows, v.begin());
    } else {
        v[col - work_.cols] = 1.0;
    }
    return v;
}

void Simplex::refactor() {
    std::vector<std::vector<double>> cols(work_.rows);
    for (std::size_t t = 0; t < work_.rows; ++t) cols[t] = basis_column(basis_[t]);
    factor_.factor(work_.rows, cols);
    xb_ = work_.b;
    factor_.ftran(xb_);
}

Simplex::LoopResult Simplex::iterate(const std::vector<double>& cost) {
    const auto& K = kernels::active();
    const std::size_t rows = work_.rows, cols = work_.cols;
    std::vector<double> y(rows), rc(cols), d;
    int stall = 0;
    bool bland = false;

    for (;;) {
        if (iterations_ >= max_iterations_) return LoopResult::iteration_limit;

        // Pricing: y = B^-T c_B, then reduced costs over all structural columns.
        for (std::size_t t = 0; t < rows; ++t) y[t] = cost_of(cost, basis_[t]);
        factor_.btran(y);
        K.col_dots_minus(work_.a.data.data(), rows, rows, cols, y.data(), cost.data(),
                         rc.data());

        int enter = -1;
        if (bland) {
            for (std::size_t j = 0; j < cols; ++j)
                if (!in_basis_[j] && rc[j] < -opts_.tol_opt) { enter = static_cast<int>(j); break; }
        } else {
            double best = -opts_.tol_opt;
            for (std::size_t j = 0; j < cols; ++j)
                if (!in_basis_[j] && rc[j] < best) { best = rc[j]; enter = static_cast<int>(j); }
        }
        if (enter < 0) {
            if (factor_.eta_count() > 0) {
                // Confirm optimality against a fresh factorization.
                refactor();
                continue;
            }
            return LoopResult::optimal;
        }

        d = basis_column(enter);
        factor_.ftran(d);

        // Ratio test.
        double theta = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < rows; ++i)
            if (d[i] > kPivotTol)
                theta = std::min(theta, std::max(xb_[i], 0.0) / d[i]);
        if (!std::isfinite(theta)) return LoopResult::unbounded;

        int leave = -1;
        const double theta_cut = theta + 1e-10 * theta + 1e-30;
        for (std::size_t i = 0; i < rows; ++i) {
            if (d[i] <= kPivotTol) continue;
            if (std::max(xb_[i], 0.0) / d[i] > theta_cut) continue;
            if (leave < 0) { leave = static_cast<int>(i); continue; }
            if (bland) {
                if (basis_[i] < basis_[leave]) leave = static_cast<int>(i);
                continue;
            }
            const bool art_i = basis_[i] >= static_cast<int>(cols);
            const bool art_l = basis_[leave] >= static_cast<int>(cols);
            if (art_i != art_l) {
                if (art_i) leave = static_cast<int>(i);
                continue;
            }
            if (std::fabs(d[i]) > std::fabs(d[leave])) leave = static_cast<int>(i);
        }

        // Pivot.
        const double step = std::max(xb_[leave], 0.0) / d[leave];
        for (std::size_t i = 0; i < rows; ++i) xb_[i] -= step * d[i];
        xb_[leave] = step;
        if (basis_[leave] < static_cast<int>(cols)) in_basis_[basis_[leave]] = 0;
        basis_[leave] = enter;
        in_basis_[enter] = 1;
        factor_.push_eta(leave, d);
        ++iterations_;

        if (step <= 1e-12 * std::max(1.0, bnorm_)) {
            if (++stall > opts_.bland_stall_threshold) bland = true;
        } else {
            stall = 0;
            bland = false;
        }

        if (factor_.eta_count() >= static_cast<std::size_t>(opts_.refactor_interval))
            refactor();
    }
}

// Pivot zero-level artificials out of the basis; rows whose artificial
// cannot be exchanged for a structural column are redundant and dropped.
bool Simplex::eliminate_artificials() {
    const auto& K = kernels::active();
    const std::size_t rows = work_.rows, cols = work_.cols;
    std::vector<char> redundant(rows, 0);

    for (std::size_t t = 0; t < rows; ++t) {
        if (basis_[t] < static_cast<int>(cols)) continue;
        // Row t of B^-1 A over nonbasic structural columns.
        std::vector<double> e(rows, 0.0);
        e[t] = 1.0;
        factor_.btran(e);
        int enter = -1;
        double best = kDriveOutTol;
        for (std::size_t j = 0; j < cols; ++j) {
            if (in_basis_[j]) continue;
            const double alpha = std::fabs(K.dot(work_.a.col(j), e.data(), rows));
            if (alpha > best) { best = alpha; enter = static_cast<int>(j); }
        }
        if (enter < 0) {
            redundant[basis_[t] - cols] = 1;
            continue;
        }
        std::vector<double> d = basis_column(enter);
        factor_.ftran(d);
        basis_[t] = enter;
        in_basis_[enter] = 1;
        factor_.push_eta(static_cast<int>(t), std::move(d));
        if (factor_.eta_count() >= static_cast<std::size_t>(opts_.refactor_interval))
            refactor();
    }

    bool any = false;
    for (char c : redundant) any |= (c != 0);
    if (any) drop_rows(redundant);
    return true;
}

void Simplex::drop_rows(const std::vector<char>& redundant) {
    const std::size_t cols = work_.cols;
    WorkProblem next;
    next.cols = cols;
    std::vector<int> new_basis;
    for (std::size_t r = 0; r < work_.rows; ++r) {
        if (redundant[r]) continue;
        next.kept.push_back(work_.kept[r]);
        next.row_sign.push_back(work_.row_sign[r]);
    }
    next.rows = next.kept.size();
    next.a = DenseMatrix(next.rows, cols);
    next.b.resize(next.rows);
    std::size_t nr = 0;
    for (std::size_t r = 0; r < work_.rows; ++r) {
        if (redundant[r]) continue;
        next.b[nr] = work_.b[r];
        for (std::size_t j = 0; j < cols; ++j) next.a.at(nr, j) = work_.a.at(r, j);
        ++nr;
    }
    for (std::size_t t = 0; t < work_.rows; ++t) {
        const int col = basis_[t];
        if (col >= static_cast<int>(cols) && redundant[col - cols]) continue;
        assert(col < static_cast<int>(cols));
        new_basis.push_back(col);
    }
    work_ = std::move(next);
    basis_ = std::move(new_basis);
    assert(basis_.size() == work_.rows);
    refactor();
}

LpSolution Simplex::finalize(LpStatus status) {
    const auto& K = kernels::active();
    LpSolution sol;
    sol.status = status;
    sol.iterations = iterations_;
    if (status != LpStatus::optimal) return sol;

    const std::size_t rows = work_.rows, cols = work_.cols;
    if (rows > 0) {
        refactor();
        // Two rounds of iterative refinement on the basic solve keep the
        // phase residuals far below the verification tolerances downstream.
        for (int round = 0; round < 2; ++round) {
            std::vector<double> res = work_.b;
            for (std::size_t t = 0; t < rows; ++t)
                if (xb_[t] != 0.0) {
                    std::vector<double> colv = basis_column(basis_[t]);
                    K.axpy(-xb_[t], colv.data(), res.data(), rows);
                }
            factor_.ftran(res);
            for (std::size_t t = 0; t < rows; ++t) xb_[t] += res[t];
        }
    }

    sol.x.assign(cols, 0.0);
    for (std::size_t t = 0; t < rows; ++t) {
        double v = xb_[t];
        if (v < 0.0 && v >= -16.0 * tol_feas_) v = 0.0;
        if (basis_[t] < static_cast<int>(cols)) sol.x[basis_[t]] = v;
        sol.basis.push_back(basis_[t]);
    }
    sol.kept_rows = work_.kept;
    sol.objective = prob_.c.empty() ? 0.0 : K.dot(prob_.c.data(), sol.x.data(), cols);

    // Duals on the original row indexing (zero on dropped redundant rows).
    std::vector<double> y(rows);
    for (std::size_t t = 0; t < rows; ++t) y[t] = cost_of(prob_.c, basis_[t]);
    if (rows > 0) factor_.btran(y);
    sol.dual.assign(prob_.a.rows, 0.0);
    for (std::size_t t = 0; t < rows; ++t)
        sol.dual[work_.kept[t]] = work_.row_sign[t] * y[t];

    // Certificate: primal feasibility on the original system, dual
    // feasibility, and complementary objectives.
    std::vector<double> resid(prob_.a.rows);
    for (std::size_t i = 0; i < prob_.a.rows; ++i) resid[i] = -prob_.b[i];
    for (std::size_t j = 0; j < cols; ++j)
        if (sol.x[j] != 0.0) K.axpy(sol.x[j], prob_.a.col(j), resid.data(), prob_.a.rows);
    sol.primal_residual = 0.0;
    for (double v : resid) sol.primal_residual = std::max(sol.primal_residual, std::fabs(v));

    double min_rc = 0.0;
    if (rows > 0) {
        std::vector<double> rc(cols);
        K.col_dots_minus(work_.a.data.data(), rows, rows, cols, y.data(), prob_.c.data(),
                         rc.data());
        for (std::size_t j = 0; j < cols; ++j) min_rc = std::min(min_rc, rc[j]);
    } else {
        for (std::size_t j = 0; j < cols; ++j) min_rc = std::min(min_rc, prob_.c[j]);
    }
    sol.min_reduced_cost = min_rc;

    double by = 0.0;
    for (std::size_t i = 0; i < prob_.a.rows; ++i) by += prob_.b[i] * sol.dual[i];
    sol.duality_gap = std::fabs(sol.objective - by);

    const double gap_tol =
        opts_.tol_opt * std::max({1.0, std::fabs(sol.objective), std::fabs(by)});
    sol.certificate_ok = sol.primal_residual <= 16.0 * tol_feas_ &&
                         sol.min_reduced_cost >= -opts_.tol_opt && sol.duality_gap <= gap_tol;
    return sol;
}

LpSolution Simplex::run() {
    const std::size_t rows0 = prob_.a.rows, cols = prob_.a.cols;
    if (prob_.b.size() != rows0 || prob_.c.size() != cols)
        throw std::invalid_argument("solve_lp: inconsistent dimensions");
    for (double v : prob_.a.data)
        if (!std::isfinite(v)) throw std::invalid_argument("solve_lp: non-finite matrix entry");
    for (double v : prob_.b)
        if (!std::isfinite(v)) throw std::invalid_argument("solve_lp: non-finite rhs entry");

    build_work();
    max_iterations_ = opts_.max_iterations > 0
                          ? opts_.max_iterations
                          : 2000 + 100 * static_cast<int>(work_.rows) +
                                10 * static_cast<int>(cols);

    if (work_.rows == 0) {
        // No constraints: x = 0 unless some cost is negative.
        for (std::size_t j = 0; j < cols; ++j)
            if (prob_.c[j] < -opts_.tol_opt) {
                LpSolution sol;
                sol.status = LpStatus::unbounded;
                return sol;
            }
        return finalize(LpStatus::optimal);
    }

    // Phase 1: artificial identity basis, cost = sum of artificials.
    basis_.clear();
    for (std::size_t t = 0; t < work_.rows; ++t)
        basis_.push_back(static_cast<int>(cols + t));
    in_basis_.assign(cols, 0);
    refactor();

    std::vector<double> phase1_cost(cols, 0.0);
    LoopResult r1 = iterate(phase1_cost);
    if (r1 == LoopResult::iteration_limit) return finalize(LpStatus::iteration_limit);
    if (r1 == LoopResult::unbounded)
        throw std::logic_error("solve_lp: phase one cannot be unbounded");

    double infeas = 0.0;
    for (std::size_t t = 0; t < work_.rows; ++t)
        if (basis_[t] >= static_cast<int>(cols)) infeas += std::max(xb_[t], 0.0);
    if (infeas > tol_feas_) return finalize(LpStatus::infeasible);

    eliminate_artificials();

    LoopResult r2 = iterate(prob_.c);
    if (r2 == LoopResult::iteration_limit) return finalize(LpStatus::iteration_limit);
    if (r2 == LoopResult::unbounded) {
        LpSolution sol;
        sol.status = LpStatus::unbounded;
        sol.iterations = iterations_;
        return sol;
    }
    return finalize(LpStatus::optimal);
}

}  // namespace

LpSolution solve_lp(const LpProblem& problem, const LpOptions& options) {
    Simplex s(problem, options);
    return s.run();
}

double zero_time_threshold(double total_time) {
    return std::max(1e-15, 1e-9 * total_time);
}

}  // namespace echosculpt
