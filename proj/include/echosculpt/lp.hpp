#pragma once

#include <cstddef>
#include <vector>

namespace echosculpt {

// Column-major dense matrix.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[c * rows + r]; }
    double at(std::size_t r, std::size_t c) const { return data[c * rows + r]; }
    double* col(std::size_t c) { return data.data() + c * rows; }
    const double* col(std::size_t c) const { return data.data() + c * rows; }
};

// min c.x  subject to  A x = b,  x >= 0.
struct LpProblem {
    DenseMatrix a;
    std::vector<double> b;
    std::vector<double> c;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> x;        // full length, nonbasic entries exactly 0
    double objective = 0.0;
    std::vector<int> basis;       // basic column indices, one per kept row
    std::vector<int> kept_rows;   // original row indices that remained after
                                  // redundant-row elimination
    std::vector<double> dual;     // y over original rows (0 on removed rows)
    int iterations = 0;

    // Certificate data, recomputed from a fresh factorization at the end.
    double primal_residual = 0.0;  // max |(Ax - b)_i|
    double min_reduced_cost = 0.0; // min_j (c - A^T y)_j
    double duality_gap = 0.0;      // |c.x - b.y|
    bool certificate_ok = false;
};

struct LpOptions {
    double tol_opt = 1e-10;
    // Feasibility tolerance is tol_feas_scale * max(1, |b|_inf).
    double tol_feas_scale = 1e-10;
    int max_iterations = 0;        // 0: derived from the problem size
    int refactor_interval = 64;
    int bland_stall_threshold = 50;
};

// Two-phase primal revised simplex (Dantzig pricing, Bland fallback under
// degeneracy, LU-factorized basis with product-form updates). Optimal
// solutions are vertices: nonbasic entries are identically zero and the
// returned dual vector certifies optimality.
LpSolution solve_lp(const LpProblem& problem, const LpOptions& options = {});

// Zero-time threshold used when reducing solutions downstream.
double zero_time_threshold(double total_time);

}  // namespace echosculpt
