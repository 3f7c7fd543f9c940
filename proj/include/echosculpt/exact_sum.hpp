#pragma once

#include <cmath>
#include <vector>

namespace echosculpt {

// Shewchuk-style exact accumulator (the algorithm behind Python's
// math.fsum). Keeps a list of non-overlapping partials whose exact sum
// equals the exact sum of everything added; value() returns that sum
// correctly rounded. In particular, adding v and later -v (the same
// double) always cancels exactly, which is what makes symmetrized
// networks report one-spin phases of exactly zero.
class ExactSum {
  public:
    ExactSum() = default;

    void add(double x) {
        std::size_t i = 0;
        for (double y : partials_) {
            if (std::fabs(x) < std::fabs(y)) std::swap(x, y);
            const double hi = x + y;
            const double lo = y - (hi - x);
            if (lo != 0.0) partials_[i++] = lo;
            x = hi;
        }
        partials_.resize(i);
        partials_.push_back(x);
    }

    double value() const {
        double s = 0.0;
        for (double p : partials_) s += p;
        return s;
    }

    void reset() { partials_.clear(); }

  private:
    std::vector<double> partials_;
};

// Kahan–Neumaier compensated accumulator for long float sums where exactness
// is not required but cancellation error must stay bounded.
class KahanSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace echosculpt
