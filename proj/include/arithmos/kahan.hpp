#pragma once

#include <cmath>

namespace arithmos {

// Kahan-Babuska compensated accumulator. Prefix sums over 1e8 terms lose
// ~1e-8 relative accuracy with naive accumulation; the running compensation
// keeps the error near one ulp of the total.
class KahanSum {
  public:
    KahanSum() = default;
    explicit KahanSum(double init) : sum_(init) {}

    void add(double value) {
        double t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value))
            comp_ += (sum_ - t) + value;
        else
            comp_ += (value - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace arithmos
