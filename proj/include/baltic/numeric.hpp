#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>

namespace baltic {

/// Neumaier-compensated accumulator. Summation order is fixed by the caller,
/// so totals do not depend on how per-element work was scheduled.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> values);
double compensated_mean(std::span<const double> values);

/// Worker count: BALTIC_NUM_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs fn(i) for i in [0, n) on worker_count() threads in contiguous chunks.
/// fn must only write to per-index state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace baltic
