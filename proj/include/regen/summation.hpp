#pragma once

#include <cmath>

namespace regen {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }

  CompensatedSum& operator+=(const CompensatedSum& o) noexcept {
    add(o.sum_);
    add(o.comp_);
    return *this;
  }

  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Running first and second moments with compensated accumulation.
class MomentAccumulator {
public:
  void add(double x) noexcept {
    ++count_;
    s1_ += x;
    s2_ += x * x;
  }

  void merge(const MomentAccumulator& o) noexcept {
    count_ += o.count_;
    s1_ += o.s1_;
    s2_ += o.s2_;
  }

  long long count() const noexcept { return count_; }
  double mean() const noexcept { return count_ ? s1_.value() / count_ : NAN; }

  // Unbiased sample variance; NaN with fewer than two samples.
  double variance() const noexcept {
    if (count_ < 2) return NAN;
    const double m = mean();
    const double v = (s2_.value() - count_ * m * m) / static_cast<double>(count_ - 1);
    return v < 0.0 ? 0.0 : v;
  }

  double stderr_of_mean() const noexcept {
    return count_ < 2 ? NAN : std::sqrt(variance() / static_cast<double>(count_));
  }

private:
  long long count_ = 0;
  CompensatedSum s1_;
  CompensatedSum s2_;
};

} // namespace regen
