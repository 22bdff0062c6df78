#pragma once

#include <complex>

namespace lrsim {

// Kahan-compensated accumulator. All weighted sums over labels run through
// this in ascending label order, which pins the floating point result and
// makes runs reproducible bit for bit.
template <class T>
class KahanSum {
 public:
  void add(const T& x) {
    const T y = x - comp_;
    const T t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  [[nodiscard]] T value() const { return sum_; }

 private:
  T sum_{};
  T comp_{};
};

using KahanReal = KahanSum<double>;
using KahanComplex = KahanSum<std::complex<double>>;

}  // namespace lrsim
