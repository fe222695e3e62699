#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <type_traits>

namespace schwinger {

// Neumaier-compensated accumulator. Adding the same terms in the same order
// always yields the same bits.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_floating_point_v<T>) {
      add_real(sum_, comp_, x);
    } else {
      typename T::value_type sr = sum_.real(), cr = comp_.real(), si = sum_.imag(), ci = comp_.imag();
      add_real(sr, cr, x.real());
      add_real(si, ci, x.imag());
      sum_ = T(sr, si);
      comp_ = T(cr, ci);
    }
  }
  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }
  T value() const { return sum_ + comp_; }

 private:
  template <class R>
  static void add_real(R& sum, R& comp, R x) {
    const R t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }

  T sum_{};
  T comp_{};
};

namespace kernels {

enum class Backend { scalar, avx2 };

std::string_view to_string(Backend b);

// True when the AVX2 translation unit was compiled in and the CPU reports
// AVX2 and FMA.
bool avx2_available();

// Backend used by the dispatching entry points. Defaults to the best one
// available; set_backend overrides it (falls back to scalar if unavailable).
Backend active_backend();
void set_backend(Backend b);

double dot(std::span<const double> a, std::span<const double> b);
// y = A x with A row-major rows x cols.
void matvec(std::span<const double> a, std::size_t rows, std::size_t cols, std::span<const double> x,
            std::span<double> y);
double compensated_sum(std::span<const double> x);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
void matvec(std::span<const double> a, std::size_t rows, std::size_t cols, std::span<const double> x,
            std::span<double> y);
double compensated_sum(std::span<const double> x);
}  // namespace scalar

namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
void matvec(std::span<const double> a, std::size_t rows, std::size_t cols, std::span<const double> x,
            std::span<double> y);
double compensated_sum(std::span<const double> x);
}  // namespace avx2

}  // namespace kernels
}  // namespace schwinger
