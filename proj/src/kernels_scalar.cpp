#include "schwinger/kernels.hpp"

namespace schwinger::kernels::scalar {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void matvec(std::span<const double> a, std::size_t rows, std::size_t cols, std::span<const double> x,
            std::span<double> y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(a.subspan(r * cols, cols), x);
}

double compensated_sum(std::span<const double> x) {
  CompensatedSum<double> acc;
  for (double v : x) acc.add(v);
  return acc.value();
}

}  // namespace schwinger::kernels::scalar
