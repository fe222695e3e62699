#include <atomic>

#include "schwinger/kernels.hpp"

namespace schwinger::kernels {

#ifndef SCHWINGER_HAVE_AVX2_TU
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b) { return scalar::dot(a, b); }
void matvec(std::span<const double> a, std::size_t rows, std::size_t cols, std::span<const double> x,
            std::span<double> y) {
  scalar::matvec(a, rows, cols, x, y);
}
double compensated_sum(std::span<const double> x) { return scalar::compensated_sum(x); }
}  // namespace avx2
#endif

namespace {

Backend detect() { return avx2_available() ? Backend::avx2 : Backend::scalar; }

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

std::string_view to_string(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(SCHWINGER_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available()) b = Backend::scalar;
  current().store(b, std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  return active_backend() == Backend::avx2 ? avx2::dot(a, b) : scalar::dot(a, b);
}

void matvec(std::span<const double> a, std::size_t rows, std::size_t cols, std::span<const double> x,
            std::span<double> y) {
  if (active_backend() == Backend::avx2)
    avx2::matvec(a, rows, cols, x, y);
  else
    scalar::matvec(a, rows, cols, x, y);
}

double compensated_sum(std::span<const double> x) {
  return active_backend() == Backend::avx2 ? avx2::compensated_sum(x) : scalar::compensated_sum(x);
}

}  // namespace schwinger::kernels
