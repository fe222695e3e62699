#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "schwinger/groupoid.hpp"

namespace schwinger {

using Complex = std::complex<double>;

// Atomic measure on K given by its disintegration along the target map:
// nu(a) = object_weights[t(a)] * fiber_weights[a].
struct GroupoidMeasure {
  std::vector<double> object_weights;
  std::vector<double> fiber_weights;

  double object_weight(ObjectId x) const { return object_weights[x.value]; }
  double fiber_weight(MorphismId a) const { return fiber_weights[a.value]; }
  double total_weight(const FiniteGroupoid& g, MorphismId a) const {
    return object_weights[g.target(a).value] * fiber_weights[a.value];
  }
};

GroupoidMeasure counting_measure(const FiniteGroupoid& g);

// Throws ErrorKind::shape on size mismatch and ErrorKind::range on a
// non-positive weight.
void check_measure(const GroupoidMeasure& m, const FiniteGroupoid& g);

// True when nu^{s(d)}(d^{-1} o c) = nu^{t(d)}(c) for all composable pairs,
// i.e. the fiber weights form a left-invariant Haar system. Convolution is
// associative for such measures.
bool is_left_invariant(const GroupoidMeasure& m, const FiniteGroupoid& g, double tol = 1e-12);

// A complex function on the morphisms of a groupoid.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(std::size_t n) : values_(n, Complex(0.0, 0.0)) {}
  explicit AlgebraElement(std::vector<Complex> values) : values_(std::move(values)) {}

  static AlgebraElement delta(std::size_t n, MorphismId a);
  // u = sum over objects of the unit indicators.
  static AlgebraElement unit_sum(const FiniteGroupoid& g);
  static AlgebraElement constant(std::size_t n, Complex value);

  std::size_t size() const { return values_.size(); }
  Complex& operator[](MorphismId a) { return values_[a.value]; }
  Complex operator[](MorphismId a) const { return values_[a.value]; }
  Complex& operator[](std::size_t i) { return values_[i]; }
  Complex operator[](std::size_t i) const { return values_[i]; }

  const std::vector<Complex>& values() const { return values_; }
  Eigen::VectorXcd to_vector() const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator*=(Complex s);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }

  double max_abs_diff(const AlgebraElement& other) const;

 private:
  std::vector<Complex> values_;
};

using ModularFunction = std::vector<double>;

Complex integrate(const AlgebraElement& f, const GroupoidMeasure& m, const FiniteGroupoid& g);

// Delta(a) = nu(a) / nu(a^{-1}). Throws ErrorKind::non_quasi_invariant when
// Delta fails to be multiplicative on composable pairs.
ModularFunction modular_function(const GroupoidMeasure& m, const FiniteGroupoid& g);

// (f * h)(a) = sum over c in K^{t(a)} of nu^{t(a)}(c) f(c) h(c^{-1} o a)
AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& h, const GroupoidMeasure& m,
                        const FiniteGroupoid& g);

// f*(a) = conj(f(a^{-1})) Delta(a^{-1})
AlgebraElement involute(const AlgebraElement& f, const GroupoidMeasure& m, const FiniteGroupoid& g);

// Matrix of Psi -> f * Psi on L^2(K, nu), indexed by morphism.
Eigen::MatrixXcd left_regular(const AlgebraElement& f, const GroupoidMeasure& m, const FiniteGroupoid& g);

// Adjoint of an operator on L^2(K, nu) with <Psi, Phi> = sum nu(a) conj(Psi(a)) Phi(a).
Eigen::MatrixXcd weighted_adjoint(const Eigen::MatrixXcd& op, const GroupoidMeasure& m, const FiniteGroupoid& g);

Complex inner_product(const AlgebraElement& psi, const AlgebraElement& phi, const GroupoidMeasure& m,
                      const FiniteGroupoid& g);

}  // namespace schwinger
