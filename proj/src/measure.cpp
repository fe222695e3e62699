#include "schwinger/measure.hpp"

#include <cmath>

#include "schwinger/error.hpp"

namespace schwinger {

GroupoidMeasure counting_measure(const FiniteGroupoid& g) {
  return {std::vector<double>(g.object_count(), 1.0), std::vector<double>(g.morphism_count(), 1.0)};
}

void check_measure(const GroupoidMeasure& m, const FiniteGroupoid& g) {
  if (m.object_weights.size() != g.object_count() || m.fiber_weights.size() != g.morphism_count()) {
    throw Error(ErrorKind::shape, "measure does not match the groupoid's object/morphism counts");
  }
  for (double w : m.object_weights)
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorKind::range, "object weights must be positive and finite");
  for (double w : m.fiber_weights)
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorKind::range, "fiber weights must be positive and finite");
}

bool is_left_invariant(const GroupoidMeasure& m, const FiniteGroupoid& g, double tol) {
  for (std::size_t d = 0; d < g.morphism_count(); ++d) {
    const MorphismId dinv = g.inverse(MorphismId(d));
    for (MorphismId c : g.target_fiber(g.target(MorphismId(d)))) {
      const MorphismId moved = g.compose(dinv, c);
      const double a = m.fiber_weight(moved);
      const double b = m.fiber_weight(c);
      if (std::abs(a - b) > tol * std::max(1.0, std::abs(b))) return false;
    }
  }
  return true;
}

AlgebraElement AlgebraElement::delta(std::size_t n, MorphismId a) {
  AlgebraElement f(n);
  f[a] = 1.0;
  return f;
}

AlgebraElement AlgebraElement::unit_sum(const FiniteGroupoid& g) {
  AlgebraElement f(g.morphism_count());
  for (std::size_t x = 0; x < g.object_count(); ++x) f[g.unit(ObjectId(x))] = 1.0;
  return f;
}

AlgebraElement AlgebraElement::constant(std::size_t n, Complex value) {
  return AlgebraElement(std::vector<Complex>(n, value));
}

Eigen::VectorXcd AlgebraElement::to_vector() const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(values_.size()));
  for (std::size_t i = 0; i < values_.size(); ++i) v(static_cast<Eigen::Index>(i)) = values_[i];
  return v;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  if (other.size() != size()) throw Error(ErrorKind::shape, "algebra elements of different sizes");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex s) {
  for (auto& v : values_) v *= s;
  return *this;
}

double AlgebraElement::max_abs_diff(const AlgebraElement& other) const {
  if (other.size() != size()) throw Error(ErrorKind::shape, "algebra elements of different sizes");
  double d = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) d = std::max(d, std::abs(values_[i] - other.values_[i]));
  return d;
}

Complex integrate(const AlgebraElement& f, const GroupoidMeasure& m, const FiniteGroupoid& g) {
  Complex total(0.0, 0.0);
  for (std::size_t y = 0; y < g.object_count(); ++y) {
    Complex fiber(0.0, 0.0);
    for (MorphismId a : g.target_fiber(ObjectId(y))) fiber += m.fiber_weight(a) * f[a];
    total += m.object_weight(ObjectId(y)) * fiber;
  }
  return total;
}

ModularFunction modular_function(const GroupoidMeasure& m, const FiniteGroupoid& g) {
  check_measure(m, g);
  const std::size_t n = g.morphism_count();
  ModularFunction delta(n);
  for (std::size_t a = 0; a < n; ++a) {
    const MorphismId id(a);
    delta[a] = m.total_weight(g, id) / m.total_weight(g, g.inverse(id));
  }
  constexpr double tol = 1e-12;
  for (std::size_t a = 0; a < n; ++a) {
    for (MorphismId b : g.target_fiber(g.source(MorphismId(a)))) {
      const double lhs = delta[g.compose(MorphismId(a), b).value];
      const double rhs = delta[a] * delta[b.value];
      if (std::abs(lhs - rhs) > tol * std::max(std::abs(lhs), std::abs(rhs))) {
        throw Error(ErrorKind::non_quasi_invariant,
                    "modular function is not multiplicative on the pair (" + std::to_string(a) + "," +
                        std::to_string(b.value) + ")");
      }
    }
  }
  return delta;
}

AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& h, const GroupoidMeasure& m,
                        const FiniteGroupoid& g) {
  AlgebraElement out(g.morphism_count());
  for (std::size_t a = 0; a < g.morphism_count(); ++a) {
    const MorphismId alpha(a);
    Complex acc(0.0, 0.0);
    for (MorphismId c : g.target_fiber(g.target(alpha))) {
      acc += m.fiber_weight(c) * f[c] * h[g.compose(g.inverse(c), alpha)];
    }
    out[alpha] = acc;
  }
  return out;
}

AlgebraElement involute(const AlgebraElement& f, const GroupoidMeasure& m, const FiniteGroupoid& g) {
  const ModularFunction delta = modular_function(m, g);
  AlgebraElement out(g.morphism_count());
  for (std::size_t a = 0; a < g.morphism_count(); ++a) {
    const MorphismId inv = g.inverse(MorphismId(a));
    out[a] = std::conj(f[inv]) * delta[inv.value];
  }
  return out;
}

Eigen::MatrixXcd left_regular(const AlgebraElement& f, const GroupoidMeasure& m, const FiniteGroupoid& g) {
  const auto n = static_cast<Eigen::Index>(g.morphism_count());
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t a = 0; a < g.morphism_count(); ++a) {
    const MorphismId alpha(a);
    for (MorphismId c : g.target_fiber(g.target(alpha))) {
      const MorphismId col = g.compose(g.inverse(c), alpha);
      op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(col.value)) += m.fiber_weight(c) * f[c];
    }
  }
  return op;
}

Eigen::MatrixXcd weighted_adjoint(const Eigen::MatrixXcd& op, const GroupoidMeasure& m, const FiniteGroupoid& g) {
  const auto n = static_cast<Eigen::Index>(g.morphism_count());
  Eigen::VectorXd w(n);
  for (Eigen::Index a = 0; a < n; ++a) w(a) = m.total_weight(g, MorphismId(static_cast<std::size_t>(a)));
  // A^dagger = W^{-1} A^H W
  return w.cwiseInverse().asDiagonal() * op.adjoint() * w.asDiagonal();
}

Complex inner_product(const AlgebraElement& psi, const AlgebraElement& phi, const GroupoidMeasure& m,
                      const FiniteGroupoid& g) {
  Complex acc(0.0, 0.0);
  for (std::size_t a = 0; a < g.morphism_count(); ++a)
    acc += m.total_weight(g, MorphismId(a)) * std::conj(psi[a]) * phi[a];
  return acc;
}

}  // namespace schwinger
