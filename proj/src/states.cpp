#include "schwinger/states.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "schwinger/error.hpp"

namespace schwinger {

std::vector<Complex> PositiveTypeCandidate::unit_restriction(const FiniteGroupoid& g) const {
  std::vector<Complex> out(g.object_count());
  for (std::size_t x = 0; x < g.object_count(); ++x) out[x] = values[g.unit(ObjectId(x))];
  return out;
}

Complex PositiveTypeCandidate::normalization(const GroupoidMeasure& m, const FiniteGroupoid& g) const {
  Complex s(0.0, 0.0);
  for (std::size_t x = 0; x < g.object_count(); ++x) s += m.object_weights[x] * values[g.unit(ObjectId(x))];
  return s;
}

bool PositiveTypeCandidate::is_normalized(const GroupoidMeasure& m, const FiniteGroupoid& g, double tol) const {
  return std::abs(normalization(m, g) - 1.0) <= tol;
}

PositivityCertificate certify_form(const Eigen::MatrixXcd& form, double tol) {
  PositivityCertificate cert;
  cert.form_matrix_dim = static_cast<std::size_t>(form.rows());
  if (form.rows() == 0) {
    cert.verdict = Verdict::positive;
    return cert;
  }
  cert.hermiticity_defect = (form - form.adjoint()).cwiseAbs().maxCoeff();
  const Eigen::MatrixXcd herm = 0.5 * (form + form.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  cert.min_eigenvalue = solver.eigenvalues().minCoeff();
  cert.verdict = (cert.min_eigenvalue >= -tol && cert.hermiticity_defect <= tol) ? Verdict::positive
                                                                                   : Verdict::indefinite;
  return cert;
}

PositivityCertificate certify_blocks(const std::vector<Eigen::MatrixXcd>& blocks, double tol) {
  PositivityCertificate total;
  total.verdict = Verdict::positive;
  bool first = true;
  for (const auto& b : blocks) {
    if (b.rows() == 0) continue;
    const auto c = certify_form(b, tol);
    total.form_matrix_dim += c.form_matrix_dim;
    total.hermiticity_defect = std::max(total.hermiticity_defect, c.hermiticity_defect);
    total.min_eigenvalue = first ? c.min_eigenvalue : std::min(total.min_eigenvalue, c.min_eigenvalue);
    first = false;
    if (c.verdict == Verdict::indefinite) total.verdict = Verdict::indefinite;
  }
  return total;
}

Eigen::MatrixXcd quadratic_form_matrix(const PositiveTypeCandidate& phi, const GroupoidMeasure& m,
                                       const FiniteGroupoid& g) {
  // integral phi (f^* * f) dnu = sum_a nu(a) phi(a) sum_{c in K^{t(a)}} nu^{t(a)}(c) f^*(c) f(c^{-1} a)
  // With b = c^{-1} and d = c^{-1} a: f^*(c) = conj f(b) Delta(b), a = b^{-1} d.
  const ModularFunction delta = modular_function(m, g);
  const auto n = static_cast<Eigen::Index>(g.morphism_count());
  Eigen::MatrixXcd form = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t b = 0; b < g.morphism_count(); ++b) {
    const MorphismId beta(b);
    const MorphismId binv = g.inverse(beta);
    for (MorphismId d : g.target_fiber(g.target(beta))) {
      const MorphismId alpha = g.compose(binv, d);
      const double weight = m.total_weight(g, alpha) * m.fiber_weight(binv) * delta[b];
      form(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(d.value)) += weight * phi.values[alpha];
    }
  }
  return form;
}

PositivityCertificate is_positive_type(const PositiveTypeCandidate& phi, const GroupoidMeasure& m,
                                       const FiniteGroupoid& g, double tol) {
  if (tol < 0.0) throw Error(ErrorKind::range, "positivity tolerance must be non-negative");
  return certify_form(quadratic_form_matrix(phi, m, g), tol);
}

Complex state_value(const PositiveTypeCandidate& phi, const AlgebraElement& f, const GroupoidMeasure& m,
                    const FiniteGroupoid& g) {
  Complex acc(0.0, 0.0);
  for (std::size_t a = 0; a < g.morphism_count(); ++a)
    acc += m.total_weight(g, MorphismId(a)) * phi.values[a] * f[a];
  return acc;
}

Complex DfsForm::operator()(const FiniteGroupoid& g, MorphismId w) const {
  const double amp = std::sqrt(density[g.source(w).value] * density[g.target(w).value]);
  return std::polar(amp, phase[w.value]);
}

PositiveTypeCandidate DfsForm::candidate(const FiniteGroupoid& g) const {
  PositiveTypeCandidate c{AlgebraElement(g.morphism_count())};
  for (std::size_t a = 0; a < g.morphism_count(); ++a) c.values[a] = (*this)(g, MorphismId(a));
  return c;
}

DfsForm dfs_form_from_potential(const FiniteGroupoid& g, std::vector<double> density,
                                const std::vector<double>& potential, const std::vector<double>& character) {
  if (density.size() != g.object_count() || potential.size() != g.object_count() ||
      (!character.empty() && character.size() != g.morphism_count())) {
    throw Error(ErrorKind::shape, "DFS form inputs do not match the groupoid");
  }
  DfsForm dfs{std::move(density), std::vector<double>(g.morphism_count())};
  for (std::size_t a = 0; a < g.morphism_count(); ++a) {
    const MorphismId id(a);
    dfs.phase[a] = potential[g.target(id).value] - potential[g.source(id).value] +
                   (character.empty() ? 0.0 : character[a]);
  }
  return dfs;
}

void check_dfs_form(const DfsForm& dfs, const FiniteGroupoid& g, double tol) {
  if (dfs.density.size() != g.object_count() || dfs.phase.size() != g.morphism_count()) {
    throw Error(ErrorKind::unsupported_form, "DFS form does not match the groupoid");
  }
  for (double p : dfs.density)
    if (!(p >= 0.0)) throw Error(ErrorKind::unsupported_form, "DFS density must be non-negative");
  // Phases are compared modulo 2 pi: only exp(i S) enters.
  const auto wrapped = [](double x) { return std::abs(std::remainder(x, 2.0 * M_PI)); };
  for (std::size_t a = 0; a < g.morphism_count(); ++a) {
    const MorphismId alpha(a);
    if (wrapped(dfs.phase[a] + dfs.phase[g.inverse(alpha).value]) > tol) {
      throw Error(ErrorKind::unsupported_form, "phase is not odd under inversion at morphism " + std::to_string(a));
    }
    for (MorphismId b : g.target_fiber(g.source(alpha))) {
      const double lhs = dfs.phase[g.compose(alpha, b).value];
      if (wrapped(lhs - dfs.phase[a] - dfs.phase[b.value]) > tol * std::max(1.0, std::abs(lhs))) {
        throw Error(ErrorKind::unsupported_form,
                    "phase is not additive on (" + std::to_string(a) + "," + std::to_string(b.value) + ")");
      }
    }
  }
}

Eigen::VectorXcd vector_phi_f(const DfsForm& dfs, const AlgebraElement& f, const GroupoidMeasure& m,
                              const FiniteGroupoid& g) {
  check_dfs_form(dfs, g);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(g.object_count()));
  for (std::size_t a = 0; a < g.object_count(); ++a) {
    Complex acc(0.0, 0.0);
    for (MorphismId w : g.target_fiber(ObjectId(a))) {
      acc += m.fiber_weight(w) * f[w] * std::polar(std::sqrt(dfs.density[g.source(w).value]), dfs.phase[w.value]);
    }
    out(static_cast<Eigen::Index>(a)) = acc;
  }
  return out;
}

double l2_objects_norm_sq(const Eigen::VectorXcd& v, const GroupoidMeasure& m) {
  double s = 0.0;
  for (Eigen::Index a = 0; a < v.size(); ++a) s += m.object_weights[static_cast<std::size_t>(a)] * std::norm(v(a));
  return s;
}

Eigen::VectorXcd gns_apply(const DfsForm& dfs, const AlgebraElement& g_elem, const AlgebraElement& f,
                           const GroupoidMeasure& m, const FiniteGroupoid& g) {
  return vector_phi_f(dfs, convolve(g_elem, f, m, g), m, g);
}

Eigen::MatrixXcd gns_matrix(const DfsForm& dfs, const AlgebraElement& g_elem, const GroupoidMeasure& m,
                            const FiniteGroupoid& g) {
  check_dfs_form(dfs, g);
  const auto n = static_cast<Eigen::Index>(g.object_count());
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t c = 0; c < g.morphism_count(); ++c) {
    const MorphismId id(c);
    op(g.target(id).value, g.source(id).value) += m.fiber_weight(id) * g_elem[id] * std::polar(1.0, dfs.phase[c]);
  }
  return op;
}

Eigen::VectorXcd cyclic_vector(const DfsForm& dfs, const GroupoidMeasure& m, const FiniteGroupoid& g) {
  return vector_phi_f(dfs, AlgebraElement::unit_sum(g), m, g);
}

std::size_t numerical_rank(const Eigen::MatrixXcd& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

}  // namespace schwinger
