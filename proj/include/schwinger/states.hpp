#pragma once

#include <vector>

#include <Eigen/Dense>

#include "schwinger/measure.hpp"

namespace schwinger {

struct PositiveTypeCandidate {
  AlgebraElement values;

  // phi_Omega(x) = phi(1_x)
  std::vector<Complex> unit_restriction(const FiniteGroupoid& g) const;
  // sum_x nu_Omega(x) phi(1_x)
  Complex normalization(const GroupoidMeasure& m, const FiniteGroupoid& g) const;
  bool is_normalized(const GroupoidMeasure& m, const FiniteGroupoid& g, double tol = 1e-12) const;
};

enum class Verdict { positive, indefinite };

struct PositivityCertificate {
  double min_eigenvalue = 0.0;
  std::size_t form_matrix_dim = 0;
  // Max |M - M^H| entry; a non-Hermitian form cannot be positive.
  double hermiticity_defect = 0.0;
  Verdict verdict = Verdict::indefinite;
};

// Spectral certificate of a (nominally Hermitian) form matrix. The verdict is
// positive iff min_eigenvalue >= -tol and hermiticity_defect <= tol.
PositivityCertificate certify_form(const Eigen::MatrixXcd& form, double tol);

// Positivity certificate over a block-diagonal form; dimension is summed and
// the minimum is taken across blocks.
PositivityCertificate certify_blocks(const std::vector<Eigen::MatrixXcd>& blocks, double tol);

// M with conj(f)^T M f = integral of phi (f^* * f) dnu for all f.
Eigen::MatrixXcd quadratic_form_matrix(const PositiveTypeCandidate& phi, const GroupoidMeasure& m,
                                       const FiniteGroupoid& g);

PositivityCertificate is_positive_type(const PositiveTypeCandidate& phi, const GroupoidMeasure& m,
                                       const FiniteGroupoid& g, double tol = 1e-10);

// rho_phi(f) = integral of phi f dnu
Complex state_value(const PositiveTypeCandidate& phi, const AlgebraElement& f, const GroupoidMeasure& m,
                    const FiniteGroupoid& g);

// Functions of the form phi(w) = sqrt(p(s(w)) p(t(w))) exp(i S(w)) with S
// log-like. phase holds S per morphism (already divided by hbar).
struct DfsForm {
  std::vector<double> density;
  std::vector<double> phase;

  Complex operator()(const FiniteGroupoid& g, MorphismId w) const;
  PositiveTypeCandidate candidate(const FiniteGroupoid& g) const;
};

// S(w) = potential(t(w)) - potential(s(w)) + character(w); character must be
// additive on composable pairs (e.g. zero, or a group character).
DfsForm dfs_form_from_potential(const FiniteGroupoid& g, std::vector<double> density,
                                const std::vector<double>& potential, const std::vector<double>& character = {});

// Throws ErrorKind::unsupported_form unless S is log-like and p >= 0.
void check_dfs_form(const DfsForm& dfs, const FiniteGroupoid& g, double tol = 1e-12);

// phi_f(a) = sum over w in G^a of nu^a(w) f(w) sqrt(p(s(w))) exp(i S(w))
Eigen::VectorXcd vector_phi_f(const DfsForm& dfs, const AlgebraElement& f, const GroupoidMeasure& m,
                              const FiniteGroupoid& g);

// Squared norm in L^2(G^0) with the nu_Omega weighting.
double l2_objects_norm_sq(const Eigen::VectorXcd& v, const GroupoidMeasure& m);

// phi_{g * f}
Eigen::VectorXcd gns_apply(const DfsForm& dfs, const AlgebraElement& g_elem, const AlgebraElement& f,
                           const GroupoidMeasure& m, const FiniteGroupoid& g);

// Matrix of pi_phi(g) on L^2(G^0): [a][b] = sum over c: b -> a of nu^a(c) g(c) exp(i S(c)).
// Valid for left-invariant Haar systems.
Eigen::MatrixXcd gns_matrix(const DfsForm& dfs, const AlgebraElement& g_elem, const GroupoidMeasure& m,
                            const FiniteGroupoid& g);

// phi_1 with 1 = unit_sum.
Eigen::VectorXcd cyclic_vector(const DfsForm& dfs, const GroupoidMeasure& m, const FiniteGroupoid& g);

std::size_t numerical_rank(const Eigen::MatrixXcd& a, double rel_tol = 1e-10);

}  // namespace schwinger
