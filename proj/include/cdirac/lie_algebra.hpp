#ifndef CDIRAC_LIE_ALGEBRA_HPP
#define CDIRAC_LIE_ALGEBRA_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "cdirac/linalg.hpp"

namespace cdirac {

/// Span of coordinate vectors inside a fixed ambient algebra. Columns of
/// `basis` are the spanning vectors; they are kept as given (not
/// orthonormalized) so bases with meaning survive round trips.
struct Subspace {
  int ambient_dim = 0;
  MatrixXd basis;  // ambient_dim x dim

  Subspace() = default;
  Subspace(int n, MatrixXd b) : ambient_dim(n), basis(std::move(b)) {}

  static Subspace zero(int n) { return Subspace(n, MatrixXd(n, 0)); }
  static Subspace full(int n) { return Subspace(n, MatrixXd::Identity(n, n)); }
  // Validates linear independence of the columns.
  static Subspace of_independent(MatrixXd cols, double rel_tol = kRankTol);
  // Reduces arbitrary spanning columns to an orthonormal basis.
  static Subspace span(const MatrixXd& cols, double rel_tol = kRankTol);

  int dim() const { return static_cast<int>(basis.cols()); }
  MatrixXd onb() const;
  double contains_residual(const VectorXd& v) const {
    return membership_residual(basis, v);
  }
  bool contains(const VectorXd& v, double tol = kDefaultTol) const {
    return contains_residual(v) < tol;
  }
  // max residual of sub's basis vectors against this span
  double contains_subspace_residual(const Subspace& sub) const;
};

struct LieAlgebra;

/// Symmetric bilinear pairing on an algebra, stored as its Gram matrix in the
/// algebra's basis.
struct BilinearForm {
  MatrixXd matrix;

  double operator()(const VectorXd& x, const VectorXd& y) const {
    return x.dot(matrix * y);
  }
  double symmetry_residual() const {
    return matrix.size() ? (matrix - matrix.transpose()).cwiseAbs().maxCoeff()
                         : 0.0;
  }
  // max |B([z,x],y) + B(x,[z,y])| over basis triples
  double invariance_residual(const LieAlgebra& g) const;
};

/// Finite-dimensional real Lie algebra given by structure constants
/// [e_i, e_j] = sum_k C[i][j][k] e_k. Stored as the adjoint matrices
/// ad(e_i) with ad(e_i)(k,j) = C[i][j][k].
struct LieAlgebra {
  std::string name;
  std::vector<std::string> basis_labels;
  std::vector<MatrixXd> ad;

  LieAlgebra() = default;

  static LieAlgebra abelian(int dim, const std::string& name = "abelian");
  // Dense tensor input, stored exactly as given (no symmetrization).
  static LieAlgebra from_raw_tensor(const std::string& name,
                                    std::vector<std::string> labels,
                                    const std::vector<MatrixXd>& ad_slices);
  // Bracket list input (i < j only); antisymmetry is imposed exactly.
  struct BracketTerm {
    int i, j, k;
    double c;
  };
  static LieAlgebra from_brackets(const std::string& name,
                                  std::vector<std::string> labels, int dim,
                                  const std::vector<BracketTerm>& terms);

  int dim() const { return static_cast<int>(ad.size()); }
  double structure_constant(int i, int j, int k) const { return ad[i](k, j); }
  MatrixXd ad_of(const VectorXd& x) const;
  VectorXd bracket(const VectorXd& x, const VectorXd& y) const;
  double antisymmetry_residual() const;
  double max_structure_constant() const;
};

// --- core operations ------------------------------------------------------

double jacobi_residual(const LieAlgebra& g);
BilinearForm killing_form(const LieAlgebra& g);
bool is_unimodular(const LieAlgebra& g, double tol = kDefaultTol);
Subspace center(const LieAlgebra& g);
Subspace derived_ideal(const LieAlgebra& g);
bool is_semisimple(const LieAlgebra& g, double tol = kDefaultTol);

// Largest u ⊆ k with [l, u] ⊆ u, by the decreasing fixpoint u0 = k,
// u_{t+1} = {x in u_t : [l, x] ⊆ u_t}.
Subspace maximal_ideal_in(const LieAlgebra& l, const Subspace& k,
                          double tol = kDefaultTol);

// Structure constants of a bracket-closed subspace in its own basis,
// plus the residual of closure.
struct SubalgebraRestriction {
  LieAlgebra algebra;
  double closure_residual = 0.0;
};
SubalgebraRestriction restrict_to_subalgebra(const LieAlgebra& g,
                                             const Subspace& s,
                                             const std::string& name = "sub");

// --- serialization ---------------------------------------------------------
// {"name","dim","basis_labels","brackets":[{"i","j","coeffs":[[k,c],...]}]}
// with 0-based indices and only i < j pairs with nonzero coefficients.

nlohmann::json algebra_to_json(const LieAlgebra& g);
LieAlgebra algebra_from_json(const nlohmann::json& j);
nlohmann::json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const nlohmann::json& j);

}  // namespace cdirac

#endif
