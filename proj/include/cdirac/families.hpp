#ifndef CDIRAC_FAMILIES_HPP
#define CDIRAC_FAMILIES_HPP

#include <optional>
#include <string>
#include <vector>

#include "cdirac/lie_algebra.hpp"

namespace cdirac {

enum class Family {
  SlR,        // sl(n,R)
  Su,         // su(n)
  SuPQ,       // su(p,q)
  So,         // so(n)
  SoPQ,       // so(p,q)
  SpR,        // sp(n,R)
  SpCompact,  // sp(n)
  SpPQ,       // sp(p,q)
  U,          // u(n)
  SlC,        // sl(n,C) as a real algebra
  SoC,        // so(n,C) as a real algebra
  SpC,        // sp(n,C) as a real algebra
  SoStar,     // so*(2n)
  Abelian,    // R^k
  Sum,        // direct sum of atoms
};

std::string family_name(Family f);

/// A Lie algebra together with its defining matrix realization and the Cartan
/// involution theta(X) = -X^dagger of the realization. Basis matrices are
/// theta eigenvectors; compact directions come first, noncompact after.
struct BuiltAlgebra {
  LieAlgebra algebra;
  Family family = Family::Abelian;
  std::vector<int> params;
  int matrix_dim = 0;  // complex defining dimension
  std::vector<MatrixXcd> basis_matrices;
  MatrixXd theta;  // involution in the algebra basis (diagonal +-1)

  // direct sums keep their atoms for embedding dispatch
  std::vector<BuiltAlgebra> components;
  std::vector<int> component_offsets;   // algebra coordinate offsets
  std::vector<int> component_mat_offsets;

  int dim() const { return algebra.dim(); }
  VectorXd to_coords(const MatrixXcd& m, double tol = 1e-8) const;
  MatrixXd to_coords_batch(const std::vector<MatrixXcd>& ms,
                           double tol = 1e-8) const;
  MatrixXcd to_matrix(const VectorXd& coords) const;

  // -Re tr(XY), positive definite on compact directions; the invariant
  // auxiliary product used where the Killing form degenerates (centers).
  BilinearForm trace_form() const;

  // -B on [l,l] extended by the trace form on the center; positive definite
  // for compact-type algebras.
  BilinearForm compact_inner_form() const;
};

// family/params builder; optional (a, b) selects the normalized sl(2,R)
// basis with brackets [X2,X3]=rX1, [X3,X1]=sX2, [X1,X2]=tX3.
BuiltAlgebra build_family(Family f, const std::vector<int>& params);
BuiltAlgebra build_sl2_normalized(double a, double b);

// "sl(3,R)", "su(2,1)", "so(4,3)", "sp(2,R)", "u(3)", "so(5)", "sp(2)",
// "sl(2,C)", "so*(6)", "R", "R^2", and '+'-joined direct sums of these.
BuiltAlgebra parse_algebra(const std::string& spec);

BuiltAlgebra direct_sum(const BuiltAlgebra& a, const BuiltAlgebra& b);
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

// Subalgebra embedding patterns, e.g. "so(2)+so(1)", "u(2)", "su(2)+su(1)",
// "s(u(1)+u(1)+u(2))", "u(1)+so(3)+su(2)", "u(1)+dsu(3)", "sp(1)+sp(1)",
// "torus", "so(3)", "0", "full". Direct-sum ambients take ';'-separated
// per-component patterns ("*" = whole component).
Subspace embed_subalgebra(const BuiltAlgebra& g, const std::string& pattern);

// residual of the family's defining linear conditions on a matrix
double defining_condition_residual(const BuiltAlgebra& g, const MatrixXcd& m);

// max over basis pairs of || [M_i,M_j] - sum_k C_ijk M_k ||
double realization_bracket_residual(const BuiltAlgebra& g);

// theta automorphism residual: max || theta[x,y] - [theta x, theta y] ||
double theta_automorphism_residual(const BuiltAlgebra& g);

}  // namespace cdirac

#endif
