#include "cdirac/lie_algebra.hpp"

#include <set>

namespace cdirac {

Subspace Subspace::of_independent(MatrixXd cols, double rel_tol) {
  int n = static_cast<int>(cols.rows());
  if (numeric_rank(cols, rel_tol) != cols.cols())
    throw InputError("subspace basis vectors are not linearly independent");
  return Subspace(n, std::move(cols));
}

Subspace Subspace::span(const MatrixXd& cols, double rel_tol) {
  return Subspace(static_cast<int>(cols.rows()), column_space(cols, rel_tol));
}

MatrixXd Subspace::onb() const { return column_space(basis); }

double Subspace::contains_subspace_residual(const Subspace& sub) const {
  double worst = 0.0;
  for (int c = 0; c < sub.dim(); ++c)
    worst = std::max(worst, contains_residual(sub.basis.col(c)));
  return worst;
}

double BilinearForm::invariance_residual(const LieAlgebra& g) const {
  // B([z,x],y) + B(x,[z,y]) = (ad_z x)' B y + x' B (ad_z y)
  double worst = 0.0;
  for (int z = 0; z < g.dim(); ++z) {
    MatrixXd m = g.ad[z].transpose() * matrix + matrix * g.ad[z];
    if (m.size()) worst = std::max(worst, m.cwiseAbs().maxCoeff());
  }
  return worst;
}

LieAlgebra LieAlgebra::abelian(int dim, const std::string& name) {
  LieAlgebra g;
  g.name = name;
  for (int i = 0; i < dim; ++i) {
    g.basis_labels.push_back("z" + std::to_string(i + 1));
    g.ad.push_back(MatrixXd::Zero(dim, dim));
  }
  return g;
}

LieAlgebra LieAlgebra::from_raw_tensor(const std::string& name,
                                       std::vector<std::string> labels,
                                       const std::vector<MatrixXd>& ad_slices) {
  int n = static_cast<int>(ad_slices.size());
  for (const auto& m : ad_slices)
    if (m.rows() != n || m.cols() != n)
      throw InputError("structure tensor slice has wrong shape");
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i + 1));
  if (static_cast<int>(labels.size()) != n)
    throw InputError("basis label count does not match dimension");
  LieAlgebra g;
  g.name = name;
  g.basis_labels = std::move(labels);
  g.ad = ad_slices;
  return g;
}

LieAlgebra LieAlgebra::from_brackets(const std::string& name,
                                     std::vector<std::string> labels, int dim,
                                     const std::vector<BracketTerm>& terms) {
  std::vector<MatrixXd> ad(dim, MatrixXd::Zero(dim, dim));
  for (const auto& t : terms) {
    if (t.i < 0 || t.j < 0 || t.k < 0 || t.i >= dim || t.j >= dim || t.k >= dim)
      throw InputError("bracket term index out of range");
    if (t.i >= t.j) throw InputError("bracket terms must have i < j");
    ad[t.i](t.k, t.j) += t.c;
    ad[t.j](t.k, t.i) -= t.c;
  }
  return from_raw_tensor(name, std::move(labels), ad);
}

MatrixXd LieAlgebra::ad_of(const VectorXd& x) const {
  if (x.size() != dim()) throw InputError("vector has wrong dimension");
  MatrixXd m = MatrixXd::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i)
    if (x(i) != 0.0) m += x(i) * ad[i];
  return m;
}

VectorXd LieAlgebra::bracket(const VectorXd& x, const VectorXd& y) const {
  if (x.size() != dim() || y.size() != dim())
    throw InputError("bracket: vector has wrong dimension");
  VectorXd out = VectorXd::Zero(dim());
  for (int i = 0; i < dim(); ++i)
    if (x(i) != 0.0) out += x(i) * (ad[i] * y);
  return out;
}

double LieAlgebra::antisymmetry_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k)
        worst = std::max(worst, std::abs(structure_constant(i, j, k) +
                                         structure_constant(j, i, k)));
  return worst;
}

double LieAlgebra::max_structure_constant() const {
  double m = 0.0;
  for (const auto& a : ad)
    if (a.size()) m = std::max(m, a.cwiseAbs().maxCoeff());
  return m;
}

double jacobi_residual(const LieAlgebra& g) {
  int n = g.dim();
  if (n == 0) return 0.0;
  if (g.antisymmetry_residual() == 0.0) {
    // ad form: the Jacobi sum for (i,j,·,·) is ad_{[ei,ej]} - [ad_i, ad_j].
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        MatrixXd lhs = MatrixXd::Zero(n, n);
        for (int k = 0; k < n; ++k) {
          double c = g.structure_constant(i, j, k);
          if (c != 0.0) lhs += c * g.ad[k];
        }
        MatrixXd diff = lhs - (g.ad[i] * g.ad[j] - g.ad[j] * g.ad[i]);
        worst = std::max(worst, diff.cwiseAbs().maxCoeff());
      }
    return worst;
  }
  // literal quadruple sum for raw tensors
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m)
            s += g.structure_constant(i, j, m) * g.structure_constant(m, k, l) +
                 g.structure_constant(j, k, m) * g.structure_constant(m, i, l) +
                 g.structure_constant(k, i, m) * g.structure_constant(m, j, l);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

BilinearForm killing_form(const LieAlgebra& g) {
  int n = g.dim();
  MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      b(i, j) = b(j, i) = (g.ad[i].transpose().cwiseProduct(g.ad[j])).sum();
  return BilinearForm{b};
}

bool is_unimodular(const LieAlgebra& g, double tol) {
  for (int i = 0; i < g.dim(); ++i)
    if (std::abs(g.ad[i].trace()) >= tol) return false;
  return true;
}

Subspace center(const LieAlgebra& g) {
  int n = g.dim();
  if (n == 0) return Subspace::zero(0);
  // x in center  <=>  sum_j x_j ad_j = 0
  MatrixXd stacked(n * n, n);
  for (int j = 0; j < n; ++j)
    stacked.col(j) = Eigen::Map<const VectorXd>(g.ad[j].data(), n * n);
  return Subspace(n, nullspace(stacked));
}

Subspace derived_ideal(const LieAlgebra& g) {
  int n = g.dim();
  if (n == 0) return Subspace::zero(0);
  MatrixXd cols(n, n * (n - 1) / 2);
  int c = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) cols.col(c++) = g.ad[i].col(j);
  return Subspace(n, column_space(cols));
}

bool is_semisimple(const LieAlgebra& g, double tol) {
  if (g.dim() == 0) return false;
  BilinearForm b = killing_form(g);
  double smax = b.matrix.cwiseAbs().maxCoeff();
  return smallest_singular_value(b.matrix) > tol * std::max(1.0, smax);
}

Subspace maximal_ideal_in(const LieAlgebra& l, const Subspace& k, double tol) {
  if (k.ambient_dim != l.dim())
    throw InputError("maximal_ideal_in: ambient dimension mismatch");
  {
    // precondition: k is a subalgebra
    SubalgebraRestriction r = restrict_to_subalgebra(l, k, "k");
    if (r.closure_residual > 1e-7)
      throw InputError("maximal_ideal_in: k is not a subalgebra");
  }
  MatrixXd u = k.onb();
  for (int iter = 0; iter <= k.dim() + 1 && u.cols() > 0; ++iter) {
    // next = {x in span(u) : [l, x] ⊆ span(u)}
    // residual of [e_a, u c] off span(u): (I - uu') ad_a u c
    int d = static_cast<int>(u.cols());
    MatrixXd proj_off = MatrixXd::Identity(l.dim(), l.dim()) - u * u.transpose();
    MatrixXd constraints(l.dim() * l.dim(), d);
    for (int a = 0; a < l.dim(); ++a) {
      MatrixXd r = proj_off * l.ad[a] * u;  // dim x d
      constraints.middleRows(a * l.dim(), l.dim()) = r;
    }
    MatrixXd ker = nullspace(constraints, tol);
    if (ker.cols() == d) break;  // fixpoint
    u = (ker.cols() == 0) ? MatrixXd(l.dim(), 0) : column_space(u * ker);
  }
  return Subspace(l.dim(), u);
}

SubalgebraRestriction restrict_to_subalgebra(const LieAlgebra& g,
                                             const Subspace& s,
                                             const std::string& name) {
  int d = s.dim();
  SubalgebraRestriction out;
  std::vector<MatrixXd> ad(d, MatrixXd::Zero(d, d));
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      VectorXd br = g.bracket(s.basis.col(i), s.basis.col(j));
      VectorXd c = coords_in_span(s.basis, br);
      worst = std::max(worst, (s.basis * c - br).norm() /
                                  std::max(1.0, br.norm()));
      for (int k = 0; k < d; ++k) ad[i](k, j) = c(k);
    }
  std::vector<std::string> labels;
  for (int i = 0; i < d; ++i) labels.push_back(name + std::to_string(i + 1));
  out.algebra = LieAlgebra::from_raw_tensor(name, labels, ad);
  out.closure_residual = worst;
  return out;
}

nlohmann::json algebra_to_json(const LieAlgebra& g) {
  nlohmann::json j;
  j["name"] = g.name;
  j["dim"] = g.dim();
  j["basis_labels"] = g.basis_labels;
  nlohmann::json brackets = nlohmann::json::array();
  for (int i = 0; i < g.dim(); ++i)
    for (int jj = i + 1; jj < g.dim(); ++jj) {
      nlohmann::json coeffs = nlohmann::json::array();
      for (int k = 0; k < g.dim(); ++k) {
        double c = g.structure_constant(i, jj, k);
        if (c != 0.0) coeffs.push_back({k, c});
      }
      if (!coeffs.empty())
        brackets.push_back({{"i", i}, {"j", jj}, {"coeffs", coeffs}});
    }
  j["brackets"] = brackets;
  return j;
}

LieAlgebra algebra_from_json(const nlohmann::json& j) {
  if (!j.contains("dim") || !j.contains("brackets"))
    throw InputError("algebra JSON: missing required fields");
  int dim = j.at("dim").get<int>();
  if (dim < 0) throw InputError("algebra JSON: negative dimension");
  std::vector<std::string> labels;
  if (j.contains("basis_labels"))
    labels = j.at("basis_labels").get<std::vector<std::string>>();
  std::vector<LieAlgebra::BracketTerm> terms;
  for (const auto& b : j.at("brackets")) {
    int i = b.at("i").get<int>();
    int jj = b.at("j").get<int>();
    for (const auto& kv : b.at("coeffs"))
      terms.push_back({i, jj, kv.at(0).get<int>(), kv.at(1).get<double>()});
  }
  std::string name = j.value("name", "algebra");
  return LieAlgebra::from_brackets(name, labels, dim, terms);
}

nlohmann::json subspace_to_json(const Subspace& s) {
  nlohmann::json vecs = nlohmann::json::array();
  for (int c = 0; c < s.dim(); ++c) {
    nlohmann::json v = nlohmann::json::array();
    for (int r = 0; r < s.ambient_dim; ++r) v.push_back(s.basis(r, c));
    vecs.push_back(v);
  }
  return {{"ambient_dim", s.ambient_dim}, {"vectors", vecs}};
}

Subspace subspace_from_json(const nlohmann::json& j) {
  int n = j.at("ambient_dim").get<int>();
  const auto& vecs = j.at("vectors");
  MatrixXd basis(n, vecs.size());
  int c = 0;
  for (const auto& v : vecs) {
    if (static_cast<int>(v.size()) != n)
      throw InputError("subspace JSON: vector length mismatch");
    for (int r = 0; r < n; ++r) basis(r, c) = v.at(r).get<double>();
    ++c;
  }
  return Subspace::of_independent(basis);
}

}  // namespace cdirac
