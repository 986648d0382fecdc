#include "cdirac/linalg.hpp"

#include <Eigen/SVD>

namespace cdirac {

namespace {
Eigen::JacobiSVD<MatrixXd> svd_of(const MatrixXd& a, unsigned options) {
  return Eigen::JacobiSVD<MatrixXd>(a, options);
}
}  // namespace

int numeric_rank(const MatrixXd& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  auto svd = svd_of(a, 0);
  const auto& sv = svd.singularValues();
  double cut = rel_tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

MatrixXd column_space(const MatrixXd& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return MatrixXd(a.rows(), 0);
  auto svd = svd_of(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double cut = rel_tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

MatrixXd nullspace(const MatrixXd& a, double rel_tol) {
  if (a.cols() == 0) return MatrixXd(0, 0);
  if (a.rows() == 0) return MatrixXd::Identity(a.cols(), a.cols());
  auto svd = svd_of(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cut = rel_tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return svd.matrixV().rightCols(a.cols() - r);
}

MatrixXd coords_in_span(const MatrixXd& basis, const MatrixXd& targets) {
  if (basis.cols() == 0) return MatrixXd(0, targets.cols());
  return basis.colPivHouseholderQr().solve(targets);
}

double membership_residual(const MatrixXd& basis, const VectorXd& v) {
  double scale = std::max(1.0, v.norm());
  if (basis.cols() == 0) return v.norm() / scale;
  VectorXd c = basis.colPivHouseholderQr().solve(v);
  return (basis * c - v).norm() / scale;
}

MatrixXd intersect_spans(const MatrixXd& a, const MatrixXd& b, double rel_tol) {
  if (a.cols() == 0 || b.cols() == 0) return MatrixXd(a.rows(), 0);
  // x = a u = b w  <=>  [a -b] (u;w) = 0
  MatrixXd stacked(a.rows(), a.cols() + b.cols());
  stacked << a, -b;
  MatrixXd ker = nullspace(stacked, rel_tol);
  if (ker.cols() == 0) return MatrixXd(a.rows(), 0);
  MatrixXd pts = a * ker.topRows(a.cols());
  return column_space(pts, rel_tol);
}

MatrixXd form_complement(const MatrixXd& form, const MatrixXd& sub,
                         double rel_tol) {
  if (sub.cols() == 0) return MatrixXd::Identity(form.rows(), form.cols());
  return nullspace(sub.transpose() * form, rel_tol);
}

int definiteness_sign(const MatrixXd& sym, double tol) {
  if (sym.rows() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym);
  const auto& ev = es.eigenvalues();
  double scale = std::max(1.0, std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))));
  if (ev(0) > tol * scale) return +1;
  if (ev(ev.size() - 1) < -tol * scale) return -1;
  return 0;
}

double smallest_singular_value(const MatrixXd& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  auto svd = svd_of(a, 0);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

VectorXd realify(const MatrixXcd& m) {
  VectorXd out(2 * m.size());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out(k) = m(i, j).real();
      out(m.size() + k) = m(i, j).imag();
      ++k;
    }
  return out;
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

VectorXd random_unit_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  VectorXd v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = g(rng);
  } while (v.norm() < 1e-6);
  return v / v.norm();
}

MatrixXd random_special_orthogonal(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  Eigen::HouseholderQR<MatrixXd> qr(a);
  MatrixXd q = qr.householderQ();
  MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

MatrixXd random_invertible(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  MatrixXd q1 = random_special_orthogonal(rng, n);
  MatrixXd q2 = random_special_orthogonal(rng, n);
  VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = u(rng);
  return q1 * d.asDiagonal() * q2;
}

}  // namespace cdirac
