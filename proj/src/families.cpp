#include "cdirac/families.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cdirac {

namespace {

constexpr cplx kI{0.0, 1.0};

std::string idx_label(const std::string& head, int r, int s) {
  return head + std::to_string(r + 1) + "," + std::to_string(s + 1);
}

struct Gen {
  std::string label;
  MatrixXcd m;
};

// real skew E_rs - E_sr within a block
void so_block(std::vector<Gen>& out, int N, int o, int a) {
  for (int r = 0; r < a; ++r)
    for (int s = r + 1; s < a; ++s) {
      MatrixXcd m = MatrixXcd::Zero(N, N);
      m(o + r, o + s) = 1.0;
      m(o + s, o + r) = -1.0;
      out.push_back({idx_label("A", o + r, o + s), m});
    }
}

// anti-Hermitian traceless su(a) block: A_rs, i(E_rs+E_sr), i(E_rr-E_{r+1,r+1})
void su_block(std::vector<Gen>& out, int N, int o, int a) {
  so_block(out, N, o, a);
  for (int r = 0; r < a; ++r)
    for (int s = r + 1; s < a; ++s) {
      MatrixXcd m = MatrixXcd::Zero(N, N);
      m(o + r, o + s) = kI;
      m(o + s, o + r) = kI;
      out.push_back({idx_label("iS", o + r, o + s), m});
    }
  for (int r = 0; r + 1 < a; ++r) {
    MatrixXcd m = MatrixXcd::Zero(N, N);
    m(o + r, o + r) = kI;
    m(o + r + 1, o + r + 1) = -kI;
    out.push_back({"T" + std::to_string(o + r + 1), m});
  }
}

MatrixXcd block_identity_i(int N, int o, int a) {
  MatrixXcd m = MatrixXcd::Zero(N, N);
  for (int r = 0; r < a; ++r) m(o + r, o + r) = kI;
  return m;
}

// real symmetric basis of a block (including diagonal)
void sym_block(std::vector<Gen>& out, int N, int o, int a, bool diag_too) {
  if (diag_too)
    for (int r = 0; r < a; ++r) {
      MatrixXcd m = MatrixXcd::Zero(N, N);
      m(o + r, o + r) = 1.0;
      out.push_back({"E" + std::to_string(o + r + 1), m});
    }
  for (int r = 0; r < a; ++r)
    for (int s = r + 1; s < a; ++s) {
      MatrixXcd m = MatrixXcd::Zero(N, N);
      m(o + r, o + s) = 1.0;
      m(o + s, o + r) = 1.0;
      out.push_back({idx_label("S", o + r, o + s), m});
    }
}

// quaternionic generators in the [[Z,W],[-conj(W),conj(Z)]] layout.
// eta carries the signature of the quaternionic Hermitian form.
struct QuatLayout {
  int N;  // full complex dimension (2 * quaternion dim of the layout)
  std::vector<int> map1, map2;
};

void quat_place(MatrixXcd& m, const QuatLayout& L, int a, int b, cplx z,
                cplx w) {
  m(L.map1[a], L.map1[b]) += z;
  m(L.map2[a], L.map2[b]) += std::conj(z);
  m(L.map1[a], L.map2[b]) += w;
  m(L.map2[a], L.map1[b]) += -std::conj(w);
}

void quat_sp_block(std::vector<Gen>& out, const QuatLayout& L,
                   const std::vector<int>& eta, int o, int a,
                   const std::string& tag) {
  for (int r = 0; r < a; ++r) {
    const cplx zs[3] = {kI, 0.0, 0.0};
    const cplx ws[3] = {0.0, 1.0, kI};
    const char* names[3] = {"i", "j", "k"};
    for (int t = 0; t < 3; ++t) {
      MatrixXcd m = MatrixXcd::Zero(L.N, L.N);
      quat_place(m, L, o + r, o + r, zs[t], ws[t]);
      out.push_back({tag + names[t] + std::to_string(o + r + 1), m});
    }
  }
  for (int r = 0; r < a; ++r)
    for (int s = r + 1; s < a; ++s) {
      const cplx zs[4] = {1.0, kI, 0.0, 0.0};
      const cplx ws[4] = {0.0, 0.0, 1.0, kI};
      const char* names[4] = {"1", "i", "j", "k"};
      double sgn = eta[o + r] * eta[o + s];
      for (int t = 0; t < 4; ++t) {
        MatrixXcd m = MatrixXcd::Zero(L.N, L.N);
        cplx z = zs[t], w = ws[t];
        cplx zsr = (sgn > 0) ? -std::conj(z) : std::conj(z);
        cplx wsr = (sgn > 0) ? w : -w;
        quat_place(m, L, o + r, o + s, z, w);
        quat_place(m, L, o + s, o + r, zsr, wsr);
        out.push_back(
            {tag + names[t] + idx_label("", o + r, o + s), m});
      }
    }
}

// complex anti-Hermitian u(a) block realized with W = 0 in a quaternion layout
void quat_u_block(std::vector<Gen>& out, const QuatLayout& L, int o, int a) {
  std::vector<Gen> us;
  su_block(us, static_cast<int>(L.map1.size()), o, a);
  us.push_back({"iI" + std::to_string(a), block_identity_i(
                                              static_cast<int>(L.map1.size()),
                                              o, a)});
  for (auto& g : us) {
    MatrixXcd m = MatrixXcd::Zero(L.N, L.N);
    for (int r = 0; r < static_cast<int>(L.map1.size()); ++r)
      for (int s = 0; s < static_cast<int>(L.map1.size()); ++s) {
        cplx z = g.m(r, s);
        if (z != 0.0) {
          m(L.map1[r], L.map1[s]) += z;
          m(L.map2[r], L.map2[s]) += std::conj(z);
        }
      }
    out.push_back({"u:" + g.label, m});
  }
}

// u(m) inside so(2m): A + iB -> [[A, B],[-B, A]] placed at rows o..o+m,
// o+m..o+2m (real output).
MatrixXcd u_embed_real(int N, int o1, int o2, const MatrixXcd& u) {
  int m = static_cast<int>(u.rows());
  MatrixXcd out = MatrixXcd::Zero(N, N);
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s) {
      double re = u(r, s).real(), im = u(r, s).imag();
      out(o1 + r, o1 + s) += re;
      out(o2 + r, o2 + s) += re;
      out(o1 + r, o2 + s) += im;
      out(o2 + r, o1 + s) += -im;
    }
  return out;
}

MatrixXd eta_real(int p, int q) {
  MatrixXd e = MatrixXd::Identity(p + q, p + q);
  for (int i = 0; i < q; ++i) e(p + i, p + i) = -1.0;
  return e;
}

MatrixXd sympl_j(int n) {
  MatrixXd j = MatrixXd::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    j(i, n + i) = -1.0;
    j(n + i, i) = 1.0;
  }
  return j;
}

// Finish a BuiltAlgebra whose basis matrices and labels are set: computes the
// structure constants by least squares, the theta signs, and validates that
// compact directions come first.
void finalize(BuiltAlgebra& g, const std::string& name,
              std::vector<Gen> gens) {
  int d = static_cast<int>(gens.size());
  int N = g.matrix_dim;
  g.basis_matrices.clear();
  std::vector<std::string> labels;
  for (auto& gen : gens) {
    g.basis_matrices.push_back(gen.m);
    labels.push_back(gen.label);
  }
  MatrixXd flat(2 * N * N, d);
  for (int i = 0; i < d; ++i) flat.col(i) = realify(g.basis_matrices[i]);
  if (d > 0 && numeric_rank(flat) != d)
    throw std::logic_error("family builder produced a dependent basis: " + name);
  Eigen::ColPivHouseholderQR<MatrixXd> qr(flat);

  std::vector<MatrixXd> ad(d, MatrixXd::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      MatrixXcd c = g.basis_matrices[i] * g.basis_matrices[j] -
                    g.basis_matrices[j] * g.basis_matrices[i];
      VectorXd x = qr.solve(realify(c));
      for (int k = 0; k < d; ++k) {
        ad[i](k, j) = x(k);
        ad[j](k, i) = -x(k);
      }
    }
  g.algebra = LieAlgebra::from_raw_tensor(name, labels, ad);

  g.theta = MatrixXd::Zero(d, d);
  bool seen_noncompact = false;
  for (int i = 0; i < d; ++i) {
    const MatrixXcd& m = g.basis_matrices[i];
    MatrixXcd th = -m.adjoint();
    double plus = (th - m).cwiseAbs().maxCoeff();
    double minus = (th + m).cwiseAbs().maxCoeff();
    if (plus < 1e-12) {
      if (seen_noncompact)
        throw std::logic_error("basis not ordered compact-first: " + name);
      g.theta(i, i) = 1.0;
    } else if (minus < 1e-12) {
      seen_noncompact = true;
      g.theta(i, i) = -1.0;
    } else {
      throw std::logic_error("basis vector is not a theta eigenvector: " +
                             name);
    }
  }
}

int int_arg(const std::string& spec, const std::string& what, int v, int lo) {
  if (v < lo)
    throw InputError(what + " parameter out of range in \"" + spec + "\"");
  return v;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::SlR: return "sl(n,R)";
    case Family::Su: return "su(n)";
    case Family::SuPQ: return "su(p,q)";
    case Family::So: return "so(n)";
    case Family::SoPQ: return "so(p,q)";
    case Family::SpR: return "sp(n,R)";
    case Family::SpCompact: return "sp(n)";
    case Family::SpPQ: return "sp(p,q)";
    case Family::U: return "u(n)";
    case Family::SlC: return "sl(n,C)";
    case Family::SoC: return "so(n,C)";
    case Family::SpC: return "sp(n,C)";
    case Family::SoStar: return "so*(2n)";
    case Family::Abelian: return "R^k";
    case Family::Sum: return "sum";
  }
  return "?";
}

VectorXd BuiltAlgebra::to_coords(const MatrixXcd& m, double tol) const {
  return to_coords_batch({m}, tol).col(0);
}

MatrixXd BuiltAlgebra::to_coords_batch(const std::vector<MatrixXcd>& ms,
                                       double tol) const {
  int d = dim();
  MatrixXd flat(2 * matrix_dim * matrix_dim, d);
  for (int i = 0; i < d; ++i) flat.col(i) = realify(basis_matrices[i]);
  Eigen::ColPivHouseholderQR<MatrixXd> qr(flat);
  MatrixXd out(d, ms.size());
  for (size_t c = 0; c < ms.size(); ++c) {
    VectorXd rhs = realify(ms[c]);
    VectorXd x = qr.solve(rhs);
    double res = (flat * x - rhs).norm() / std::max(1.0, rhs.norm());
    if (res > tol)
      throw InputError("matrix does not lie in the algebra (residual " +
                       std::to_string(res) + ")");
    out.col(c) = x;
  }
  return out;
}

MatrixXcd BuiltAlgebra::to_matrix(const VectorXd& coords) const {
  MatrixXcd m = MatrixXcd::Zero(matrix_dim, matrix_dim);
  for (int i = 0; i < dim(); ++i)
    if (coords(i) != 0.0) m += coords(i) * basis_matrices[i];
  return m;
}

BilinearForm BuiltAlgebra::trace_form() const {
  int d = dim();
  MatrixXd t(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      cplx tr = (basis_matrices[i] * basis_matrices[j]).trace();
      t(i, j) = t(j, i) = -tr.real();
    }
  return BilinearForm{t};
}

BilinearForm BuiltAlgebra::compact_inner_form() const {
  BilinearForm b = killing_form(algebra);
  Subspace z = center(algebra);
  if (z.dim() == 0) return BilinearForm{-b.matrix};
  BilinearForm tf = trace_form();
  // trace-form-orthogonal projector onto the center
  MatrixXd zb = z.basis;
  MatrixXd inner = zb.transpose() * tf.matrix * zb;
  MatrixXd proj = zb * inner.inverse() * zb.transpose() * tf.matrix;
  MatrixXd p = -b.matrix + proj.transpose() * tf.matrix * proj;
  return BilinearForm{0.5 * (p + p.transpose())};
}

BuiltAlgebra build_family(Family f, const std::vector<int>& params) {
  BuiltAlgebra g;
  g.family = f;
  g.params = params;
  std::vector<Gen> l, p;
  auto pick = [&](int i) { return params.at(i); };
  switch (f) {
    case Family::SlR: {
      int n = int_arg("sl(n,R)", "n", pick(0), 2);
      g.matrix_dim = n;
      so_block(l, n, 0, n);
      for (int r = 0; r + 1 < n; ++r) {
        MatrixXcd m = MatrixXcd::Zero(n, n);
        m(r, r) = 1.0;
        m(r + 1, r + 1) = -1.0;
        p.push_back({"D" + std::to_string(r + 1), m});
      }
      sym_block(p, n, 0, n, false);
      break;
    }
    case Family::Su: {
      int n = int_arg("su(n)", "n", pick(0), 1);
      g.matrix_dim = n;
      su_block(l, n, 0, n);
      break;
    }
    case Family::U: {
      int n = int_arg("u(n)", "n", pick(0), 1);
      g.matrix_dim = n;
      su_block(l, n, 0, n);
      l.push_back({"iI", block_identity_i(n, 0, n)});
      break;
    }
    case Family::SuPQ: {
      int pp = int_arg("su(p,q)", "p", pick(0), 1);
      int qq = int_arg("su(p,q)", "q", pick(1), 1);
      int n = pp + qq;
      g.matrix_dim = n;
      so_block(l, n, 0, pp);
      so_block(l, n, pp, qq);
      std::vector<Gen> tmp;
      su_block(tmp, n, 0, pp);
      for (auto& t : tmp)
        if (t.label[0] == 'i') l.push_back(t);
      tmp.clear();
      su_block(tmp, n, pp, qq);
      for (auto& t : tmp)
        if (t.label[0] == 'i') l.push_back(t);
      for (int r = 0; r + 1 < n; ++r) {
        MatrixXcd m = MatrixXcd::Zero(n, n);
        m(r, r) = kI;
        m(r + 1, r + 1) = -kI;
        l.push_back({"T" + std::to_string(r + 1), m});
      }
      for (int r = 0; r < pp; ++r)
        for (int s = 0; s < qq; ++s) {
          MatrixXcd m = MatrixXcd::Zero(n, n);
          m(r, pp + s) = 1.0;
          m(pp + s, r) = 1.0;
          p.push_back({idx_label("B", r, pp + s), m});
          MatrixXcd mi = MatrixXcd::Zero(n, n);
          mi(r, pp + s) = kI;
          mi(pp + s, r) = -kI;
          p.push_back({idx_label("iB", r, pp + s), mi});
        }
      break;
    }
    case Family::So: {
      int n = int_arg("so(n)", "n", pick(0), 1);
      g.matrix_dim = n;
      so_block(l, n, 0, n);
      break;
    }
    case Family::SoPQ: {
      int pp = int_arg("so(p,q)", "p", pick(0), 1);
      int qq = int_arg("so(p,q)", "q", pick(1), 1);
      int n = pp + qq;
      g.matrix_dim = n;
      so_block(l, n, 0, pp);
      so_block(l, n, pp, qq);
      for (int r = 0; r < pp; ++r)
        for (int s = 0; s < qq; ++s) {
          MatrixXcd m = MatrixXcd::Zero(n, n);
          m(r, pp + s) = 1.0;
          m(pp + s, r) = 1.0;
          p.push_back({idx_label("C", r, pp + s), m});
        }
      break;
    }
    case Family::SpR: {
      int n = int_arg("sp(n,R)", "n", pick(0), 1);
      g.matrix_dim = 2 * n;
      std::vector<Gen> skews, syms;
      so_block(skews, n, 0, n);
      sym_block(syms, n, 0, n, true);
      for (auto& a : skews) {
        MatrixXcd m = MatrixXcd::Zero(2 * n, 2 * n);
        m.topLeftCorner(n, n) = a.m;
        m.bottomRightCorner(n, n) = a.m;
        l.push_back({"u:" + a.label, m});
      }
      for (auto& s : syms) {
        MatrixXcd m = MatrixXcd::Zero(2 * n, 2 * n);
        m.topRightCorner(n, n) = s.m;
        m.bottomLeftCorner(n, n) = -s.m;
        l.push_back({"u:i" + s.label, m});
      }
      for (auto& s : syms) {
        MatrixXcd m = MatrixXcd::Zero(2 * n, 2 * n);
        m.topLeftCorner(n, n) = s.m;
        m.bottomRightCorner(n, n) = -s.m;
        p.push_back({"P:" + s.label, m});
        MatrixXcd m2 = MatrixXcd::Zero(2 * n, 2 * n);
        m2.topRightCorner(n, n) = s.m;
        m2.bottomLeftCorner(n, n) = s.m;
        p.push_back({"Q:" + s.label, m2});
      }
      break;
    }
    case Family::SpCompact: {
      int n = int_arg("sp(n)", "n", pick(0), 1);
      g.matrix_dim = 2 * n;
      QuatLayout L{2 * n, {}, {}};
      for (int i = 0; i < n; ++i) {
        L.map1.push_back(i);
        L.map2.push_back(n + i);
      }
      quat_sp_block(l, L, std::vector<int>(n, 1), 0, n, "q");
      break;
    }
    case Family::SpPQ: {
      int pp = int_arg("sp(p,q)", "p", pick(0), 1);
      int qq = int_arg("sp(p,q)", "q", pick(1), 1);
      int n = pp + qq;
      g.matrix_dim = 2 * n;
      QuatLayout L{2 * n, {}, {}};
      for (int i = 0; i < n; ++i) {
        L.map1.push_back(i);
        L.map2.push_back(n + i);
      }
      std::vector<int> eta(n, 1);
      for (int i = pp; i < n; ++i) eta[i] = -1;
      quat_sp_block(l, L, eta, 0, pp, "q");
      quat_sp_block(l, L, eta, pp, qq, "q");
      // cross pairs are the noncompact part
      for (int r = 0; r < pp; ++r)
        for (int s = pp; s < n; ++s) {
          const cplx zs[4] = {1.0, kI, 0.0, 0.0};
          const cplx ws[4] = {0.0, 0.0, 1.0, kI};
          const char* names[4] = {"1", "i", "j", "k"};
          for (int t = 0; t < 4; ++t) {
            MatrixXcd m = MatrixXcd::Zero(2 * n, 2 * n);
            quat_place(m, L, r, s, zs[t], ws[t]);
            quat_place(m, L, s, r, std::conj(zs[t]), -ws[t]);
            p.push_back({std::string("x") + names[t] + idx_label("", r, s), m});
          }
        }
      break;
    }
    case Family::SlC: {
      int n = int_arg("sl(n,C)", "n", pick(0), 2);
      g.matrix_dim = n;
      su_block(l, n, 0, n);
      std::vector<Gen> tmp;
      su_block(tmp, n, 0, n);
      for (auto& t : tmp) p.push_back({"i:" + t.label, kI * t.m});
      break;
    }
    case Family::SoC: {
      int n = int_arg("so(n,C)", "n", pick(0), 2);
      g.matrix_dim = n;
      so_block(l, n, 0, n);
      std::vector<Gen> tmp;
      so_block(tmp, n, 0, n);
      for (auto& t : tmp) p.push_back({"i:" + t.label, kI * t.m});
      break;
    }
    case Family::SpC: {
      int n = int_arg("sp(n,C)", "n", pick(0), 1);
      BuiltAlgebra spr = build_family(Family::SpR, {n});
      g.matrix_dim = 2 * n;
      int lu = 0;
      for (int i = 0; i < spr.dim(); ++i)
        if (spr.theta(i, i) > 0) ++lu;
      for (int i = 0; i < lu; ++i)
        l.push_back({spr.algebra.basis_labels[i], spr.basis_matrices[i]});
      for (int i = lu; i < spr.dim(); ++i)
        l.push_back({"i:" + spr.algebra.basis_labels[i],
                     kI * spr.basis_matrices[i]});
      for (int i = lu; i < spr.dim(); ++i)
        p.push_back({spr.algebra.basis_labels[i], spr.basis_matrices[i]});
      for (int i = 0; i < lu; ++i)
        p.push_back({"i:" + spr.algebra.basis_labels[i],
                     kI * spr.basis_matrices[i]});
      break;
    }
    case Family::SoStar: {
      int n = int_arg("so*(2n)", "n", pick(0), 2);
      g.matrix_dim = 2 * n;
      std::vector<Gen> skews, syms;
      so_block(skews, n, 0, n);
      sym_block(syms, n, 0, n, true);
      for (auto& a : skews) {
        MatrixXcd m = MatrixXcd::Zero(2 * n, 2 * n);
        m.topLeftCorner(n, n) = a.m;
        m.bottomRightCorner(n, n) = a.m;
        l.push_back({"u:" + a.label, m});
      }
      for (auto& s : syms) {
        MatrixXcd m = MatrixXcd::Zero(2 * n, 2 * n);
        m.topRightCorner(n, n) = s.m;
        m.bottomLeftCorner(n, n) = -s.m;
        l.push_back({"u:i" + s.label, m});
      }
      for (auto& a : skews) {
        MatrixXcd m = MatrixXcd::Zero(2 * n, 2 * n);
        m.topLeftCorner(n, n) = kI * a.m;
        m.bottomRightCorner(n, n) = -kI * a.m;
        p.push_back({"P:" + a.label, m});
        MatrixXcd m2 = MatrixXcd::Zero(2 * n, 2 * n);
        m2.topRightCorner(n, n) = kI * a.m;
        m2.bottomLeftCorner(n, n) = kI * a.m;
        p.push_back({"Q:" + a.label, m2});
      }
      break;
    }
    case Family::Abelian: {
      int k = int_arg("R^k", "k", pick(0), 0);
      g.matrix_dim = std::max(1, k);
      for (int r = 0; r < k; ++r) {
        MatrixXcd m = MatrixXcd::Zero(g.matrix_dim, g.matrix_dim);
        m(r, r) = kI;
        l.push_back({"z" + std::to_string(r + 1), m});
      }
      break;
    }
    case Family::Sum:
      throw InputError("build_family cannot build sums directly");
  }
  std::vector<Gen> gens = l;
  gens.insert(gens.end(), p.begin(), p.end());
  std::ostringstream name;
  name << family_name(f) << "[";
  for (size_t i = 0; i < params.size(); ++i)
    name << (i ? "," : "") << params[i];
  name << "]";
  finalize(g, name.str(), std::move(gens));
  return g;
}

BuiltAlgebra build_sl2_normalized(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw InputError("sl(2,R) normalized basis needs a, b > 0");
  BuiltAlgebra g;
  g.family = Family::SlR;
  g.params = {2};
  g.matrix_dim = 2;
  double c = a * b / std::sqrt(a * a + b * b);
  MatrixXcd x1(2, 2), x2(2, 2), x3(2, 2);
  x1 << 0, a, a, 0;
  x2 << b, 0, 0, -b;
  x3 << 0, c, -c, 0;
  // noncompact directions first to match the usual (X1, X2, X3) order
  std::vector<Gen> gens = {{"X1", x1}, {"X2", x2}, {"X3", x3}};
  int d = 3;
  g.basis_matrices = {x1, x2, x3};
  MatrixXd flat(2 * 4, d);
  for (int i = 0; i < d; ++i) flat.col(i) = realify(g.basis_matrices[i]);
  Eigen::ColPivHouseholderQR<MatrixXd> qr(flat);
  std::vector<MatrixXd> ad(d, MatrixXd::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      MatrixXcd cm = g.basis_matrices[i] * g.basis_matrices[j] -
                     g.basis_matrices[j] * g.basis_matrices[i];
      VectorXd x = qr.solve(realify(cm));
      for (int k = 0; k < d; ++k) {
        ad[i](k, j) = x(k);
        ad[j](k, i) = -x(k);
      }
    }
  g.algebra =
      LieAlgebra::from_raw_tensor("sl(2,R)~", {"X1", "X2", "X3"}, ad);
  g.theta = MatrixXd::Zero(3, 3);
  g.theta(0, 0) = -1.0;
  g.theta(1, 1) = -1.0;
  g.theta(2, 2) = 1.0;
  return g;
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  int n = a.dim() + b.dim();
  std::vector<MatrixXd> ad(n, MatrixXd::Zero(n, n));
  for (int i = 0; i < a.dim(); ++i)
    ad[i].topLeftCorner(a.dim(), a.dim()) = a.ad[i];
  for (int i = 0; i < b.dim(); ++i)
    ad[a.dim() + i].bottomRightCorner(b.dim(), b.dim()) = b.ad[i];
  std::vector<std::string> labels;
  for (auto& s : a.basis_labels) labels.push_back("1:" + s);
  for (auto& s : b.basis_labels) labels.push_back("2:" + s);
  return LieAlgebra::from_raw_tensor(a.name + "+" + b.name, labels, ad);
}

BuiltAlgebra direct_sum(const BuiltAlgebra& a, const BuiltAlgebra& b) {
  BuiltAlgebra g;
  g.family = Family::Sum;
  g.matrix_dim = a.matrix_dim + b.matrix_dim;
  g.algebra = direct_sum(a.algebra, b.algebra);
  auto push_atoms = [&](const BuiltAlgebra& x, int coff, int moff) {
    if (x.family == Family::Sum) {
      for (size_t i = 0; i < x.components.size(); ++i) {
        g.components.push_back(x.components[i]);
        g.component_offsets.push_back(coff + x.component_offsets[i]);
        g.component_mat_offsets.push_back(moff + x.component_mat_offsets[i]);
      }
    } else {
      g.components.push_back(x);
      g.component_offsets.push_back(coff);
      g.component_mat_offsets.push_back(moff);
    }
  };
  push_atoms(a, 0, 0);
  push_atoms(b, a.dim(), a.matrix_dim);
  for (int i = 0; i < a.dim(); ++i) {
    MatrixXcd m = MatrixXcd::Zero(g.matrix_dim, g.matrix_dim);
    m.topLeftCorner(a.matrix_dim, a.matrix_dim) = a.basis_matrices[i];
    g.basis_matrices.push_back(m);
  }
  for (int i = 0; i < b.dim(); ++i) {
    MatrixXcd m = MatrixXcd::Zero(g.matrix_dim, g.matrix_dim);
    m.bottomRightCorner(b.matrix_dim, b.matrix_dim) = b.basis_matrices[i];
    g.basis_matrices.push_back(m);
  }
  g.theta = MatrixXd::Zero(g.dim(), g.dim());
  g.theta.topLeftCorner(a.dim(), a.dim()) = a.theta;
  g.theta.bottomRightCorner(b.dim(), b.dim()) = b.theta;
  return g;
}

namespace {

std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else
      cur.push_back(c);
  }
  parts.push_back(cur);
  return parts;
}

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

std::vector<int> parse_int_args(const std::string& spec,
                                const std::string& inner) {
  std::vector<int> out;
  for (auto& tok : split_top_level(inner, ',')) {
    if (tok == "R" || tok == "C") continue;
    try {
      size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("cannot parse parameter \"" + tok + "\" in \"" + spec +
                       "\"");
    }
  }
  return out;
}

BuiltAlgebra parse_atom(const std::string& atom) {
  std::string s = strip(atom);
  if (s.empty()) throw InputError("empty algebra spec");
  if (s == "R") return build_family(Family::Abelian, {1});
  if (s.rfind("R^", 0) == 0)
    return build_family(Family::Abelian, {std::stoi(s.substr(2))});
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw InputError("cannot parse algebra spec \"" + s + "\"");
  std::string head = s.substr(0, open);
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  bool has_r = inner.find('R') != std::string::npos;
  bool has_c = inner.find('C') != std::string::npos;
  std::vector<int> args = parse_int_args(s, inner);
  if (head == "sl") {
    if (args.size() != 1) throw InputError("sl needs one integer: " + s);
    return build_family(has_c ? Family::SlC : Family::SlR, args);
  }
  if (head == "su") {
    if (args.size() == 1) return build_family(Family::Su, args);
    if (args.size() == 2) return build_family(Family::SuPQ, args);
    throw InputError("su needs one or two integers: " + s);
  }
  if (head == "su*")
    throw UnsupportedConstruction("construction unsupported: su*(2n)");
  if (head == "so") {
    if (has_c) {
      if (args.size() != 1) throw InputError("so(n,C) needs one integer: " + s);
      return build_family(Family::SoC, args);
    }
    if (args.size() == 1) return build_family(Family::So, args);
    if (args.size() == 2) return build_family(Family::SoPQ, args);
    throw InputError("so needs one or two integers: " + s);
  }
  if (head == "so*") {
    if (args.size() != 1 || args[0] % 2 != 0)
      throw InputError("so* takes one even integer: " + s);
    return build_family(Family::SoStar, {args[0] / 2});
  }
  if (head == "sp") {
    if (has_r) {
      if (args.size() != 1) throw InputError("sp(n,R) needs one integer: " + s);
      return build_family(Family::SpR, args);
    }
    if (has_c) {
      if (args.size() != 1) throw InputError("sp(n,C) needs one integer: " + s);
      return build_family(Family::SpC, args);
    }
    if (args.size() == 1) return build_family(Family::SpCompact, args);
    if (args.size() == 2) return build_family(Family::SpPQ, args);
    throw InputError("sp needs one or two integers: " + s);
  }
  if (head == "u") {
    if (args.size() != 1) throw InputError("u needs one integer: " + s);
    return build_family(Family::U, args);
  }
  if (head == "e6" || head == "e7" || head == "e8" || head == "f4" ||
      head == "g2" || head == "E6" || head == "E7" || head == "E8" ||
      head == "F4" || head == "G2")
    throw UnsupportedConstruction("construction unsupported: exceptional " +
                                  s);
  throw InputError("unknown algebra family \"" + head + "\"");
}

}  // namespace

BuiltAlgebra parse_algebra(const std::string& spec) {
  auto parts = split_top_level(strip(spec), '+');
  if (parts.empty()) throw InputError("empty algebra spec");
  BuiltAlgebra out = parse_atom(parts[0]);
  for (size_t i = 1; i < parts.size(); ++i)
    out = direct_sum(out, parse_atom(parts[i]));
  if (parts.size() > 1) out.algebra.name = strip(spec);
  return out;
}

// ---------------------------------------------------------------------------
// subalgebra embeddings
// ---------------------------------------------------------------------------

namespace {

struct Unit {
  enum Kind { Zero, Full, Torus, SoU, SuU, SpU, UU, U1, SUList, DSo, DSu, DSp };
  Kind kind;
  std::vector<int> sizes;
};

Unit parse_unit(const std::string& tok) {
  std::string s = strip(tok);
  if (s == "0" || s == "zero") return {Unit::Zero, {}};
  if (s == "full" || s == "*") return {Unit::Full, {}};
  if (s == "torus") return {Unit::Torus, {}};
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw InputError("cannot parse subalgebra unit \"" + s + "\"");
  std::string head = s.substr(0, open);
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  if (head == "s") {
    // s(u(a)+u(b)+...)
    std::vector<int> sizes;
    for (auto& sub : split_top_level(inner, '+')) {
      Unit u = parse_unit(sub);
      if (u.kind != Unit::UU || u.sizes.size() != 1)
        throw InputError("s(...) expects u(a) factors: " + s);
      sizes.push_back(u.sizes[0]);
    }
    return {Unit::SUList, sizes};
  }
  std::vector<int> args = parse_int_args(s, inner);
  if (args.size() != 1)
    throw InputError("subalgebra unit needs one integer: " + s);
  if (head == "so") return {Unit::SoU, args};
  if (head == "su") return {Unit::SuU, args};
  if (head == "sp") return {Unit::SpU, args};
  if (head == "u") return {args[0] == 1 ? Unit::U1 : Unit::UU, args};
  if (head == "dso") return {Unit::DSo, args};
  if (head == "dsu") return {Unit::DSu, args};
  if (head == "dsp") return {Unit::DSp, args};
  throw InputError("unknown subalgebra unit \"" + head + "\"");
}

// consumes `take` slots from a two-slot layout, forbidding boundary crossing
struct SlotCursor {
  std::vector<int> slot_size, slot_offset;
  int slot = 0, used = 0;
  int place(int take, const std::string& what) {
    while (slot < static_cast<int>(slot_size.size()) &&
           used == slot_size[slot]) {
      ++slot;
      used = 0;
    }
    if (slot >= static_cast<int>(slot_size.size()) ||
        used + take > slot_size[slot])
      throw InputError("subalgebra unit " + what +
                       " does not fit the block structure");
    int off = slot_offset[slot] + used;
    used += take;
    return off;
  }
};

void su_list_block(std::vector<Gen>& out, int N, int start,
                   const std::vector<int>& sizes) {
  std::vector<int> offs;
  int o = start;
  for (int s : sizes) {
    su_block(out, N, o, s);
    offs.push_back(o);
    o += s;
  }
  for (size_t t = 0; t + 1 < sizes.size(); ++t) {
    MatrixXcd m = MatrixXcd::Zero(N, N);
    m += static_cast<double>(sizes[t + 1]) *
         block_identity_i(N, offs[t], sizes[t]);
    m -= static_cast<double>(sizes[t]) *
         block_identity_i(N, offs[t + 1], sizes[t + 1]);
    out.push_back({"tau" + std::to_string(t + 1), m});
  }
}

// quaternionic su(2m) subalgebra of a u-block at offset o
void sp_in_su_block(std::vector<Gen>& out, int N, int o, int m) {
  QuatLayout L{N, {}, {}};
  for (int i = 0; i < m; ++i) {
    L.map1.push_back(o + i);
    L.map2.push_back(o + m + i);
  }
  quat_sp_block(out, L, std::vector<int>(m, 1), 0, m, "sp:");
}

}  // namespace

Subspace embed_subalgebra(const BuiltAlgebra& g, const std::string& pattern) {
  std::string pat = strip(pattern);
  if (g.family == Family::Sum) {
    auto parts = split_top_level(pat, ';');
    if (parts.size() != g.components.size())
      throw InputError(
          "direct-sum pattern needs one ';'-separated entry per component");
    MatrixXd cols(g.dim(), 0);
    for (size_t c = 0; c < parts.size(); ++c) {
      Subspace sub = embed_subalgebra(g.components[c], parts[c]);
      MatrixXd lifted = MatrixXd::Zero(g.dim(), sub.dim());
      lifted.middleRows(g.component_offsets[c], g.components[c].dim()) =
          sub.basis;
      MatrixXd joined(g.dim(), cols.cols() + lifted.cols());
      joined << cols, lifted;
      cols = joined;
    }
    return Subspace::of_independent(cols);
  }

  if (pat == "0" || pat == "zero") return Subspace::zero(g.dim());

  std::vector<Unit> units;
  for (auto& tok : split_top_level(pat, '+')) units.push_back(parse_unit(tok));

  // "u(1)" leading a mixed pattern means the center of l
  bool all_u = true;
  for (auto& u : units)
    if (u.kind != Unit::UU && u.kind != Unit::U1) all_u = false;

  int l_dim = 0;
  for (int i = 0; i < g.dim(); ++i)
    if (g.theta(i, i) > 0) ++l_dim;

  if (units.size() == 1 && units[0].kind == Unit::Full) {
    MatrixXd basis = MatrixXd::Identity(g.dim(), g.dim()).leftCols(l_dim);
    return Subspace::of_independent(basis);
  }

  const int N = g.matrix_dim;
  std::vector<Gen> gens;
  auto add_center = [&]() {
    switch (g.family) {
      case Family::SuPQ: {
        int pp = g.params[0], qq = g.params[1];
        MatrixXcd m = static_cast<double>(qq) * block_identity_i(N, 0, pp) -
                      static_cast<double>(pp) * block_identity_i(N, pp, qq);
        gens.push_back({"z", m});
        break;
      }
      case Family::U:
        gens.push_back({"z", block_identity_i(N, 0, g.params[0])});
        break;
      case Family::SpR:
      case Family::SoStar: {
        int n = g.params[0];
        gens.push_back(
            {"z", u_embed_real(N, 0, n, block_identity_i(n, 0, n))});
        break;
      }
      default:
        throw InputError("pattern: u(1) center not available for " +
                         family_name(g.family));
    }
  };

  switch (g.family) {
    case Family::SlR:
    case Family::So:
    case Family::SoC: {
      int n = g.params[0];
      SlotCursor cur{{n}, {0}};
      for (auto& u : units) {
        if (u.kind == Unit::SoU)
          so_block(gens, N, cur.place(u.sizes[0], "so"), u.sizes[0]);
        else if (u.kind == Unit::UU || u.kind == Unit::U1) {
          int m = u.sizes[0];
          int o = cur.place(2 * m, "u");
          std::vector<Gen> us;
          su_block(us, m, 0, m);
          us.push_back({"iI", block_identity_i(m, 0, m)});
          for (auto& x : us)
            gens.push_back({"u:" + x.label,
                            u_embed_real(N, o, o + m, x.m)});
        } else if (u.kind == Unit::Zero) {
        } else
          throw InputError("pattern unit not supported inside so(n)");
      }
      break;
    }
    case Family::SoPQ: {
      int pp = g.params[0], qq = g.params[1];
      SlotCursor cur{{pp, qq}, {0, pp}};
      for (auto& u : units) {
        if (u.kind == Unit::SoU)
          so_block(gens, N, cur.place(u.sizes[0], "so"), u.sizes[0]);
        else if (u.kind == Unit::UU || u.kind == Unit::U1) {
          int m = u.sizes[0];
          int o = cur.place(2 * m, "u");
          std::vector<Gen> us;
          su_block(us, m, 0, m);
          us.push_back({"iI", block_identity_i(m, 0, m)});
          for (auto& x : us)
            gens.push_back({"u:" + x.label, u_embed_real(N, o, o + m, x.m)});
        } else if (u.kind == Unit::DSo) {
          int a = u.sizes[0];
          if (pp != a || qq != a)
            throw InputError("dso(a) needs so(a)+so(a) ambient blocks");
          std::vector<Gen> tmp;
          so_block(tmp, N, 0, a);
          std::vector<Gen> tmp2;
          so_block(tmp2, N, pp, a);
          for (size_t i = 0; i < tmp.size(); ++i)
            gens.push_back({"d:" + tmp[i].label, tmp[i].m + tmp2[i].m});
        } else if (u.kind == Unit::Zero) {
        } else
          throw InputError("pattern unit not supported inside so(p)+so(q)");
      }
      break;
    }
    case Family::Su:
    case Family::SlC:
    case Family::SuPQ:
    case Family::U: {
      int pp, qq;
      if (g.family == Family::SuPQ) {
        pp = g.params[0];
        qq = g.params[1];
      } else {
        pp = g.params[0];
        qq = 0;
      }
      int n = pp + qq;
      SlotCursor cur{{pp, qq}, {0, pp}};
      bool center_done = false;
      for (size_t ui = 0; ui < units.size(); ++ui) {
        auto& u = units[ui];
        switch (u.kind) {
          case Unit::SuU:
            if (u.sizes[0] > 1)
              su_block(gens, N, cur.place(u.sizes[0], "su"), u.sizes[0]);
            else
              cur.place(1, "su");  // su(1) = 0
            break;
          case Unit::SoU:
            so_block(gens, N, cur.place(u.sizes[0], "so"), u.sizes[0]);
            break;
          case Unit::SpU: {
            int m = u.sizes[0];
            sp_in_su_block(gens, N, cur.place(2 * m, "sp"), m);
            break;
          }
          case Unit::U1:
            if (all_u) {
              int o = cur.place(1, "u(1)");
              gens.push_back({"u1", block_identity_i(N, o, 1)});
            } else {
              if (ui != 0 || center_done)
                throw InputError("u(1) center must lead the pattern");
              if (g.family == Family::Su || g.family == Family::SlC)
                throw InputError("su(n) has no center");
              add_center();
              center_done = true;
            }
            break;
          case Unit::UU: {
            if (g.family == Family::SuPQ || g.family == Family::Su ||
                g.family == Family::SlC)
              throw InputError(
                  "u(a) blocks are not traceless; use s(u(..)+u(..)) here");
            int a = u.sizes[0];
            int o = cur.place(a, "u");
            if (a > 1) su_block(gens, N, o, a);
            gens.push_back({"iI", block_identity_i(N, o, a)});
            break;
          }
          case Unit::SUList: {
            int total = 0;
            for (int s : u.sizes) total += s;
            int o = cur.place(total, "s(u..)");
            su_list_block(gens, N, o, u.sizes);
            break;
          }
          case Unit::DSu: {
            int a = u.sizes[0];
            if (g.family != Family::SuPQ || pp != a || qq != a)
              throw InputError("dsu(a) needs su(a)+su(a) ambient blocks");
            if (a > 1) {
              std::vector<Gen> t1, t2;
              su_block(t1, N, 0, a);
              su_block(t2, N, pp, a);
              for (size_t i = 0; i < t1.size(); ++i)
                gens.push_back({"d:" + t1[i].label, t1[i].m + t2[i].m});
            }
            break;
          }
          case Unit::Torus: {
            for (int r = 0; r + 1 < n; ++r) {
              MatrixXcd m = MatrixXcd::Zero(N, N);
              m(r, r) = kI;
              m(r + 1, r + 1) = -kI;
              gens.push_back({"T" + std::to_string(r + 1), m});
            }
            if (g.family == Family::U)
              gens.push_back({"iI", block_identity_i(N, 0, n)});
            break;
          }
          case Unit::Zero:
            break;
          default:
            throw InputError("pattern unit not supported inside (s)u ambient");
        }
      }
      break;
    }
    case Family::SpR:
    case Family::SoStar: {
      int n = g.params[0];
      // assemble inside u(n), then map A+iB -> [[A,B],[-B,A]]
      std::vector<Gen> ugens;
      SlotCursor cur{{n}, {0}};
      bool center_done = false;
      for (size_t ui = 0; ui < units.size(); ++ui) {
        auto& u = units[ui];
        switch (u.kind) {
          case Unit::SoU:
            so_block(ugens, n, cur.place(u.sizes[0], "so"), u.sizes[0]);
            break;
          case Unit::SuU:
            if (u.sizes[0] > 1)
              su_block(ugens, n, cur.place(u.sizes[0], "su"), u.sizes[0]);
            else
              cur.place(1, "su");
            break;
          case Unit::SpU: {
            int m = u.sizes[0];
            sp_in_su_block(ugens, n, cur.place(2 * m, "sp"), m);
            break;
          }
          case Unit::U1:
            if (all_u) {
              int o = cur.place(1, "u(1)");
              ugens.push_back({"u1", block_identity_i(n, o, 1)});
            } else {
              if (ui != 0 || center_done)
                throw InputError("u(1) center must lead the pattern");
              ugens.push_back({"z", block_identity_i(n, 0, n)});
              center_done = true;
            }
            break;
          case Unit::UU: {
            int a = u.sizes[0];
            int o = cur.place(a, "u");
            if (a > 1) su_block(ugens, n, o, a);
            ugens.push_back({"iI", block_identity_i(n, o, a)});
            break;
          }
          case Unit::Torus:
            for (int r = 0; r < n; ++r) {
              MatrixXcd m = MatrixXcd::Zero(n, n);
              m(r, r) = kI;
              ugens.push_back({"t" + std::to_string(r + 1), m});
            }
            break;
          case Unit::Zero:
            break;
          default:
            throw InputError("pattern unit not supported inside u(n) fibre");
        }
      }
      for (auto& x : ugens)
        gens.push_back({"u:" + x.label, u_embed_real(N, 0, n, x.m)});
      break;
    }
    case Family::SpCompact:
    case Family::SpPQ: {
      int pp, qq;
      if (g.family == Family::SpPQ) {
        pp = g.params[0];
        qq = g.params[1];
      } else {
        pp = g.params[0];
        qq = 0;
      }
      int n = pp + qq;
      QuatLayout L{2 * n, {}, {}};
      for (int i = 0; i < n; ++i) {
        L.map1.push_back(i);
        L.map2.push_back(n + i);
      }
      std::vector<int> eta(n, 1);
      for (int i = pp; i < n; ++i) eta[i] = -1;
      SlotCursor cur{{pp, qq}, {0, pp}};
      for (auto& u : units) {
        switch (u.kind) {
          case Unit::SpU: {
            int a = u.sizes[0];
            quat_sp_block(gens, L, eta, cur.place(a, "sp"), a, "q");
            break;
          }
          case Unit::UU:
          case Unit::U1: {
            int a = u.sizes[0];
            int o = cur.place(a, "u");
            std::vector<Gen> tmp;
            quat_u_block(tmp, L, o, a);
            gens.insert(gens.end(), tmp.begin(), tmp.end());
            break;
          }
          case Unit::SuU: {
            // su(a) as the traceless complex part inside sp(a)
            int a = u.sizes[0];
            int o = cur.place(a, "su");
            if (a > 1) {
              std::vector<Gen> us;
              su_block(us, n, o, a);
              for (auto& x : us) {
                MatrixXcd m = MatrixXcd::Zero(L.N, L.N);
                for (int r = 0; r < n; ++r)
                  for (int s = 0; s < n; ++s)
                    if (x.m(r, s) != 0.0) {
                      m(L.map1[r], L.map1[s]) += x.m(r, s);
                      m(L.map2[r], L.map2[s]) += std::conj(x.m(r, s));
                    }
                gens.push_back({"u:" + x.label, m});
              }
            }
            break;
          }
          case Unit::DSp: {
            int a = u.sizes[0];
            if (g.family != Family::SpPQ || pp != a || qq != a)
              throw InputError("dsp(a) needs sp(a)+sp(a) ambient blocks");
            std::vector<Gen> t1, t2;
            quat_sp_block(t1, L, eta, 0, a, "q");
            quat_sp_block(t2, L, eta, pp, a, "q");
            for (size_t i = 0; i < t1.size(); ++i)
              gens.push_back({"d:" + t1[i].label, t1[i].m + t2[i].m});
            break;
          }
          case Unit::Zero:
            break;
          default:
            throw InputError("pattern unit not supported inside sp ambient");
        }
      }
      break;
    }
    case Family::SpC: {
      int n = g.params[0];
      QuatLayout L{2 * n, {}, {}};
      for (int i = 0; i < n; ++i) {
        L.map1.push_back(i);
        L.map2.push_back(n + i);
      }
      SlotCursor cur{{n}, {0}};
      for (auto& u : units) {
        if (u.kind == Unit::SpU) {
          int a = u.sizes[0];
          quat_sp_block(gens, L, std::vector<int>(n, 1), cur.place(a, "sp"), a,
                        "q");
        } else if (u.kind == Unit::UU || u.kind == Unit::U1) {
          int a = u.sizes[0];
          int o = cur.place(a, "u");
          std::vector<Gen> tmp;
          quat_u_block(tmp, L, o, a);
          gens.insert(gens.end(), tmp.begin(), tmp.end());
        } else if (u.kind == Unit::Zero) {
        } else
          throw InputError("pattern unit not supported inside sp(n) fibre");
      }
      break;
    }
    case Family::Abelian: {
      if (units.size() == 1 && units[0].kind == Unit::Zero)
        return Subspace::zero(g.dim());
      throw InputError("abelian components support only '*', 'full' or '0'");
    }
    case Family::Sum:
      break;  // handled above
  }

  if (gens.empty()) return Subspace::zero(g.dim());
  std::vector<MatrixXcd> mats;
  mats.reserve(gens.size());
  for (auto& gen : gens) mats.push_back(gen.m);
  Subspace sub = Subspace::of_independent(g.to_coords_batch(mats));

  // contract: bracket-closed and inside the theta-fixed set
  SubalgebraRestriction r = restrict_to_subalgebra(g.algebra, sub, "k");
  if (r.closure_residual > 1e-8)
    throw InputError("pattern \"" + pattern +
                     "\" is not bracket-closed in this ambient algebra");
  double theta_res = (g.theta * sub.basis - sub.basis).cwiseAbs().maxCoeff();
  if (theta_res > 1e-8)
    throw InputError("pattern \"" + pattern +
                     "\" is not contained in the compact fixed set");
  return sub;
}

double defining_condition_residual(const BuiltAlgebra& g, const MatrixXcd& m) {
  auto nrm = [](const MatrixXcd& x) {
    return x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
  };
  switch (g.family) {
    case Family::SlR:
      return std::max(nrm(m.imag().cast<cplx>()), std::abs(m.trace()));
    case Family::Su:
      return std::max(nrm(m.adjoint() + m), std::abs(m.trace()));
    case Family::U:
      return nrm(m.adjoint() + m);
    case Family::SuPQ: {
      MatrixXcd eta = eta_real(g.params[0], g.params[1]).cast<cplx>();
      return std::max(nrm(m.adjoint() * eta + eta * m), std::abs(m.trace()));
    }
    case Family::So:
      return std::max(nrm(m.imag().cast<cplx>()), nrm(m.transpose() + m));
    case Family::SoPQ: {
      MatrixXcd eta = eta_real(g.params[0], g.params[1]).cast<cplx>();
      return std::max(nrm(m.imag().cast<cplx>()),
                      nrm(m.transpose() * eta + eta * m));
    }
    case Family::SpR: {
      MatrixXcd j = sympl_j(g.params[0]).cast<cplx>();
      return std::max(nrm(m.imag().cast<cplx>()),
                      nrm(m.transpose() * j + j * m));
    }
    case Family::SpCompact:
    case Family::SpPQ: {
      int pp = g.params[0], qq = g.params.size() > 1 ? g.params[1] : 0;
      int n = pp + qq;
      MatrixXd h = MatrixXd::Identity(2 * n, 2 * n);
      for (int i = 0; i < qq; ++i) {
        h(pp + i, pp + i) = -1.0;
        h(n + pp + i, n + pp + i) = -1.0;
      }
      MatrixXcd hc = h.cast<cplx>();
      MatrixXcd j = sympl_j(n).cast<cplx>();
      return std::max(nrm(m.adjoint() * hc + hc * m),
                      nrm(j * m.conjugate() - m * j));
    }
    case Family::SlC:
      return std::abs(m.trace());
    case Family::SoC:
      return nrm(m.transpose() + m);
    case Family::SpC: {
      MatrixXcd j = sympl_j(g.params[0]).cast<cplx>();
      return nrm(m.transpose() * j + j * m);
    }
    case Family::SoStar: {
      MatrixXcd j = sympl_j(g.params[0]).cast<cplx>();
      return std::max(nrm(m.transpose() + m),
                      nrm(j * m.conjugate() - m * j));
    }
    case Family::Abelian: {
      double worst = 0.0;
      for (int r = 0; r < m.rows(); ++r)
        for (int s = 0; s < m.cols(); ++s)
          if (r != s) worst = std::max(worst, std::abs(m(r, s)));
      return worst;
    }
    case Family::Sum: {
      double worst = 0.0;
      for (size_t c = 0; c < g.components.size(); ++c) {
        int o = g.component_mat_offsets[c];
        int nd = g.components[c].matrix_dim;
        worst = std::max(worst, defining_condition_residual(
                                    g.components[c], m.block(o, o, nd, nd)));
      }
      return worst;
    }
  }
  return 0.0;
}

double realization_bracket_residual(const BuiltAlgebra& g) {
  double worst = 0.0;
  int d = g.dim();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      MatrixXcd c = g.basis_matrices[i] * g.basis_matrices[j] -
                    g.basis_matrices[j] * g.basis_matrices[i];
      for (int k = 0; k < d; ++k) {
        double s = g.algebra.structure_constant(i, j, k);
        if (s != 0.0) c -= s * g.basis_matrices[k];
      }
      if (c.size()) worst = std::max(worst, c.cwiseAbs().maxCoeff());
    }
  return worst;
}

double theta_automorphism_residual(const BuiltAlgebra& g) {
  double worst = 0.0;
  int d = g.dim();
  MatrixXd sq = g.theta * g.theta - MatrixXd::Identity(d, d);
  if (sq.size()) worst = sq.cwiseAbs().maxCoeff();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      VectorXd lhs = g.theta * g.algebra.ad[i] * VectorXd::Unit(d, j);
      VectorXd rhs = g.algebra.bracket(g.theta.col(i), g.theta.col(j));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

}  // namespace cdirac
