#ifndef CDIRAC_LINALG_HPP
#define CDIRAC_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "cdirac/common.hpp"

namespace cdirac {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

int numeric_rank(const MatrixXd& a, double rel_tol = kRankTol);

// Orthonormal basis of the column space (SVD-based, deterministic).
MatrixXd column_space(const MatrixXd& a, double rel_tol = kRankTol);

// Orthonormal basis of {x : a x = 0}.
MatrixXd nullspace(const MatrixXd& a, double rel_tol = kRankTol);

// Least-squares coordinates of each column of `targets` in span(basis).
MatrixXd coords_in_span(const MatrixXd& basis, const MatrixXd& targets);

// || v - proj_span(v) || / max(1, ||v||)
double membership_residual(const MatrixXd& basis, const VectorXd& v);

// Orthonormal basis of span(a) ∩ span(b).
MatrixXd intersect_spans(const MatrixXd& a, const MatrixXd& b,
                         double rel_tol = kRankTol);

// Basis of {x : form(x, s) = 0 for every column s of sub}.
MatrixXd form_complement(const MatrixXd& form, const MatrixXd& sub,
                         double rel_tol = kRankTol);

// +1 / -1 / 0 (indefinite or degenerate) of a symmetric matrix.
int definiteness_sign(const MatrixXd& sym, double tol);

double smallest_singular_value(const MatrixXd& a);

// Flatten a complex matrix into a real vector (re parts then im parts).
VectorXd realify(const MatrixXcd& m);

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b);

VectorXd random_unit_vector(std::mt19937_64& rng, int n);

// Haar-ish random special orthogonal matrix (QR of a Gaussian, det +1).
MatrixXd random_special_orthogonal(std::mt19937_64& rng, int n);

// Random invertible matrix with condition number bounded away from 0.
MatrixXd random_invertible(std::mt19937_64& rng, int n);

}  // namespace cdirac

#endif
