#pragma once

#include "arrmc/matrix.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace arrmc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

CMatrix to_complex(const QMatrix& m);

/// Orthonormal basis of the numerical null space: right singular vectors whose
/// singular value is at most rel_tol * max(1, sigma_max).
CMatrix null_space(const CMatrix& m, double rel_tol);

/// Orthonormal basis of the column span, same threshold convention.
CMatrix range_basis(const CMatrix& m, double rel_tol);

/// Orthonormal basis of the orthogonal complement of the column span.
CMatrix orthogonal_complement(const CMatrix& m, double rel_tol);

/// Coefficients of det(x - m), low degree first, leading coefficient 1.
std::vector<Complex> char_poly(const CMatrix& m);

/// Largest coefficient difference, each scaled by max(1, |coefficient|).
double char_poly_distance(const std::vector<Complex>& p, const std::vector<Complex>& q);

/// sigma_max / sigma_min; infinity for a singular matrix.
double condition_number(const CMatrix& m);

/// Operator 2-norm.
double spectral_norm(const CMatrix& m);

} // namespace arrmc
