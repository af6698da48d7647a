#include "arrmc/numeric.hpp"

#include "arrmc/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace arrmc {

CMatrix to_complex(const QMatrix& m) {
    CMatrix out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            out(i, j) = Complex(to_double(m(i, j)), 0.0);
    return out;
}

namespace {

double threshold(const Eigen::VectorXd& sv, double rel_tol) {
    double smax = sv.size() ? sv(0) : 0.0;
    return rel_tol * std::max(1.0, smax);
}

} // namespace

CMatrix null_space(const CMatrix& m, double rel_tol) {
    if (m.cols() == 0)
        return CMatrix(0, 0);
    if (m.rows() == 0)
        return CMatrix::Identity(m.cols(), m.cols());
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    double thr = threshold(sv, rel_tol);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > thr)
        ++r;
    return svd.matrixV().rightCols(m.cols() - r);
}

CMatrix range_basis(const CMatrix& m, double rel_tol) {
    if (m.cols() == 0 || m.rows() == 0)
        return CMatrix(m.rows(), 0);
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU);
    const Eigen::VectorXd& sv = svd.singularValues();
    double thr = threshold(sv, rel_tol);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > thr)
        ++r;
    return svd.matrixU().leftCols(r);
}

CMatrix orthogonal_complement(const CMatrix& m, double rel_tol) {
    if (m.cols() == 0)
        return CMatrix::Identity(m.rows(), m.rows());
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU);
    const Eigen::VectorXd& sv = svd.singularValues();
    double thr = threshold(sv, rel_tol);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > thr)
        ++r;
    return svd.matrixU().rightCols(m.rows() - r);
}

std::vector<Complex> char_poly(const CMatrix& m) {
    std::vector<Complex> p{Complex(1.0)};
    if (m.rows() == 0)
        return p;
    Eigen::ComplexEigenSolver<CMatrix> es(m, false);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        Complex ev = es.eigenvalues()(k);
        std::vector<Complex> next(p.size() + 1, Complex(0.0));
        for (size_t i = 0; i < p.size(); ++i) {
            next[i + 1] += p[i];
            next[i] -= ev * p[i];
        }
        p = std::move(next);
    }
    return p;
}

double char_poly_distance(const std::vector<Complex>& p, const std::vector<Complex>& q) {
    if (p.size() != q.size())
        return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (size_t i = 0; i < p.size(); ++i)
        d = std::max(d, std::abs(p[i] - q[i]) / std::max({1.0, std::abs(p[i]), std::abs(q[i])}));
    return d;
}

double condition_number(const CMatrix& m) {
    if (m.rows() == 0)
        return 1.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    const Eigen::VectorXd& sv = svd.singularValues();
    double smin = sv(sv.size() - 1);
    if (smin == 0.0)
        return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

double spectral_norm(const CMatrix& m) {
    if (m.size() == 0)
        return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

} // namespace arrmc
