#include "arrmc/intertwiner.hpp"

#include "arrmc/errors.hpp"
#include "arrmc/polynomial.hpp"

#include <cmath>
#include <random>

namespace arrmc {

std::vector<QMatrix> intertwiner_space(std::span<const QMatrix> a, std::span<const QMatrix> b) {
    if (a.size() != b.size())
        throw DimensionMismatch("intertwiner: tuples of different length");
    if (a.empty())
        throw InputError("intertwiner: empty tuples");
    size_t n = a[0].rows();
    size_t m = b[0].rows();
    for (size_t k = 0; k < a.size(); ++k)
        if (!a[k].square() || !b[k].square() || a[k].rows() != n || b[k].rows() != m)
            throw DimensionMismatch("intertwiner: inconsistent matrix sizes");

    // Unknown s_{ij} has index i*n + j.
    size_t unknowns = m * n;
    QMatrix eq(a.size() * m * n, unknowns);
    size_t row = 0;
    for (size_t k = 0; k < a.size(); ++k)
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < n; ++j, ++row) {
                for (size_t p = 0; p < n; ++p)
                    eq(row, i * n + p) += a[k](p, j);
                for (size_t q = 0; q < m; ++q)
                    eq(row, q * n + j) -= b[k](i, q);
            }
    QMatrix ker = kernel(eq);
    std::vector<QMatrix> basis;
    for (size_t c = 0; c < ker.cols(); ++c) {
        QMatrix s(m, n);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < n; ++j)
                s(i, j) = ker(i * n + j, c);
        basis.push_back(std::move(s));
    }
    return basis;
}

namespace {

QMatrix combine(const std::vector<QMatrix>& basis, const std::vector<Scalar>& coeffs) {
    QMatrix s(basis[0].rows(), basis[0].cols());
    for (size_t i = 0; i < basis.size(); ++i)
        if (coeffs[i] != 0)
            s += coeffs[i] * basis[i];
    return s;
}

} // namespace

IntertwinerSearch find_invertible_intertwiner(std::span<const QMatrix> a, std::span<const QMatrix> b) {
    if (a.empty() || a[0].rows() != b[0].rows())
        throw DimensionMismatch("isomorphism test: dimensions differ");
    size_t n = a[0].rows();
    IntertwinerSearch out;
    if (n == 0) {
        out.intertwiner = QMatrix(0, 0);
        out.method = "identity";
        return out;
    }

    bool equal = true;
    for (size_t k = 0; k < a.size() && equal; ++k)
        equal = a[k] == b[k];
    std::vector<QMatrix> basis = intertwiner_space(a, b);
    out.solution_dim = basis.size();
    if (equal) {
        out.intertwiner = QMatrix::identity(n);
        out.method = "identity";
        return out;
    }
    if (basis.empty()) {
        out.method = "basis";
        return out;
    }
    for (const auto& s : basis)
        if (determinant(s) != 0) {
            out.intertwiner = s;
            out.method = "basis";
            return out;
        }

    size_t dim = basis.size();
    if (dim <= 4) {
        out.method = "symbolic";
        std::vector<MPoly> entries;
        entries.reserve(n * n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                MPoly e(dim);
                for (size_t v = 0; v < dim; ++v)
                    if (basis[v](i, j) != 0)
                        e += basis[v](i, j) * MPoly::variable(dim, v);
                entries.push_back(std::move(e));
            }
        MPoly det = determinant(entries, n);
        if (det.is_zero())
            return out;
        // A nonzero polynomial of degree <= n in each variable does not vanish
        // on the whole grid {0..n}^dim.
        std::vector<Scalar> point(dim, Scalar(0));
        while (true) {
            if (det.eval(point) != 0) {
                out.intertwiner = combine(basis, point);
                return out;
            }
            size_t v = 0;
            while (v < dim && point[v] == static_cast<long>(n)) {
                point[v] = 0;
                ++v;
            }
            if (v == dim)
                throw InternalError("nonzero determinant polynomial vanished on the whole grid");
            point[v] += 1;
        }
    }

    out.method = "random";
    // Each trial misses an invertible combination with probability at most
    // n / 2^21 (Schwartz-Zippel on det, degree n, coefficients from 2^21 values).
    double per_trial = std::log2(static_cast<double>(n)) - 21.0;
    size_t trials = static_cast<size_t>(std::ceil(64.0 / -per_trial)) + 1;
    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_int_distribution<long> dist(-(1L << 20), (1L << 20) - 1);
    for (size_t t = 0; t < trials; ++t) {
        std::vector<Scalar> coeffs(dim);
        for (auto& c : coeffs)
            c = dist(rng);
        QMatrix s = combine(basis, coeffs);
        if (determinant(s) != 0) {
            out.intertwiner = s;
            return out;
        }
    }
    return out;
}

} // namespace arrmc
