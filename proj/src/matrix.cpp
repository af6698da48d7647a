#include "arrmc/matrix.hpp"

#include "arrmc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace arrmc {

QMatrix::QMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw InputError("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

QMatrix QMatrix::identity(size_t n) { return scalar(n, Scalar(1)); }

QMatrix QMatrix::scalar(size_t n, const Scalar& s) {
    QMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        m(i, i) = s;
    return m;
}

QMatrix QMatrix::column_vector(std::span<const Scalar> v) {
    QMatrix m(v.size(), 1);
    for (size_t i = 0; i < v.size(); ++i)
        m(i, 0) = v[i];
    return m;
}

bool QMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return x == 0; });
}

Scalar QMatrix::trace() const {
    Scalar t = 0;
    for (size_t i = 0; i < std::min(rows_, cols_); ++i)
        t += (*this)(i, i);
    return t;
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

QMatrix QMatrix::column(size_t j) const { return block(0, j, rows_, 1); }
QMatrix QMatrix::row(size_t i) const { return block(i, 0, 1, cols_); }

QMatrix QMatrix::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw InputError("matrix block out of range");
    QMatrix b(nr, nc);
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j)
            b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void QMatrix::set_block(size_t r0, size_t c0, const QMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
        throw InputError("matrix block out of range");
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j)
            (*this)(r0 + i, c0 + j) = b(i, j);
}

QMatrix QMatrix::select_columns(std::span<const size_t> idx) const {
    QMatrix m(rows_, idx.size());
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < idx.size(); ++k)
            m(i, k) = (*this)(i, idx[k]);
    return m;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatch("matrix sum shape mismatch");
    for (size_t k = 0; k < data_.size(); ++k)
        data_[k] += o.data_[k];
    return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatch("matrix difference shape mismatch");
    for (size_t k = 0; k < data_.size(); ++k)
        data_[k] -= o.data_[k];
    return *this;
}

QMatrix& QMatrix::operator*=(const Scalar& s) {
    for (auto& x : data_)
        x *= s;
    return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_)
        throw DimensionMismatch("matrix product shape mismatch");
    QMatrix c(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t k = 0; k < a.cols_; ++k) {
            const Scalar& aik = a(i, k);
            if (aik == 0)
                continue;
            for (size_t j = 0; j < b.cols_; ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool operator<(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_)
        return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_)
        return a.cols_ < b.cols_;
    return std::lexicographical_compare(a.data_.begin(), a.data_.end(), b.data_.begin(), b.data_.end());
}

std::string QMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (size_t j = 0; j < cols_; ++j)
            os << (j ? ", " : "") << (*this)(i, j).get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}

Echelon rref(const QMatrix& m) {
    QMatrix a = m;
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        size_t p = r;
        while (p < a.rows() && a(p, c) == 0)
            ++p;
        if (p == a.rows())
            continue;
        if (p != r)
            for (size_t j = 0; j < a.cols(); ++j)
                std::swap(a(p, j), a(r, j));
        Scalar inv = 1 / a(r, c);
        for (size_t j = c; j < a.cols(); ++j)
            a(r, j) *= inv;
        for (size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0)
                continue;
            Scalar f = a(i, c);
            for (size_t j = c; j < a.cols(); ++j)
                a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {a.block(0, 0, r, a.cols()), std::move(pivots)};
}

size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

QMatrix kernel(const QMatrix& m) {
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : e.pivots)
        is_pivot[p] = true;
    size_t nfree = m.cols() - e.pivots.size();
    QMatrix k(m.cols(), nfree);
    size_t col = 0;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        k(f, col) = 1;
        for (size_t r = 0; r < e.pivots.size(); ++r)
            k(e.pivots[r], col) = -e.reduced(r, f);
        ++col;
    }
    return k;
}

QMatrix column_basis(const QMatrix& m) {
    Echelon e = rref(m);
    return m.select_columns(e.pivots);
}

QMatrix complete_basis(const QMatrix& u) {
    size_t n = u.rows();
    QMatrix current = u;
    size_t r = rank(current);
    std::vector<size_t> added;
    for (size_t i = 0; i < n && r < n; ++i) {
        QMatrix e(n, 1);
        e(i, 0) = 1;
        QMatrix trial = hcat(current, e);
        size_t r2 = rank(trial);
        if (r2 > r) {
            current = std::move(trial);
            r = r2;
            added.push_back(i);
        }
    }
    QMatrix c(n, added.size());
    for (size_t k = 0; k < added.size(); ++k)
        c(added[k], k) = 1;
    return c;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
    if (!m.square())
        return std::nullopt;
    size_t n = m.rows();
    Echelon e = rref(hcat(m, QMatrix::identity(n)));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
        return std::nullopt;
    return e.reduced.block(0, n, n, n);
}

Scalar determinant(const QMatrix& m) {
    if (!m.square())
        throw DimensionMismatch("determinant of non-square matrix");
    QMatrix a = m;
    size_t n = a.rows();
    Scalar det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a(p, c) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            for (size_t j = 0; j < n; ++j)
                std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        for (size_t i = c + 1; i < n; ++i) {
            if (a(i, c) == 0)
                continue;
            Scalar f = a(i, c) / a(c, c);
            for (size_t j = c; j < n; ++j)
                a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b) {
    if (a.rows() != b.rows())
        throw DimensionMismatch("solve: row count mismatch");
    size_t n = a.cols();
    Echelon e = rref(hcat(a, b));
    QMatrix x(n, b.cols());
    for (size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] >= n)
            return std::nullopt;
        for (size_t j = 0; j < b.cols(); ++j)
            x(e.pivots[r], j) = e.reduced(r, n + j);
    }
    return x;
}

QMatrix kron(const QMatrix& a, const QMatrix& b) {
    QMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0)
                continue;
            for (size_t p = 0; p < b.rows(); ++p)
                for (size_t q = 0; q < b.cols(); ++q)
                    k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return k;
}

QMatrix hcat(const QMatrix& a, const QMatrix& b) {
    if (a.rows() != b.rows())
        throw DimensionMismatch("hcat: row count mismatch");
    QMatrix c(a.rows(), a.cols() + b.cols());
    c.set_block(0, 0, a);
    c.set_block(0, a.cols(), b);
    return c;
}

QMatrix vcat(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.cols())
        throw DimensionMismatch("vcat: column count mismatch");
    QMatrix c(a.rows() + b.rows(), a.cols());
    c.set_block(0, 0, a);
    c.set_block(a.rows(), 0, b);
    return c;
}

QMatrix commutator(const QMatrix& a, const QMatrix& b) { return a * b - b * a; }

bool in_column_span(const QMatrix& basis, const QMatrix& v) {
    if (v.cols() == 0)
        return true;
    if (basis.cols() == 0)
        return v.is_zero();
    return rank(hcat(basis, v)) == rank(basis);
}

} // namespace arrmc
