#pragma once

#include "arrmc/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace arrmc {

/// Dense row-major matrix over the rationals. Value type; all arithmetic exact.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(size_t rows, size_t cols);
    QMatrix(std::initializer_list<std::initializer_list<Scalar>> rows);

    static QMatrix identity(size_t n);
    static QMatrix scalar(size_t n, const Scalar& s);
    /// Column vector.
    static QMatrix column_vector(std::span<const Scalar> v);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    bool square() const { return rows_ == cols_; }

    Scalar& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const;
    Scalar trace() const;
    QMatrix transpose() const;
    QMatrix column(size_t j) const;
    QMatrix row(size_t i) const;
    QMatrix block(size_t r0, size_t c0, size_t nr, size_t nc) const;
    void set_block(size_t r0, size_t c0, const QMatrix& b);
    /// Columns with the given indices, in that order.
    QMatrix select_columns(std::span<const size_t> idx) const;

    QMatrix& operator+=(const QMatrix& o);
    QMatrix& operator-=(const QMatrix& o);
    QMatrix& operator*=(const Scalar& s);

    friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
    friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
    friend QMatrix operator*(QMatrix a, const Scalar& s) { return a *= s; }
    friend QMatrix operator*(const Scalar& s, QMatrix a) { return a *= s; }
    friend QMatrix operator-(QMatrix a) { return a *= Scalar(-1); }
    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend bool operator==(const QMatrix& a, const QMatrix& b);

    /// Lexicographic on (rows, cols, entries). Total order for canonical forms.
    friend bool operator<(const QMatrix& a, const QMatrix& b);

    std::string to_string() const;

private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Scalar> data_;
};

struct Echelon {
    QMatrix reduced;            // reduced row echelon form, zero rows dropped
    std::vector<size_t> pivots; // pivot column of each row of `reduced`
};

/// Gauss-Jordan elimination with the first nonzero entry of each column as pivot.
Echelon rref(const QMatrix& m);

size_t rank(const QMatrix& m);

/// Column basis of {x : m x = 0}; one column per free variable of the RREF.
QMatrix kernel(const QMatrix& m);

/// Maximal linearly independent subset of the columns, scanning left to right.
QMatrix column_basis(const QMatrix& m);

/// Greedy completion of the column space of `u` to the whole space by standard
/// basis vectors, in index order. Returns only the added columns.
QMatrix complete_basis(const QMatrix& u);

std::optional<QMatrix> inverse(const QMatrix& m);

Scalar determinant(const QMatrix& m);

/// Some X with a X = b, or nullopt if the system is inconsistent.
std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b);

QMatrix kron(const QMatrix& a, const QMatrix& b);
QMatrix hcat(const QMatrix& a, const QMatrix& b);
QMatrix vcat(const QMatrix& a, const QMatrix& b);
QMatrix commutator(const QMatrix& a, const QMatrix& b);

/// True iff every column of `v` lies in the column span of `basis`.
bool in_column_span(const QMatrix& basis, const QMatrix& v);

} // namespace arrmc
