#pragma once

#include "arrmc/matrix.hpp"
#include "arrmc/rational.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace arrmc {

/// Univariate polynomial over the rationals, coefficients low degree first.
/// The zero polynomial has no coefficients and degree -1.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Scalar> coeffs);
    static QPoly constant(const Scalar& c);
    static QPoly monomial(const Scalar& c, size_t degree);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar coeff(size_t k) const { return k < c_.size() ? c_[k] : Scalar(0); }
    const Scalar& leading() const { return c_.back(); }

    Scalar eval(const Scalar& x) const;
    QPoly monic() const;

    friend QPoly operator+(const QPoly& a, const QPoly& b);
    friend QPoly operator-(const QPoly& a, const QPoly& b);
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    friend bool operator==(const QPoly& a, const QPoly& b) = default;

    std::string to_string(const std::string& var = "t") const;

private:
    void trim();
    std::vector<Scalar> c_;
};

struct PolyDivision {
    QPoly quotient;
    QPoly remainder;
};

PolyDivision divmod(const QPoly& a, const QPoly& b);

/// Monic gcd; gcd(0, 0) = 0.
QPoly gcd(const QPoly& a, const QPoly& b);

/// Unique polynomial of degree < xs.size() through the points (Newton form).
QPoly interpolate(std::span<const Scalar> xs, std::span<const Scalar> ys);

/// det(t I - m), computed by the Faddeev-LeVerrier recursion.
QPoly characteristic_polynomial(const QMatrix& m);

/// det(a + t b) as a polynomial in t, for square a, b of equal size.
QPoly pencil_determinant(const QMatrix& a, const QMatrix& b);

/// Sparse multivariate polynomial over the rationals in a fixed number of
/// variables.
class MPoly {
public:
    using Exponents = std::vector<unsigned>;

    explicit MPoly(size_t nvars = 0) : nvars_(nvars) {}
    static MPoly constant(size_t nvars, const Scalar& c);
    static MPoly variable(size_t nvars, size_t index);

    size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Exponents, Scalar>& terms() const { return terms_; }
    unsigned total_degree() const;

    Scalar eval(std::span<const Scalar> point) const;

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const Scalar& s, const MPoly& a);
    friend bool operator==(const MPoly& a, const MPoly& b) = default;

private:
    void add_term(const Exponents& e, const Scalar& c);
    size_t nvars_;
    std::map<Exponents, Scalar> terms_;
};

/// Determinant of a square matrix of multivariate polynomials (row-major,
/// size n*n), by expansion over column subsets.
MPoly determinant(std::span<const MPoly> entries, size_t n);

} // namespace arrmc
