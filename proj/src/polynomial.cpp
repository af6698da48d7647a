#include "arrmc/polynomial.hpp"

#include "arrmc/errors.hpp"

#include <sstream>
#include <unordered_map>

namespace arrmc {

QPoly::QPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly QPoly::constant(const Scalar& c) { return QPoly(std::vector<Scalar>{c}); }

QPoly QPoly::monomial(const Scalar& c, size_t degree) {
    std::vector<Scalar> v(degree + 1);
    v[degree] = c;
    return QPoly(std::move(v));
}

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

Scalar QPoly::eval(const Scalar& x) const {
    Scalar r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        r = r * x + *it;
    return r;
}

QPoly QPoly::monic() const {
    if (is_zero())
        return *this;
    std::vector<Scalar> v = c_;
    Scalar inv = 1 / c_.back();
    for (auto& x : v)
        x *= inv;
    return QPoly(std::move(v));
}

QPoly operator+(const QPoly& a, const QPoly& b) {
    std::vector<Scalar> v(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < v.size(); ++k)
        v[k] = a.coeff(k) + b.coeff(k);
    return QPoly(std::move(v));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
    std::vector<Scalar> v(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < v.size(); ++k)
        v[k] = a.coeff(k) - b.coeff(k);
    return QPoly(std::move(v));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Scalar> v(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j)
            v[i + j] += a.c_[i] * b.c_[j];
    return QPoly(std::move(v));
}

std::string QPoly::to_string(const std::string& var) const {
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Scalar& c = c_[k];
        if (c == 0)
            continue;
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        Scalar a = abs(c);
        if (k == 0 || a != 1)
            os << a.get_str() << (k ? "*" : "");
        if (k >= 1)
            os << var;
        if (k >= 2)
            os << '^' << k;
        first = false;
    }
    return os.str();
}

PolyDivision divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero())
        throw InputError("polynomial division by zero");
    std::vector<Scalar> r = a.coeffs();
    int db = b.degree();
    if (a.degree() < db)
        return {QPoly{}, a};
    std::vector<Scalar> q(a.degree() - db + 1);
    for (int k = a.degree(); k >= db; --k) {
        Scalar f = r[k] / b.leading();
        if (f == 0)
            continue;
        q[k - db] = f;
        for (int j = 0; j <= db; ++j)
            r[k - db + j] -= f * b.coeffs()[j];
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    while (!y.is_zero()) {
        QPoly r = divmod(x, y).remainder;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

QPoly interpolate(std::span<const Scalar> xs, std::span<const Scalar> ys) {
    if (xs.size() != ys.size())
        throw InputError("interpolate: size mismatch");
    size_t n = xs.size();
    std::vector<Scalar> dd(ys.begin(), ys.end());
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j)
                break;
        }
    QPoly result;
    for (size_t k = n; k-- > 0;) {
        // result = result * (t - xs[k]) + dd[k]
        result = result * QPoly(std::vector<Scalar>{-xs[k], Scalar(1)}) + QPoly::constant(dd[k]);
    }
    return result;
}

QPoly characteristic_polynomial(const QMatrix& m) {
    if (!m.square())
        throw DimensionMismatch("characteristic polynomial of non-square matrix");
    size_t n = m.rows();
    std::vector<Scalar> c(n + 1);
    c[n] = 1;
    QMatrix mk(n, n); // M_0 = 0
    for (size_t k = 1; k <= n; ++k) {
        for (size_t i = 0; i < n; ++i)
            mk(i, i) += c[n - k + 1];
        mk = m * mk;
        c[n - k] = -mk.trace() / Scalar(static_cast<long>(k));
    }
    return QPoly(std::move(c));
}

QPoly pencil_determinant(const QMatrix& a, const QMatrix& b) {
    if (!a.square() || a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("pencil_determinant: shape mismatch");
    size_t n = a.rows();
    std::vector<Scalar> xs, ys;
    for (size_t k = 0; k <= n; ++k) {
        Scalar t(static_cast<long>(k));
        xs.push_back(t);
        ys.push_back(determinant(a + t * b));
    }
    return interpolate(xs, ys);
}

MPoly MPoly::constant(size_t nvars, const Scalar& c) {
    MPoly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

MPoly MPoly::variable(size_t nvars, size_t index) {
    MPoly p(nvars);
    Exponents e(nvars, 0);
    e.at(index) = 1;
    p.add_term(e, Scalar(1));
    return p;
}

void MPoly::add_term(const Exponents& e, const Scalar& c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

unsigned MPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
        unsigned s = 0;
        for (unsigned x : e)
            s += x;
        d = std::max(d, s);
    }
    return d;
}

Scalar MPoly::eval(std::span<const Scalar> point) const {
    if (point.size() != nvars_)
        throw DimensionMismatch("MPoly::eval: wrong number of variables");
    Scalar r = 0;
    for (const auto& [e, c] : terms_) {
        Scalar t = c;
        for (size_t i = 0; i < nvars_; ++i)
            for (unsigned k = 0; k < e[i]; ++k)
                t *= point[i];
        r += t;
    }
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(std::max(a.nvars_, b.nvars_));
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            MPoly::Exponents e(r.nvars_, 0);
            for (size_t i = 0; i < ea.size(); ++i)
                e[i] += ea[i];
            for (size_t i = 0; i < eb.size(); ++i)
                e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MPoly operator*(const Scalar& s, const MPoly& a) {
    MPoly r(a.nvars_);
    for (const auto& [e, c] : a.terms_)
        r.add_term(e, s * c);
    return r;
}

MPoly determinant(std::span<const MPoly> entries, size_t n) {
    if (entries.size() != n * n)
        throw DimensionMismatch("MPoly determinant: wrong entry count");
    if (n > 20)
        throw InputError("MPoly determinant: matrix too large for subset expansion");
    size_t nvars = n ? entries[0].nvars() : 0;
    // minors[S] = det of rows 0..|S|-1 restricted to column set S.
    std::unordered_map<unsigned long, MPoly> minors;
    minors.emplace(0ul, MPoly::constant(nvars, Scalar(1)));
    for (size_t row = 0; row < n; ++row) {
        std::unordered_map<unsigned long, MPoly> next;
        for (const auto& [set, minor] : minors) {
            if (minor.is_zero())
                continue;
            // Laplace expansion along the last row of the (row+1)-minor: the
            // sign is determined by the position of the new column in the set.
            for (size_t col = 0; col < n; ++col) {
                if (set & (1ul << col))
                    continue;
                const MPoly& e = entries[row * n + col];
                if (e.is_zero())
                    continue;
                size_t larger = 0;
                for (size_t c2 = col + 1; c2 < n; ++c2)
                    if (set & (1ul << c2))
                        ++larger;
                MPoly term = e * minor;
                auto [it, inserted] = next.try_emplace(set | (1ul << col), MPoly(nvars));
                if (larger % 2)
                    it->second -= term;
                else
                    it->second += term;
            }
        }
        minors = std::move(next);
    }
    unsigned long full = n ? ((1ul << n) - 1) : 0ul;
    auto it = minors.find(full);
    return it == minors.end() ? MPoly(nvars) : it->second;
}

} // namespace arrmc
