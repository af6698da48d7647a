#include "oracles.hpp"

#include "arrmc/errors.hpp"

#include <algorithm>

namespace oracle {

using namespace arrmc;

size_t rank_of(Rows m) {
    size_t r = 0;
    size_t cols = m.empty() ? 0 : m[0].size();
    for (size_t c = 0; c < cols && r < m.size(); ++c) {
        size_t p = r;
        while (p < m.size() && m[p][c] == 0)
            ++p;
        if (p == m.size())
            continue;
        std::swap(m[p], m[r]);
        for (size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] == 0)
                continue;
            Scalar f = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

Scalar det_of(Rows m) {
    size_t n = m.size();
    Scalar det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            Scalar f = m[i][c] / m[c][c];
            for (size_t j = c; j < n; ++j)
                m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

Rows rows_of(const QMatrix& m) {
    Rows out(m.rows(), std::vector<Scalar>(m.cols()));
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            out[i][j] = m(i, j);
    return out;
}

namespace {

std::vector<Scalar> augmented(const Hyperplane& h) {
    std::vector<Scalar> row = h.coeffs();
    row.push_back(-h.constant());
    return row;
}

} // namespace

std::map<std::set<std::string>, size_t> brute_force_flats(const Arrangement& arr) {
    std::map<std::set<std::string>, size_t> out;
    size_t n = arr.size();
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        Rows lin, aug;
        for (size_t i = 0; i < n; ++i)
            if (mask >> i & 1) {
                lin.push_back(arr[i].coeffs());
                aug.push_back(augmented(arr[i]));
            }
        size_t r = rank_of(lin);
        if (r != rank_of(aug))
            continue; // empty intersection
        std::set<std::string> containing;
        for (size_t i = 0; i < n; ++i) {
            Rows with = aug;
            with.push_back(augmented(arr[i]));
            if (rank_of(with) == r)
                containing.insert(arr[i].label());
        }
        out[containing] = r;
    }
    return out;
}

std::map<std::set<std::string>, size_t> poset_flats(const IntersectionPoset& poset) {
    std::map<std::set<std::string>, size_t> out;
    for (size_t k = 0; k < poset.by_rank.size(); ++k)
        for (const auto& node : poset.by_rank[k])
            out[std::set<std::string>(node.containing.begin(), node.containing.end())] = k;
    return out;
}

bool wedge_vanishes(const PfaffianSystem& sys) {
    const Arrangement& arr = sys.arrangement();
    size_t l = arr.dim();
    size_t d = sys.dim_e();
    size_t n = arr.size();
    std::vector<MPoly> f;
    for (const auto& h : arr.hyperplanes()) {
        MPoly p = MPoly::constant(l, h.constant());
        for (size_t v = 0; v < l; ++v)
            if (h.coeffs()[v] != 0)
                p += h.coeffs()[v] * MPoly::variable(l, v);
        f.push_back(std::move(p));
    }
    // Coefficient of dx_i ^ dx_j, entry (r, c).
    std::map<std::tuple<size_t, size_t, size_t, size_t>, MPoly> acc;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b) {
            QMatrix comm = sys.residue(a) * sys.residue(b) - sys.residue(b) * sys.residue(a);
            if (comm.is_zero())
                continue;
            MPoly rest = MPoly::constant(l, Scalar(1));
            for (size_t k = 0; k < n; ++k)
                if (k != a && k != b)
                    rest = rest * f[k];
            for (size_t i = 0; i < l; ++i)
                for (size_t j = i + 1; j < l; ++j) {
                    Scalar w = arr[a].coeffs()[i] * arr[b].coeffs()[j] - arr[a].coeffs()[j] * arr[b].coeffs()[i];
                    if (w == 0)
                        continue;
                    for (size_t r = 0; r < d; ++r)
                        for (size_t c = 0; c < d; ++c) {
                            if (comm(r, c) == 0)
                                continue;
                            auto key = std::make_tuple(i, j, r, c);
                            auto it = acc.try_emplace(key, MPoly(l)).first;
                            it->second += (w * comm(r, c)) * rest;
                        }
                }
        }
    return std::all_of(acc.begin(), acc.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

std::vector<mpz_class> integer_eigenvalues_by_scan(const QMatrix& m) {
    size_t n = m.rows();
    Scalar bound = 0;
    for (size_t i = 0; i < n; ++i) {
        Scalar row = 0;
        for (size_t j = 0; j < n; ++j)
            row += abs(m(i, j));
        bound = std::max(bound, row);
    }
    mpz_class kmax = arrmc::floor(bound);
    std::vector<mpz_class> out;
    for (mpz_class k = -kmax; k <= kmax; ++k) {
        if (k == 0)
            continue;
        Rows shifted = rows_of(m);
        for (size_t i = 0; i < n; ++i)
            shifted[i][i] -= Scalar(k);
        if (det_of(shifted) == 0)
            out.push_back(k);
    }
    return out;
}

bool scalar_star_closed_form(const PfaffianSystem& sys, const LineDirection& y) {
    std::vector<Scalar> a;
    for (size_t i = 0; i < sys.arrangement().size(); ++i)
        if (sys.arrangement()[i].linear_part(y.direction()) != 0)
            a.push_back(sys.residue(i)(0, 0));
    for (size_t h = 0; h < a.size(); ++h) {
        bool other = false;
        for (size_t j = 0; j < a.size(); ++j)
            other = other || (j != h && a[j] != 0);
        if (!other)
            return false;
    }
    return true;
}

bool scalar_property_p_closed_form(const std::vector<Complex>& m) {
    for (size_t k = 0; k < m.size(); ++k) {
        bool other = false;
        for (size_t j = 0; j < m.size(); ++j)
            other = other || (j != k && std::abs(m[j] - 1.0) > 1e-12);
        if (!other)
            return false;
    }
    return true;
}

Arrangement random_arrangement(std::mt19937_64& rng, size_t dim, size_t count) {
    std::uniform_int_distribution<int> coef(-2, 2);
    std::vector<Hyperplane> hs;
    size_t guard = 0;
    while (hs.size() < count && guard++ < 1000) {
        std::vector<Scalar> c(dim);
        bool nonzero = false;
        for (auto& x : c) {
            x = coef(rng);
            nonzero = nonzero || x != 0;
        }
        if (!nonzero)
            continue;
        Hyperplane h(c, Scalar(coef(rng)), "H" + std::to_string(hs.size() + 1));
        if (std::find(hs.begin(), hs.end(), h) == hs.end())
            hs.push_back(h);
    }
    return Arrangement(dim, hs);
}

QMatrix random_invertible(std::mt19937_64& rng, size_t n) {
    std::uniform_int_distribution<int> coef(-3, 3);
    while (true) {
        QMatrix m(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                m(i, j) = coef(rng);
        if (det_of(rows_of(m)) != 0)
            return m;
    }
}

CMatrix random_complex(std::mt19937_64& rng, size_t n) {
    std::normal_distribution<double> g;
    CMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            m(i, j) = Complex(g(rng), g(rng));
    return m;
}

PfaffianSystem gauge(const PfaffianSystem& sys, const QMatrix& p) {
    QMatrix pinv = *inverse(p);
    std::vector<QMatrix> res;
    for (const auto& a : sys.residues())
        res.push_back(p * a * pinv);
    return PfaffianSystem(sys.arrangement(), sys.dim_e(), res, PfaffianSystem::Check::Unchecked);
}

} // namespace oracle
