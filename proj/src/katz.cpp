#include "arrmc/katz.hpp"

#include "arrmc/errors.hpp"
#include "arrmc/intertwiner.hpp"
#include "arrmc/pfaffian.hpp"
#include "arrmc/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace arrmc {

namespace {

constexpr double kSingularCondition = 1e12;
constexpr double kMaxIntertwinerCondition = 1e8;
constexpr int kIntertwinerTrials = 8;

CMatrix vstack(const std::vector<CMatrix>& parts, Eigen::Index cols) {
    Eigen::Index rows = 0;
    for (const auto& p : parts)
        rows += p.rows();
    CMatrix out(rows, cols);
    Eigen::Index r = 0;
    for (const auto& p : parts) {
        out.middleRows(r, p.rows()) = p;
        r += p.rows();
    }
    return out;
}

} // namespace

CMatrix MonodromyTuple::product() const {
    CMatrix p = CMatrix::Identity(rank, rank);
    for (const auto& m : matrices)
        p = p * m;
    return p;
}

CMatrix MonodromyTuple::at_infinity() const {
    return product().inverse();
}

std::vector<double> MonodromyTuple::condition_numbers() const {
    std::vector<double> out;
    for (const auto& m : matrices)
        out.push_back(condition_number(m));
    return out;
}

void MonodromyTuple::validate() const {
    if (matrices.empty())
        throw InputError("monodromy tuple has no generators");
    if (!labels.empty() && labels.size() != matrices.size())
        throw DimensionMismatch("tuple labels do not match the number of generators");
    if (!punctures.empty() && punctures.size() != matrices.size())
        throw DimensionMismatch("tuple punctures do not match the number of generators");
    for (size_t k = 0; k < matrices.size(); ++k) {
        const auto& m = matrices[k];
        if (m.rows() != static_cast<Eigen::Index>(rank) || m.cols() != static_cast<Eigen::Index>(rank))
            throw DimensionMismatch("generator " + std::to_string(k + 1) + " is not " + std::to_string(rank) + "x" +
                                    std::to_string(rank));
        if (rank > 0 && condition_number(m) > kSingularCondition)
            throw SingularInput("generator " + std::to_string(k + 1) + " is numerically singular");
    }
}

void ExactTuple::validate() const {
    if (matrices.empty())
        throw InputError("monodromy tuple has no generators");
    if (!labels.empty() && labels.size() != matrices.size())
        throw DimensionMismatch("tuple labels do not match the number of generators");
    for (size_t k = 0; k < matrices.size(); ++k) {
        const auto& m = matrices[k];
        if (m.rows() != rank || m.cols() != rank)
            throw DimensionMismatch("generator " + std::to_string(k + 1) + " is not " + std::to_string(rank) + "x" +
                                    std::to_string(rank));
        if (rank > 0 && determinant(m) == 0)
            throw SingularInput("generator " + std::to_string(k + 1) + " is singular");
    }
}

MonodromyTuple ExactTuple::to_numeric() const {
    MonodromyTuple t;
    t.rank = rank;
    t.labels = labels;
    for (const auto& m : matrices)
        t.matrices.push_back(to_complex(m));
    return t;
}

CharacterValue::CharacterValue(const Scalar& lambda) : lambda_(frac(lambda)) {
    if (lambda_ == 0)
        throw TrivialCharacter("character exp(2 pi i * " + to_string(lambda) + ") is trivial");
}

std::optional<Scalar> CharacterValue::rational_value() const {
    if (lambda_ == Scalar(1, 2))
        return Scalar(-1);
    return std::nullopt;
}

std::vector<CMatrix> convolution_tuple(const MonodromyTuple& t, Complex c) {
    size_t n = t.size();
    size_t r = t.rank;
    Eigen::Index big = static_cast<Eigen::Index>(n * r);
    CMatrix id = CMatrix::Identity(r, r);
    std::vector<CMatrix> out;
    for (size_t k = 0; k < n; ++k) {
        CMatrix b = CMatrix::Identity(big, big);
        for (size_t j = 0; j < n; ++j) {
            CMatrix blk;
            if (j < k)
                blk = t.matrices[j] - id;
            else if (j == k)
                blk = c * t.matrices[j];
            else
                blk = c * (t.matrices[j] - id);
            b.block(k * r, j * r, r, r) = blk;
        }
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<QMatrix> convolution_tuple(const ExactTuple& t, const Scalar& c) {
    size_t n = t.size();
    size_t r = t.rank;
    QMatrix id = QMatrix::identity(r);
    std::vector<QMatrix> out;
    for (size_t k = 0; k < n; ++k) {
        QMatrix b = QMatrix::identity(n * r);
        for (size_t j = 0; j < n; ++j) {
            QMatrix blk;
            if (j < k)
                blk = t.matrices[j] - id;
            else if (j == k)
                blk = c * t.matrices[j];
            else
                blk = c * (t.matrices[j] - id);
            b.set_block(k * r, j * r, blk);
        }
        out.push_back(std::move(b));
    }
    return out;
}

KatzResult multiplicative_middle_convolution(const MonodromyTuple& t, const CharacterValue& c, double rank_tol) {
    t.validate();
    size_t n = t.size();
    size_t r = t.rank;
    Eigen::Index big = static_cast<Eigen::Index>(n * r);
    std::vector<CMatrix> b = convolution_tuple(t, c.value());
    CMatrix id = CMatrix::Identity(r, r);

    KatzDimensions dims;
    dims.convolution_dim = n * r;
    CMatrix k_basis(big, 0);
    for (size_t k = 0; k < n; ++k) {
        CMatrix ker = null_space(t.matrices[k] - id, rank_tol);
        CMatrix emb = CMatrix::Zero(big, ker.cols());
        emb.middleRows(k * r, r) = ker;
        CMatrix joined(big, k_basis.cols() + emb.cols());
        joined << k_basis, emb;
        k_basis = std::move(joined);
    }
    dims.kernel_dim = k_basis.cols();

    std::vector<CMatrix> shifted;
    for (const auto& bk : b)
        shifted.push_back(bk - CMatrix::Identity(big, big));
    CMatrix l_basis = big ? null_space(vstack(shifted, big), rank_tol) : CMatrix(0, 0);
    dims.fixed_dim = l_basis.cols();

    CMatrix u(big, k_basis.cols() + l_basis.cols());
    u << k_basis, l_basis;
    CMatrix span = range_basis(u, rank_tol);
    if (static_cast<size_t>(span.cols()) != dims.kernel_dim + dims.fixed_dim)
        throw NumericError("kernel and fixed subspaces are not independent at the rank tolerance");
    CMatrix comp = orthogonal_complement(u, rank_tol);

    KatzResult res;
    res.dims = dims;
    res.tuple.rank = static_cast<size_t>(comp.cols());
    res.tuple.labels = t.labels;
    res.tuple.punctures = t.punctures;
    res.tuple.convention = t.convention;
    for (const auto& bk : b) {
        res.tuple.matrices.push_back(comp.adjoint() * bk * comp);
        if (span.cols() > 0)
            res.invariance_residual = std::max(res.invariance_residual, spectral_norm(comp.adjoint() * bk * span));
    }
    return res;
}

ExactKatzResult multiplicative_middle_convolution(const ExactTuple& t, const Scalar& c) {
    t.validate();
    if (c == 1)
        throw TrivialCharacter("character value 1 is trivial");
    if (c == 0)
        throw InputError("character value must be nonzero");
    size_t n = t.size();
    size_t r = t.rank;
    size_t big = n * r;
    std::vector<QMatrix> b = convolution_tuple(t, c);
    QMatrix id = QMatrix::identity(r);

    KatzDimensions dims;
    dims.convolution_dim = big;
    QMatrix k_basis(big, 0);
    for (size_t k = 0; k < n; ++k) {
        QMatrix ker = kernel(t.matrices[k] - id);
        QMatrix emb(big, ker.cols());
        emb.set_block(k * r, 0, ker);
        k_basis = hcat(k_basis, emb);
    }
    dims.kernel_dim = k_basis.cols();
    QMatrix stacked(0, big);
    for (const auto& bk : b)
        stacked = vcat(stacked, bk - QMatrix::identity(big));
    QMatrix l_basis = kernel(stacked);
    dims.fixed_dim = l_basis.cols();

    QMatrix u = hcat(k_basis, l_basis);
    if (rank(u) != u.cols())
        throw InternalError("kernel and fixed subspaces intersect");
    QMatrix comp = complete_basis(u);
    auto pinv = inverse(hcat(u, comp));
    if (!pinv)
        throw InternalError("basis completion is singular");
    QMatrix proj = pinv->block(u.cols(), 0, comp.cols(), big);
    ExactKatzResult res;
    res.dims = dims;
    res.tuple.rank = comp.cols();
    res.tuple.labels = t.labels;
    for (const auto& bk : b) {
        if (!(proj * bk * u).is_zero())
            throw InternalError("kernel plus fixed space is not invariant");
        res.tuple.matrices.push_back(proj * bk * comp);
    }
    return res;
}

PropertyPReport check_property_p(const MonodromyTuple& t, double rank_tol) {
    t.validate();
    size_t n = t.size();
    Eigen::Index r = static_cast<Eigen::Index>(t.rank);
    CMatrix id = CMatrix::Identity(r, r);
    PropertyPReport rep;
    rep.margin = std::numeric_limits<double>::infinity();

    auto fixed_free = [&](bool dual) {
        std::vector<CMatrix> parts;
        for (const auto& m : t.matrices)
            parts.push_back((dual ? CMatrix(m.transpose()) : m) - id);
        return null_space(vstack(parts, r), rank_tol).cols() == 0;
    };
    rep.no_fixed_vector = fixed_free(false);
    rep.no_fixed_covector = fixed_free(true);

    auto star = [&](bool dual, std::vector<size_t>& failures) {
        for (size_t k = 0; k < n; ++k) {
            std::vector<CMatrix> parts;
            for (size_t j = 0; j < n; ++j)
                if (j != k)
                    parts.push_back((dual ? CMatrix(t.matrices[j].transpose()) : t.matrices[j]) - id);
            CMatrix w = null_space(vstack(parts, r), rank_tol);
            if (w.cols() == 0)
                continue;
            CMatrix mk = dual ? CMatrix(t.matrices[k].transpose()) : t.matrices[k];
            CMatrix mw = mk * w;
            CMatrix g = w.adjoint() * mw;
            Eigen::ComplexEigenSolver<CMatrix> es(g, false);
            double scale = std::max(1.0, spectral_norm(mk));
            bool failed = false;
            for (Eigen::Index e = 0; e < es.eigenvalues().size(); ++e) {
                CMatrix resid = mw - es.eigenvalues()(e) * w;
                Eigen::JacobiSVD<CMatrix> svd(resid);
                double smin = svd.singularValues()(svd.singularValues().size() - 1);
                if (smin <= rank_tol * scale)
                    failed = true;
                else
                    rep.margin = std::min(rep.margin, smin / scale);
            }
            if (failed)
                failures.push_back(k);
        }
    };
    star(false, rep.star_failures);
    star(true, rep.dual_star_failures);
    rep.holds = rep.no_fixed_vector && rep.no_fixed_covector && rep.star_failures.empty() &&
                rep.dual_star_failures.empty();
    return rep;
}

PropertyPReport check_property_p(const ExactTuple& t) {
    t.validate();
    size_t n = t.size();
    size_t r = t.rank;
    QMatrix id = QMatrix::identity(r);
    PropertyPReport rep;
    rep.margin = std::numeric_limits<double>::infinity();

    auto gen = [&](size_t k, bool dual) { return dual ? t.matrices[k].transpose() : t.matrices[k]; };
    auto fixed_free = [&](bool dual) {
        QMatrix stacked(0, r);
        for (size_t k = 0; k < n; ++k)
            stacked = vcat(stacked, gen(k, dual) - id);
        return kernel(stacked).cols() == 0;
    };
    rep.no_fixed_vector = fixed_free(false);
    rep.no_fixed_covector = fixed_free(true);

    auto star = [&](bool dual, std::vector<size_t>& failures) {
        for (size_t k = 0; k < n; ++k) {
            QMatrix stacked(0, r);
            for (size_t j = 0; j < n; ++j)
                if (j != k)
                    stacked = vcat(stacked, gen(j, dual) - id);
            QMatrix w = kernel(stacked);
            // M_k invertible, so a common root of the pencil minors is never 0.
            if (pencil_minor_gcd(gen(k, dual), w).degree() != 0)
                failures.push_back(k);
        }
    };
    star(false, rep.star_failures);
    star(true, rep.dual_star_failures);
    rep.holds = rep.no_fixed_vector && rep.no_fixed_covector && rep.star_failures.empty() &&
                rep.dual_star_failures.empty();
    return rep;
}

TupleIsomorphism tuple_isomorphism(const MonodromyTuple& t1, const MonodromyTuple& t2, double iso_tol,
                                   unsigned long long seed) {
    if (t1.rank != t2.rank || t1.size() != t2.size())
        throw DimensionMismatch("tuple isomorphism: rank " + std::to_string(t1.rank) + " with " +
                                std::to_string(t1.size()) + " generators vs rank " + std::to_string(t2.rank) +
                                " with " + std::to_string(t2.size()));
    TupleIsomorphism res;
    size_t n = t1.size();
    Eigen::Index r = static_cast<Eigen::Index>(t1.rank);
    if (r == 0) {
        res.isomorphic = res.invariants_match = true;
        res.intertwiner = CMatrix(0, 0);
        res.condition = 1.0;
        return res;
    }

    for (size_t k = 0; k < n; ++k) {
        res.invariant_distance =
            std::max(res.invariant_distance, char_poly_distance(char_poly(t1.matrices[k]), char_poly(t2.matrices[k])));
        if (k + 1 < n)
            res.invariant_distance = std::max(
                res.invariant_distance, char_poly_distance(char_poly(t1.matrices[k] * t1.matrices[k + 1]),
                                                           char_poly(t2.matrices[k] * t2.matrices[k + 1])));
    }
    res.invariants_match = res.invariant_distance <= iso_tol;
    if (!res.invariants_match)
        return res;

    // vec(S M1 - M2 S) = (M1^T (x) I - I (x) M2) vec(S), column-major vec.
    Eigen::Index rr = r * r;
    CMatrix sys(static_cast<Eigen::Index>(n) * rr, rr);
    CMatrix id = CMatrix::Identity(r, r);
    for (size_t k = 0; k < n; ++k) {
        CMatrix blk = CMatrix::Zero(rr, rr);
        const CMatrix& a = t1.matrices[k];
        const CMatrix& b = t2.matrices[k];
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index j = 0; j < r; ++j) {
                blk.block(i * r, j * r, r, r) += a(j, i) * id;
                if (i == j)
                    blk.block(i * r, j * r, r, r) -= b;
            }
        sys.middleRows(static_cast<Eigen::Index>(k) * rr, rr) = blk;
    }
    CMatrix basis = null_space(sys, iso_tol);
    res.solution_dim = basis.cols();
    if (basis.cols() == 0)
        return res;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    double best_cond = std::numeric_limits<double>::infinity();
    CMatrix best;
    for (int trial = 0; trial < kIntertwinerTrials; ++trial) {
        CVector coeffs(basis.cols());
        for (Eigen::Index i = 0; i < coeffs.size(); ++i)
            coeffs(i) = Complex(gauss(rng), gauss(rng));
        CVector v = basis * coeffs;
        CMatrix s = Eigen::Map<CMatrix>(v.data(), r, r);
        double cond = condition_number(s);
        if (cond < best_cond) {
            best_cond = cond;
            best = s;
        }
    }
    res.condition = best_cond;
    double norm = spectral_norm(best);
    for (size_t k = 0; k < n; ++k)
        res.residual =
            std::max(res.residual, spectral_norm(best * t1.matrices[k] - t2.matrices[k] * best) / norm);
    res.isomorphic = best_cond <= kMaxIntertwinerCondition && res.residual <= iso_tol;
    if (res.isomorphic)
        res.intertwiner = best;
    return res;
}

ExactTupleIsomorphism tuple_isomorphism(const ExactTuple& t1, const ExactTuple& t2) {
    if (t1.rank != t2.rank || t1.size() != t2.size())
        throw DimensionMismatch("tuple isomorphism: rank or length differ");
    ExactTupleIsomorphism res;
    if (t1.rank == 0) {
        res.isomorphic = true;
        res.intertwiner = QMatrix(0, 0);
        res.method = "identity";
        return res;
    }
    IntertwinerSearch s = find_invertible_intertwiner(t1.matrices, t2.matrices);
    res.isomorphic = s.intertwiner.has_value();
    res.intertwiner = std::move(s.intertwiner);
    res.solution_dim = s.solution_dim;
    res.method = s.method;
    return res;
}

} // namespace arrmc
