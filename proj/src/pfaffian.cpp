#include "arrmc/pfaffian.hpp"

#include "arrmc/errors.hpp"

#include <algorithm>

namespace arrmc {

PfaffianSystem::PfaffianSystem(Arrangement arrangement, size_t dim_e, std::vector<QMatrix> residues, Check check)
    : arrangement_(std::move(arrangement)), dim_e_(dim_e), residues_(std::move(residues)) {
    if (residues_.size() != arrangement_.size())
        throw InputError("expected one residue matrix per hyperplane");
    for (size_t i = 0; i < residues_.size(); ++i)
        if (residues_[i].rows() != dim_e_ || residues_[i].cols() != dim_e_)
            throw InputError("residue of '" + arrangement_[i].label() + "' is not " + std::to_string(dim_e_) + "x" +
                             std::to_string(dim_e_));
    if (check == Check::Integrable) {
        IntegrabilityResult r = check_integrability(*this);
        if (!r.integrable)
            throw NonIntegrableInput("integrability fails at flat " + r.flat->to_string() + " for hyperplane '" +
                                     r.hyperplane + "'");
    }
}

const QMatrix& PfaffianSystem::residue(const std::string& label) const {
    auto idx = arrangement_.find_label(label);
    if (!idx)
        throw InputError("no hyperplane labeled '" + label + "'");
    return residues_[*idx];
}

QMatrix PfaffianSystem::residue_at(const Hyperplane& h) const {
    auto idx = arrangement_.find(h);
    return idx ? residues_[*idx] : QMatrix(dim_e_, dim_e_);
}

ConvolutionParameter::ConvolutionParameter(Scalar lambda) : lambda_(std::move(lambda)) {
    if (is_integer(lambda_))
        throw ParameterIntegral("convolution parameter must not be an integer, got " + to_string(lambda_));
}

IntegrabilityResult check_integrability(const PfaffianSystem& sys) {
    const Arrangement& arr = sys.arrangement();
    IntersectionPoset poset = build_intersection_poset(arr);
    for (const auto& node : poset.rank(2)) {
        QMatrix sum(sys.dim_e(), sys.dim_e());
        for (const auto& label : node.containing)
            sum += sys.residue(label);
        for (const auto& label : node.containing)
            if (!commutator(sys.residue(label), sum).is_zero())
                return {false, node.flat, label};
    }
    return {};
}

namespace {

// Integer roots of a nonzero rational polynomial, using divisors of the
// trailing coefficient of its primitive integer multiple.
std::vector<mpz_class> integer_roots_by_divisors(const QPoly& p) {
    mpz_class den = 1;
    for (const auto& c : p.coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    size_t low = 0;
    while (p.coeff(low) == 0)
        ++low;
    mpz_class c0 = abs(mpz_class(p.coeff(low) * den));
    if (c0 > mpz_class("100000000000000"))
        throw InputError("integer eigenvalue search: trailing coefficient too large to factor");
    std::vector<mpz_class> roots;
    unsigned long n = c0.get_ui();
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d)
            continue;
        for (unsigned long k : {d, n / d})
            for (long s : {1L, -1L}) {
                mpz_class cand = mpz_class(k) * s;
                if (p.eval(Scalar(cand)) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    }
    return roots;
}

} // namespace

std::vector<mpz_class> nonzero_integer_eigenvalues(const QMatrix& m) {
    if (!m.square())
        throw DimensionMismatch("eigenvalues of non-square matrix");
    size_t n = m.rows();
    if (n == 0)
        return {};
    QPoly p = characteristic_polynomial(m);
    Scalar bound = 0;
    for (size_t k = 0; k < n; ++k)
        bound = std::max(bound, Scalar(abs(p.coeff(k))));
    bound += 1;
    mpz_class kmax = floor(bound);

    std::vector<mpz_class> candidates;
    if (kmax <= (1 << 20)) {
        for (long k = 1; k <= kmax.get_si(); ++k)
            for (long s : {-1L, 1L})
                if (p.eval(Scalar(s * k)) == 0)
                    candidates.push_back(mpz_class(s * k));
    } else {
        candidates = integer_roots_by_divisors(p);
    }

    std::vector<mpz_class> out;
    for (const auto& k : candidates) {
        if (k == 0)
            continue;
        // Exact singularity of m - k I confirms the root.
        if (determinant(m - QMatrix::scalar(n, Scalar(k))) != 0)
            throw InternalError("characteristic polynomial root is not an eigenvalue");
        out.push_back(k);
    }
    std::sort(out.begin(), out.end());
    return out;
}

GenericityReport check_assumption_generic(const PfaffianSystem& sys, const LineDirection& y,
                                          const ConvolutionParameter& lam) {
    const Arrangement& arr = sys.arrangement();
    if (arr.dim() != y.dim())
        throw DimensionMismatch("line direction dimension mismatch");
    GenericityReport report;
    QMatrix sum = QMatrix::scalar(sys.dim_e(), lam.lambda());
    for (size_t i = 0; i < arr.size(); ++i) {
        if (arr[i].linear_part(y.direction()) == 0)
            continue;
        sum += sys.residue(i);
        for (const auto& k : nonzero_integer_eigenvalues(sys.residue(i)))
            report.offenses.push_back({arr[i].label(), k});
    }
    for (const auto& k : nonzero_integer_eigenvalues(sum))
        report.offenses.push_back({"sum", k});
    report.ok = report.offenses.empty();
    return report;
}

QPoly pencil_minor_gcd(const QMatrix& a, const QMatrix& basis) {
    size_t d = basis.rows();
    size_t w = basis.cols();
    if (w == 0)
        return QPoly::constant(Scalar(1));
    QMatrix ab = a * basis;
    QPoly g;
    // Enumerate w-subsets of the d rows.
    std::vector<size_t> rows(w);
    for (size_t i = 0; i < w; ++i)
        rows[i] = i;
    while (true) {
        QMatrix m0(w, w), m1(w, w);
        for (size_t i = 0; i < w; ++i)
            for (size_t j = 0; j < w; ++j) {
                m0(i, j) = ab(rows[i], j);
                m1(i, j) = basis(rows[i], j);
            }
        g = gcd(g, pencil_determinant(m0, m1));
        if (g.degree() == 0)
            return g;
        // Next combination.
        size_t i = w;
        while (i > 0 && rows[i - 1] == d - w + i - 1)
            --i;
        if (i == 0)
            break;
        ++rows[i - 1];
        for (size_t j = i; j < w; ++j)
            rows[j] = rows[j - 1] + 1;
    }
    return g;
}

namespace {

std::vector<std::string> star_failures(const std::vector<std::pair<std::string, QMatrix>>& residues, size_t dim_e) {
    std::vector<std::string> failures;
    for (size_t h = 0; h < residues.size(); ++h) {
        QMatrix stacked(0, dim_e);
        for (size_t j = 0; j < residues.size(); ++j)
            if (j != h)
                stacked = vcat(stacked, residues[j].second);
        QMatrix w = kernel(stacked);
        if (pencil_minor_gcd(residues[h].second, w).degree() != 0)
            failures.push_back(residues[h].first);
    }
    return failures;
}

} // namespace

StarReport check_star_conditions(const PfaffianSystem& sys, const LineDirection& y) {
    const Arrangement& arr = sys.arrangement();
    if (arr.dim() != y.dim())
        throw DimensionMismatch("line direction dimension mismatch");
    std::vector<std::pair<std::string, QMatrix>> trans, trans_t;
    for (size_t i = 0; i < arr.size(); ++i)
        if (arr[i].linear_part(y.direction()) != 0) {
            trans.emplace_back(arr[i].label(), sys.residue(i));
            trans_t.emplace_back(arr[i].label(), sys.residue(i).transpose());
        }
    StarReport r;
    r.star1_failures = star_failures(trans, sys.dim_e());
    r.star2_failures = star_failures(trans_t, sys.dim_e());
    r.star1 = r.star1_failures.empty();
    r.star2 = r.star2_failures.empty();
    return r;
}

PfaffianSystem dual_system(const PfaffianSystem& sys) {
    std::vector<QMatrix> res;
    for (const auto& a : sys.residues())
        res.push_back(-a.transpose());
    return PfaffianSystem(sys.arrangement(), sys.dim_e(), std::move(res), PfaffianSystem::Check::Unchecked);
}

ExactFiberODE fiber_restriction(const PfaffianSystem& sys, const LineDirection& y, std::span<const Scalar> base) {
    FiberPoints fp = fiber_points(sys.arrangement(), y, base);
    if (fp.collision)
        throw InputError("fiber points collide over this base point; the line is not good");
    ExactFiberODE ode;
    ode.labels = fp.labels;
    ode.poles = fp.roots;
    ode.residue_at_infinity = QMatrix(sys.dim_e(), sys.dim_e());
    for (const auto& label : fp.labels) {
        ode.residues.push_back(sys.residue(label));
        ode.residue_at_infinity -= sys.residue(label);
    }
    return ode;
}

} // namespace arrmc
