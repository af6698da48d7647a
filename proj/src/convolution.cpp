#include "arrmc/convolution.hpp"

#include "arrmc/errors.hpp"

#include <algorithm>
#include <map>

namespace arrmc {

namespace {

struct Blocks {
    std::vector<std::string> labels; // canonical order
    std::vector<QMatrix> residues;
    std::map<std::string, size_t> index;
};

Blocks transversal_blocks(const PfaffianSystem& sys, const LineDirection& y) {
    ParallelSplit split = parallel_subarrangement(sys.arrangement(), y);
    std::vector<Hyperplane> hs = split.transversal.hyperplanes();
    std::sort(hs.begin(), hs.end());
    Blocks b;
    for (const auto& h : hs) {
        b.index[h.label()] = b.labels.size();
        b.labels.push_back(h.label());
        b.residues.push_back(sys.residue(h.label()));
    }
    return b;
}

KernelSubspaces kernels(const Blocks& b, size_t d, const Scalar& lambda) {
    size_t n = b.labels.size();
    size_t big = n * d;
    KernelSubspaces ks{QMatrix(big, 0), QMatrix(big, 0)};
    QMatrix sum = QMatrix::scalar(d, lambda);
    for (size_t h = 0; h < n; ++h) {
        sum += b.residues[h];
        QMatrix k = kernel(b.residues[h]);
        QMatrix embedded(big, k.cols());
        embedded.set_block(h * d, 0, k);
        ks.k_basis = hcat(ks.k_basis, embedded);
    }
    QMatrix l = kernel(sum);
    QMatrix lb(big, l.cols());
    for (size_t h = 0; h < n; ++h)
        lb.set_block(h * d, 0, l);
    ks.l_basis = lb;
    if (rank(hcat(ks.k_basis, ks.l_basis)) != ks.k_basis.cols() + ks.l_basis.cols())
        throw InternalError("K and L intersect nontrivially");
    return ks;
}

void require_convolvable(const PfaffianSystem& sys, const LineDirection& y, const ConvolutionOptions& opts) {
    IntegrabilityResult ir = check_integrability(sys);
    if (!ir.integrable)
        throw NonIntegrableInput("input is not integrable at flat " + ir.flat->to_string() + " (hyperplane '" +
                                 ir.hyperplane + "')");
    if (!opts.allow_non_good) {
        GoodLineResult g = is_good_line(sys.arrangement(), y);
        if (!g.good)
            throw NotGoodLine("line is not good: X + Y leaves the poset for X = " + g.witness->to_string());
    }
}

} // namespace

KernelSubspaces kernel_subspaces(const PfaffianSystem& sys, const LineDirection& y, const ConvolutionParameter& lam) {
    Blocks b = transversal_blocks(sys, y);
    if (b.labels.empty())
        throw InputError("every hyperplane is parallel to the line; nothing to convolve");
    return kernels(b, sys.dim_e(), lam.lambda());
}

ConvolutionResult convolve(const PfaffianSystem& sys, const LineDirection& y, const ConvolutionParameter& lam,
                           const ConvolutionOptions& opts) {
    require_convolvable(sys, y, opts);
    const Arrangement& arr = sys.arrangement();
    Blocks b = transversal_blocks(sys, y);
    size_t n = b.labels.size();
    if (n == 0)
        throw InputError("every hyperplane is parallel to the line; nothing to convolve");
    size_t d = sys.dim_e();
    size_t big = n * d;
    const Scalar& lambda = lam.lambda();

    std::vector<Hyperplane> hyperplanes = arr.hyperplanes();
    std::vector<QMatrix> residues;
    for (size_t i = 0; i < arr.size(); ++i) {
        QMatrix r(big, big);
        auto it = b.index.find(arr[i].label());
        if (it != b.index.end()) {
            size_t h = it->second;
            for (size_t h2 = 0; h2 < n; ++h2) {
                QMatrix blk = b.residues[h2];
                if (h2 == h)
                    blk += QMatrix::scalar(d, lambda);
                r.set_block(h * d, h2 * d, blk);
            }
        } else {
            for (size_t h = 0; h < n; ++h)
                r.set_block(h * d, h * d, sys.residue(i));
        }
        residues.push_back(std::move(r));
    }

    for (const auto& shifted : shifted_family(arr, y)) {
        QMatrix r(big, big);
        for (const auto& [l1, l2] : shifted.pairs) {
            size_t h1 = b.index.at(l1), h2 = b.index.at(l2);
            const QMatrix& a1 = b.residues[h1];
            const QMatrix& a2 = b.residues[h2];
            // A1 (x) (E_{22} - E_{21}) + A2 (x) (E_{11} - E_{12})
            r.set_block(h2 * d, h2 * d, r.block(h2 * d, h2 * d, d, d) + a1);
            r.set_block(h2 * d, h1 * d, r.block(h2 * d, h1 * d, d, d) - a1);
            r.set_block(h1 * d, h1 * d, r.block(h1 * d, h1 * d, d, d) + a2);
            r.set_block(h1 * d, h2 * d, r.block(h1 * d, h2 * d, d, d) - a2);
        }
        if (auto idx = arr.find(shifted.hyperplane)) {
            residues[*idx] += r;
        } else {
            hyperplanes.push_back(shifted.hyperplane);
            residues.push_back(std::move(r));
        }
    }

    KernelSubspaces ks = kernels(b, d, lambda);
    QMatrix kl = hcat(ks.k_basis, ks.l_basis);
    bool invariant = std::all_of(residues.begin(), residues.end(),
                                 [&](const QMatrix& r) { return in_column_span(kl, r * kl); });

    size_t dim = arr.dim();
    return ConvolutionResult{
        PfaffianSystem(Arrangement(dim, std::move(hyperplanes)), big, std::move(residues),
                       PfaffianSystem::Check::Unchecked),
        b.labels, std::move(ks.k_basis), std::move(ks.l_basis), invariant};
}

PfaffianSystem middle_convolve(const PfaffianSystem& sys, const LineDirection& y, const ConvolutionParameter& lam,
                               const ConvolutionOptions& opts) {
    ConvolutionResult c = convolve(sys, y, lam, opts);
    if (!c.kl_invariant)
        throw InternalError("K + L is not invariant under the convolved residues");
    QMatrix u = hcat(c.k_basis, c.l_basis);
    QMatrix comp = complete_basis(u);
    size_t big = u.rows();
    size_t sub = u.cols();
    size_t out = comp.cols();
    auto pinv = inverse(hcat(u, comp));
    if (!pinv)
        throw InternalError("basis completion is singular");
    QMatrix proj = pinv->block(sub, 0, out, big);
    std::vector<QMatrix> residues;
    for (const auto& r : c.system.residues())
        residues.push_back(proj * r * comp);
    return PfaffianSystem(c.system.arrangement(), out, std::move(residues), PfaffianSystem::Check::Unchecked);
}

IsomorphismResult is_isomorphic(const PfaffianSystem& s1, const PfaffianSystem& s2) {
    if (!s1.arrangement().same_hyperplanes(s2.arrangement()))
        throw InputError("isomorphism test needs systems on the same arrangement");
    if (s1.dim_e() != s2.dim_e())
        throw DimensionMismatch("isomorphism test: dim E is " + std::to_string(s1.dim_e()) + " vs " +
                                std::to_string(s2.dim_e()));
    std::vector<QMatrix> a, b;
    for (size_t i = 0; i < s1.arrangement().size(); ++i) {
        a.push_back(s1.residue(i));
        b.push_back(s2.residue_at(s1.arrangement()[i]));
    }
    IsomorphismResult r;
    if (a.empty()) {
        r.isomorphic = true;
        r.intertwiner = QMatrix::identity(s1.dim_e());
        r.method = "identity";
        return r;
    }
    IntertwinerSearch s = find_invertible_intertwiner(a, b);
    r.isomorphic = s.intertwiner.has_value();
    r.intertwiner = std::move(s.intertwiner);
    r.solution_dim = s.solution_dim;
    r.method = s.method;
    return r;
}

namespace {

IsomorphismResult compare(const PfaffianSystem& s1, const PfaffianSystem& s2) {
    if (s1.dim_e() != s2.dim_e())
        return {};
    return is_isomorphic(s1, s2);
}

} // namespace

CompositionReport verify_composition_law(const PfaffianSystem& sys, const LineDirection& y,
                                         const ConvolutionParameter& lam, const ConvolutionParameter& mu) {
    CompositionReport rep;
    rep.lambda = lam.lambda();
    rep.mu = mu.lambda();
    rep.input_star = check_star_conditions(sys, y);
    if (!rep.input_star.ok())
        throw StarConditionsFail("input violates the star conditions");
    ConvolutionParameter sum(lam.lambda() + mu.lambda());

    PfaffianSystem mcl = middle_convolve(sys, y, lam);
    rep.intermediate_star = check_star_conditions(mcl, y);
    PfaffianSystem mcmu = middle_convolve(mcl, y, mu);
    PfaffianSystem mcsum = middle_convolve(sys, y, sum);
    PfaffianSystem back = middle_convolve(mcl, y, ConvolutionParameter(-lam.lambda()));

    rep.dim_input = sys.dim_e();
    rep.dim_mc_lambda = mcl.dim_e();
    rep.dim_mc_mu_mc_lambda = mcmu.dim_e();
    rep.dim_mc_lambda_plus_mu = mcsum.dim_e();
    rep.dim_inverse_round_trip = back.dim_e();
    rep.sum_law = compare(mcmu, mcsum);
    rep.inverse_law = compare(back, sys);
    return rep;
}

IsomorphismResult verify_inverse_law(const PfaffianSystem& sys, const LineDirection& y,
                                     const ConvolutionParameter& lam) {
    StarReport star = check_star_conditions(sys, y);
    if (!star.ok())
        throw StarConditionsFail("input violates the star conditions");
    PfaffianSystem mcl = middle_convolve(sys, y, lam);
    PfaffianSystem back = middle_convolve(mcl, y, ConvolutionParameter(-lam.lambda()));
    return compare(back, sys);
}

} // namespace arrmc
