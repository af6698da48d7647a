#pragma once

#include "arrmc/intertwiner.hpp"
#include "arrmc/pfaffian.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arrmc {

struct ConvolutionOptions {
    /// Convolve along a line that is not good; the output then lives on the
    /// enlarged arrangement A u A^{+Y}.
    bool allow_non_good = false;
};

/// The additive convolution c_lambda along a line. The tensor space E (x) C^n
/// is laid out block by block: coordinate (h, i) has index h * dim_e + i, with
/// h running over block_order.
struct ConvolutionResult {
    PfaffianSystem system;
    std::vector<std::string> block_order; // transversal labels, canonical order
    QMatrix k_basis;                      // K = sum_H Ker A_H (x) e_H
    QMatrix l_basis;                      // L = Ker(sum_H A_H + lambda) (x) sum_H e_H
    bool kl_invariant = true;             // K + L invariant under every residue
};

ConvolutionResult convolve(const PfaffianSystem& sys, const LineDirection& y, const ConvolutionParameter& lam,
                           const ConvolutionOptions& opts = {});

struct KernelSubspaces {
    QMatrix k_basis;
    QMatrix l_basis;
};

KernelSubspaces kernel_subspaces(const PfaffianSystem& sys, const LineDirection& y, const ConvolutionParameter& lam);

/// Quotient of c_lambda by K + L, presented on the complement spanned by the
/// first standard basis vectors independent of K + L.
PfaffianSystem middle_convolve(const PfaffianSystem& sys, const LineDirection& y, const ConvolutionParameter& lam,
                               const ConvolutionOptions& opts = {});

struct IsomorphismResult {
    bool isomorphic = false;
    std::optional<QMatrix> intertwiner; // S with S A1_H = A2_H S for all H
    size_t solution_dim = 0;
    std::string method;
};

/// Simultaneous similarity of the residues, matched by hyperplane. Throws
/// DimensionMismatch when dim E differs and InputError when the arrangements
/// differ.
IsomorphismResult is_isomorphic(const PfaffianSystem& s1, const PfaffianSystem& s2);

struct CompositionReport {
    Scalar lambda, mu;
    StarReport input_star;
    StarReport intermediate_star; // star conditions of mc_lambda(A)
    size_t dim_input = 0;
    size_t dim_mc_lambda = 0;
    size_t dim_mc_mu_mc_lambda = 0;
    size_t dim_mc_lambda_plus_mu = 0;
    size_t dim_inverse_round_trip = 0;
    IsomorphismResult sum_law;     // mc_mu o mc_lambda ~ mc_{lambda+mu}
    IsomorphismResult inverse_law; // mc_{-lambda} o mc_lambda ~ id
    bool ok() const { return sum_law.isomorphic && inverse_law.isomorphic; }
};

/// Checks both composition laws. Throws StarConditionsFail when the input
/// violates the star conditions and ParameterIntegral when lambda + mu is an
/// integer.
CompositionReport verify_composition_law(const PfaffianSystem& sys, const LineDirection& y,
                                         const ConvolutionParameter& lam, const ConvolutionParameter& mu);

/// mc_{-lambda} o mc_lambda ~ id only.
IsomorphismResult verify_inverse_law(const PfaffianSystem& sys, const LineDirection& y,
                                     const ConvolutionParameter& lam);

} // namespace arrmc
