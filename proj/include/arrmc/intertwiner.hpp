#pragma once

#include "arrmc/matrix.hpp"

#include <optional>
#include <span>
#include <string>

namespace arrmc {

/// Basis of {S : S a_k = b_k S for all k}, each element an (m x n) matrix where
/// a_k is n x n and b_k is m x m.
std::vector<QMatrix> intertwiner_space(std::span<const QMatrix> a, std::span<const QMatrix> b);

struct IntertwinerSearch {
    std::optional<QMatrix> intertwiner; // invertible S with S a_k = b_k S
    size_t solution_dim = 0;
    /// "identity", "basis", "symbolic" (exact determinant polynomial over the
    /// combination coefficients) or "random" (Schwartz-Zippel sampling).
    std::string method;
};

/// Decides whether the tuples are simultaneously similar and returns an
/// invertible intertwiner when they are. Solution spaces of dimension <= 4 are
/// decided exactly through a symbolic determinant; larger ones by seeded
/// random combinations with failure probability below 2^-64.
IntertwinerSearch find_invertible_intertwiner(std::span<const QMatrix> a, std::span<const QMatrix> b);

} // namespace arrmc
