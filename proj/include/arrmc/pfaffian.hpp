#pragma once

#include "arrmc/arrangement.hpp"
#include "arrmc/matrix.hpp"
#include "arrmc/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arrmc {

/// Logarithmic Pfaffian system d - sum_H A_H dlog f_H with constant residues.
/// Residues are stored in arrangement order.
class PfaffianSystem {
public:
    enum class Check { Integrable, Unchecked };

    PfaffianSystem(Arrangement arrangement, size_t dim_e, std::vector<QMatrix> residues,
                   Check check = Check::Integrable);

    const Arrangement& arrangement() const { return arrangement_; }
    size_t dim_e() const { return dim_e_; }
    const std::vector<QMatrix>& residues() const { return residues_; }
    const QMatrix& residue(size_t i) const { return residues_.at(i); }
    /// Residue attached to the hyperplane with this label; throws InputError if absent.
    const QMatrix& residue(const std::string& label) const;
    /// Residue at the hyperplane with this canonical form; zero matrix if absent.
    QMatrix residue_at(const Hyperplane& h) const;

    friend bool operator==(const PfaffianSystem& a, const PfaffianSystem& b) {
        return a.arrangement_ == b.arrangement_ && a.dim_e_ == b.dim_e_ && a.residues_ == b.residues_;
    }

private:
    Arrangement arrangement_;
    size_t dim_e_;
    std::vector<QMatrix> residues_;
};

/// Non-integral rational parameter lambda; the character value is exp(2 pi i lambda).
class ConvolutionParameter {
public:
    explicit ConvolutionParameter(Scalar lambda);
    const Scalar& lambda() const { return lambda_; }
    /// lambda mod 1, in (0, 1).
    Scalar character_class() const { return frac(lambda_); }

private:
    Scalar lambda_;
};

struct IntegrabilityResult {
    bool integrable = true;
    std::optional<Flat> flat;  // witness rank-2 flat
    std::string hyperplane;    // witness H containing it
};

/// Codimension-2 residue criterion: [A_H, sum_{H' > X} A_H'] = 0 for every
/// rank-2 flat X and every H containing X.
IntegrabilityResult check_integrability(const PfaffianSystem& sys);

/// Nonzero integers k with det(m - k I) = 0, ascending. Candidates are bounded
/// by the Cauchy bound of the characteristic polynomial.
std::vector<mpz_class> nonzero_integer_eigenvalues(const QMatrix& m);

struct GenericityReport {
    struct Offense {
        std::string where; // hyperplane label, or "sum" for sum_H A_H + lambda
        mpz_class eigenvalue;
    };
    bool ok = true;
    std::vector<Offense> offenses;
};

/// No A_H (H transversal to y) and not sum_H A_H + lambda has a nonzero integer
/// eigenvalue.
GenericityReport check_assumption_generic(const PfaffianSystem& sys, const LineDirection& y,
                                          const ConvolutionParameter& lam);

/// gcd of the maximal minors of the pencil a*basis + t*basis. A nonconstant
/// result means some t admits v in span(basis), v != 0, with (a + t) v = 0.
/// An empty basis gives the constant 1.
QPoly pencil_minor_gcd(const QMatrix& a, const QMatrix& basis);

struct StarReport {
    bool star1 = true;
    bool star2 = true;
    std::vector<std::string> star1_failures; // labels H where the condition fails
    std::vector<std::string> star2_failures;
    bool ok() const { return star1 && star2; }
};

/// For each transversal H: the intersection of Ker A_H' (H' != H transversal)
/// meets no Ker(A_H + t); star2 is the same test on transposed residues.
StarReport check_star_conditions(const PfaffianSystem& sys, const LineDirection& y);

/// Residues -A_H^T.
PfaffianSystem dual_system(const PfaffianSystem& sys);

/// One-variable Fuchsian data on the fiber over a base point, exact.
struct ExactFiberODE {
    std::vector<std::string> labels;
    std::vector<Scalar> poles;
    std::vector<QMatrix> residues;
    QMatrix residue_at_infinity; // -sum of residues
};

ExactFiberODE fiber_restriction(const PfaffianSystem& sys, const LineDirection& y, std::span<const Scalar> base);

} // namespace arrmc
