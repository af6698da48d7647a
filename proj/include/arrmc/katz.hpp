#pragma once

#include "arrmc/matrix.hpp"
#include "arrmc/numeric.hpp"
#include "arrmc/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arrmc {

/// Generators M_1..M_n of a local system on C minus n points. Loops are based
/// below all punctures, punctures are sorted by real part (ties by imaginary
/// part), and the monodromy at infinity is (M_1 ... M_n)^{-1}.
struct MonodromyTuple {
    size_t rank = 0;
    std::vector<CMatrix> matrices;
    std::vector<std::string> labels;  // optional, aligned with matrices
    std::vector<Complex> punctures;   // optional, aligned with matrices
    std::string convention = "basepoint below punctures; sorted by real part; M_inf = (M_1...M_n)^-1";

    size_t size() const { return matrices.size(); }
    CMatrix product() const; // M_1 ... M_n
    CMatrix at_infinity() const;
    std::vector<double> condition_numbers() const;
    /// Throws DimensionMismatch on inconsistent shapes and SingularInput on a
    /// numerically singular generator.
    void validate() const;
};

/// Tuple with rational entries, handled by exact linear algebra.
struct ExactTuple {
    size_t rank = 0;
    std::vector<QMatrix> matrices;
    std::vector<std::string> labels;

    size_t size() const { return matrices.size(); }
    void validate() const;
    MonodromyTuple to_numeric() const;
};

/// c = exp(2 pi i lambda), lambda kept exactly and reduced into [0, 1).
class CharacterValue {
public:
    /// Throws TrivialCharacter when lambda is an integer.
    explicit CharacterValue(const Scalar& lambda);

    const Scalar& lambda() const { return lambda_; }
    Complex value() const { return unit_root(lambda_); }
    CharacterValue inverse() const { return CharacterValue(-lambda_); }
    CharacterValue operator*(const CharacterValue& o) const { return CharacterValue(lambda_ + o.lambda_); }
    /// c as an exact rational; only c = -1 qualifies among nontrivial characters.
    std::optional<Scalar> rational_value() const;

private:
    Scalar lambda_;
};

struct KatzDimensions {
    size_t convolution_dim = 0; // n * rank
    size_t kernel_dim = 0;      // sum_k dim Ker(M_k - 1)
    size_t fixed_dim = 0;       // common fixed space of the convolution tuple
    size_t output_dim() const { return convolution_dim - kernel_dim - fixed_dim; }
};

struct KatzResult {
    MonodromyTuple tuple;
    KatzDimensions dims;
    double invariance_residual = 0.0; // how far K + L is from invariant
};

/// Dettweiler-Reiter convolution followed by the quotient by K + L. Rank
/// decisions use singular values relative to max(1, sigma_max).
KatzResult multiplicative_middle_convolution(const MonodromyTuple& t, const CharacterValue& c,
                                             double rank_tol = 1e-9);

struct ExactKatzResult {
    ExactTuple tuple;
    KatzDimensions dims;
};

/// Exact variant for a rational parameter c != 0, 1.
ExactKatzResult multiplicative_middle_convolution(const ExactTuple& t, const Scalar& c);

/// The convolution tuple (B_1, ..., B_n) before taking the quotient.
std::vector<CMatrix> convolution_tuple(const MonodromyTuple& t, Complex c);
std::vector<QMatrix> convolution_tuple(const ExactTuple& t, const Scalar& c);

struct PropertyPReport {
    bool holds = false;
    bool no_fixed_vector = false;
    bool no_fixed_covector = false;
    std::vector<size_t> star_failures;      // k with a common eigenvector in the joint fixed space
    std::vector<size_t> dual_star_failures; // same for the transposed tuple
    /// Smallest singular value among the eigenvalue tests that passed; small
    /// values flag near-failures.
    double margin = 0.0;
};

PropertyPReport check_property_p(const MonodromyTuple& t, double rank_tol = 1e-9);
PropertyPReport check_property_p(const ExactTuple& t);

struct TupleIsomorphism {
    bool isomorphic = false;
    bool invariants_match = false;
    double invariant_distance = 0.0; // worst characteristic polynomial mismatch
    size_t solution_dim = 0;
    std::optional<CMatrix> intertwiner; // S with S M1_k = M2_k S
    double residual = 0.0;              // max_k |S M1_k - M2_k S| / |S|
    double condition = 0.0;
};

/// Numeric simultaneous similarity. Characteristic polynomials of every M_k
/// and of every adjacent product M_k M_{k+1} are compared first.
TupleIsomorphism tuple_isomorphism(const MonodromyTuple& t1, const MonodromyTuple& t2, double iso_tol = 1e-6,
                                   unsigned long long seed = 0x5eedULL);

struct ExactTupleIsomorphism {
    bool isomorphic = false;
    std::optional<QMatrix> intertwiner;
    size_t solution_dim = 0;
    std::string method;
};

ExactTupleIsomorphism tuple_isomorphism(const ExactTuple& t1, const ExactTuple& t2);

} // namespace arrmc
