#pragma once

#include "arrmc/matrix.hpp"
#include "arrmc/rational.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace arrmc {

/// Affine hyperplane {x : coeffs . x + constant = 0}, stored in canonical form
/// (first nonzero coefficient equal to 1). Equality ignores the label.
class Hyperplane {
public:
    Hyperplane(std::vector<Scalar> coeffs, Scalar constant, std::string label = {});

    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    const Scalar& constant() const { return constant_; }
    const std::string& label() const { return label_; }
    size_t dim() const { return coeffs_.size(); }

    /// L_H(v) for a direction v.
    Scalar linear_part(std::span<const Scalar> v) const;
    /// f_H(x).
    Scalar evaluate(std::span<const Scalar> x) const;

    Hyperplane relabeled(std::string label) const;
    std::string to_string() const;

    friend bool operator==(const Hyperplane& a, const Hyperplane& b) {
        return a.coeffs_ == b.coeffs_ && a.constant_ == b.constant_;
    }
    /// Orders by canonical form; labels are ignored.
    friend bool operator<(const Hyperplane& a, const Hyperplane& b);

private:
    std::vector<Scalar> coeffs_;
    Scalar constant_;
    std::string label_;
};

class Arrangement {
public:
    explicit Arrangement(size_t dim, std::vector<Hyperplane> hyperplanes = {});

    size_t dim() const { return dim_; }
    size_t size() const { return hyperplanes_.size(); }
    const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
    const Hyperplane& operator[](size_t i) const { return hyperplanes_[i]; }

    /// Index of the hyperplane with this canonical form, if present.
    std::optional<size_t> find(const Hyperplane& h) const;
    std::optional<size_t> find_label(const std::string& label) const;
    bool contains(const Hyperplane& h) const { return find(h).has_value(); }

    /// Q_A evaluated at x.
    Scalar defining_polynomial(std::span<const Scalar> x) const;

    /// Same hyperplanes (by canonical form) regardless of order or labels.
    bool same_hyperplanes(const Arrangement& other) const;

    friend bool operator==(const Arrangement& a, const Arrangement& b);

private:
    size_t dim_;
    std::vector<Hyperplane> hyperplanes_;
};

/// Nonempty affine subspace given by a consistent system in canonical RREF.
class Flat {
public:
    /// The whole space.
    static Flat ambient(size_t dim);
    /// Canonicalizes [matrix | rhs]; nullopt when the system is inconsistent.
    static std::optional<Flat> from_system(const QMatrix& matrix, const QMatrix& rhs);
    static Flat of_hyperplane(const Hyperplane& h);

    size_t dim() const { return equations_.cols(); }
    size_t rank() const { return equations_.rows(); }
    const QMatrix& equations() const { return equations_; }
    const QMatrix& rhs() const { return rhs_; }

    /// Intersection with h; nullopt if empty.
    std::optional<Flat> intersect(const Hyperplane& h) const;
    /// True iff the flat lies inside h.
    bool inside(const Hyperplane& h) const;
    /// True iff the direction v is parallel to the flat.
    bool parallel_to(std::span<const Scalar> v) const;
    /// The point with every free coordinate set to zero.
    std::vector<Scalar> canonical_point() const;
    /// X + span(v) (a flat of rank rank()-1 unless v is already parallel).
    Flat plus_direction(std::span<const Scalar> v) const;
    /// Rank-1 flat as a hyperplane.
    Hyperplane as_hyperplane(std::string label = {}) const;

    std::string to_string() const;

    friend bool operator==(const Flat& a, const Flat& b) {
        return a.equations_ == b.equations_ && a.rhs_ == b.rhs_;
    }
    friend bool operator<(const Flat& a, const Flat& b);

private:
    Flat(QMatrix eq, QMatrix rhs) : equations_(std::move(eq)), rhs_(std::move(rhs)) {}
    QMatrix equations_;
    QMatrix rhs_;
};

struct PosetNode {
    Flat flat;
    std::vector<std::string> containing; // labels, in arrangement order
};

struct IntersectionPoset {
    /// by_rank[k] lists the flats of codimension k, sorted canonically.
    std::vector<std::vector<PosetNode>> by_rank;
    /// covers[k] holds pairs (i, j): by_rank[k][i] contains by_rank[k+1][j].
    std::vector<std::vector<std::pair<size_t, size_t>>> covers;

    const std::vector<PosetNode>& rank(size_t k) const;
    size_t size() const;
    bool contains(const Flat& f) const;
};

IntersectionPoset build_intersection_poset(const Arrangement& arr);

/// Direction of a line through the origin, canonical (first nonzero entry 1).
class LineDirection {
public:
    explicit LineDirection(std::vector<Scalar> direction);
    const std::vector<Scalar>& direction() const { return d_; }
    size_t dim() const { return d_.size(); }
    /// Index of the first nonzero entry; that coordinate is replaced by the
    /// fiber coordinate in the adapted coordinate system.
    size_t pivot() const { return pivot_; }
    friend bool operator==(const LineDirection&, const LineDirection&) = default;

private:
    std::vector<Scalar> d_;
    size_t pivot_ = 0;
};

/// Change of basis sending the line direction to the last coordinate axis:
/// x = basis * (u_1, ..., u_{l-1}, t). The first l-1 columns are the standard
/// basis vectors with the pivot index removed, the last column is y.
struct AdaptedCoordinates {
    QMatrix basis;
    std::vector<size_t> transverse; // original coordinate index of u_k

    std::vector<Scalar> to_original(std::span<const Scalar> base, const Scalar& t) const;
};

AdaptedCoordinates adapted_coordinates(const LineDirection& y);

struct GoodLineResult {
    bool good = true;
    std::optional<Flat> witness; // X in L_2 with X + Y outside L(A)
};

GoodLineResult is_good_line(const Arrangement& arr, const LineDirection& y);

struct ParallelSplit {
    Arrangement parallel;     // A_Y
    Arrangement transversal;  // A \ A_Y
    size_t n() const { return transversal.size(); }
};

ParallelSplit parallel_subarrangement(const Arrangement& arr, const LineDirection& y);

/// One hyperplane of A^{+Y} together with the unordered pairs of
/// transversal hyperplanes whose intersection shifts onto it.
struct ShiftedHyperplane {
    Hyperplane hyperplane;
    std::vector<std::pair<std::string, std::string>> pairs;
};

/// A^{+Y} = {X + Y : X in L_2(A \ A_Y)}, deduplicated and sorted canonically.
std::vector<ShiftedHyperplane> shifted_family(const Arrangement& arr, const LineDirection& y);

/// Homogenization with x_0 prepended as the first coordinate; adds "H0" = {x_0 = 0}.
Arrangement cone(const Arrangement& arr);

/// Inverse of cone: requires {x_0 = 0} in arr; sets x_0 = 1 elsewhere.
Arrangement decone(const Arrangement& arr);

struct FiberPoints {
    std::vector<std::string> labels; // transversal hyperplanes, arrangement order
    std::vector<Scalar> roots;       // q_H, aligned with labels
    bool collision = false;          // two roots coincide
};

/// Roots of f_H(base, t) for H in A \ A_Y, with base given in the transverse
/// coordinates of adapted_coordinates(y). Throws InputError if base lies on a
/// hyperplane of the projected arrangement pA_Y.
FiberPoints fiber_points(const Arrangement& arr, const LineDirection& y, std::span<const Scalar> base);

/// True iff base lies on a hyperplane of pA_Y.
bool base_on_projected(const Arrangement& arr, const LineDirection& y, std::span<const Scalar> base);

struct FiberOracleResult {
    bool distinct = true;
    size_t samples_tested = 0;
    std::vector<Scalar> collision_base;           // filled on failure
    std::pair<std::string, std::string> colliding; // labels of a colliding pair
};

/// Sampling check of "every fiber has n distinct points". Uses deterministic
/// Halton points plus their projections onto each pairwise collision locus,
/// discarding points on pA_Y. A collision proves the line is not good;
/// absence of collisions is evidence only.
FiberOracleResult goodness_fiber_oracle(const Arrangement& arr, const LineDirection& y, size_t sample_count);

} // namespace arrmc
