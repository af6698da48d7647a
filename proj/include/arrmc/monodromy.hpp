#pragma once

#include "arrmc/convolution.hpp"
#include "arrmc/katz.hpp"
#include "arrmc/numeric.hpp"
#include "arrmc/pfaffian.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace arrmc {

/// dF/dy = sum_k R_k / (y - q_k) F on the punctured line.
struct FuchsianODE {
    std::vector<Complex> poles;
    std::vector<CMatrix> residues;
    std::vector<std::string> labels;

    size_t dim() const { return residues.empty() ? 0 : static_cast<size_t>(residues[0].rows()); }
    CMatrix coefficient(Complex y) const;
    /// Throws InputError on coinciding poles or inconsistent shapes.
    void validate() const;

    static FuchsianODE from_exact(const ExactFiberODE& ode);
    /// Adds the pole y0 with residue lambda * Id.
    FuchsianODE with_twist(Complex y0, const Scalar& lambda, const std::string& label = "y0") const;
};

/// A straight segment or a circular arc, parametrized over s in [0, 1].
struct PathPiece {
    enum class Kind { Line, Arc } kind = Kind::Line;
    Complex from, to;          // Line
    Complex center;            // Arc
    double radius = 0.0;       // Arc
    double theta0 = 0.0, theta1 = 0.0;

    static PathPiece line(Complex a, Complex b);
    static PathPiece arc(Complex center, double radius, double theta0, double theta1);

    Complex point(double s) const;
    Complex derivative(double s) const;
    double length() const;
};

struct LoopPath {
    Complex basepoint;
    std::vector<PathPiece> pieces;

    /// Dense polyline through the path, closed back at the basepoint.
    std::vector<Complex> waypoints(double max_spacing) const;
    /// Argument summation along the waypoints.
    int winding_number(Complex p) const;
    double distance_to(Complex p) const;
};

/// Line to pole - i r, full counterclockwise circle, line back.
LoopPath simple_loop(Complex basepoint, Complex pole, double radius);

/// The standard generators: poles sorted by real part (ties by imaginary
/// part), circles of radius one third of the minimal pole gap, basepoint below
/// every pole. big_loop encircles all poles once counterclockwise.
struct LoopSystem {
    Complex basepoint;
    double radius = 0.0;
    std::vector<size_t> order; // order[k] = index of the k-th pole in input
    std::vector<LoopPath> loops;
    LoopPath big_loop;
};

LoopSystem standard_loops(std::span<const Complex> poles);

/// Throws NumericError unless the path winds once around poles[target], zero
/// times around the others, and keeps at least margin away from all of them.
void validate_loop(const LoopPath& path, std::span<const Complex> poles, std::optional<size_t> target, double margin);

struct TransportResult {
    CMatrix matrix;
    size_t steps = 0;
    size_t rejected = 0;
};

struct IntegratorOptions {
    double tol = 1e-10;
    size_t max_steps = 2000000;
    double min_step = 1e-14;
};

/// Dormand-Prince 5(4) from F = Id at the basepoint. Steps are accepted when
/// the local error estimate, relative to 1 + |F|, is at most tol per unit of
/// arc length; steps never exceed half the distance to the nearest pole.
TransportResult transport(const FuchsianODE& ode, const LoopPath& path, const IntegratorOptions& opts = {});

CMatrix transport_along_loop(const FuchsianODE& ode, const LoopPath& path, double tol);

struct MonodromyReport {
    MonodromyTuple tuple;
    LoopSystem loops;
    CMatrix big_loop;
    double product_residual = 0.0;  // |M_1 ... M_n - T_big| / max(1, |T_big|)
    double infinity_residual = 0.0; // char poly distance of T_big and exp(2 pi i sum R)
    bool infinity_check_applicable = false;
    size_t steps = 0;
};

MonodromyReport monodromy_of_ode(const FuchsianODE& ode, const IntegratorOptions& opts = {});

/// Restricts to the fiber over base and integrates the standard loops.
MonodromyReport monodromy_tuple_of_system(const PfaffianSystem& sys, const LineDirection& y,
                                          std::span<const Scalar> base, const IntegratorOptions& opts = {});

struct CompatibilityReport {
    GenericityReport genericity;
    MonodromyReport input;
    KatzResult katz;               // T1: multiplicative convolution of the input tuple
    std::optional<PfaffianSystem> convolved; // mc_lambda of the input
    MonodromyReport output;        // T2: monodromy of mc_lambda
    TupleIsomorphism isomorphism;  // T1 ~ T2
    std::vector<double> generator_distances; // char poly distance per generator
    bool ok() const { return isomorphism.isomorphic; }
};

/// Compares MC_chi of the fiber monodromy with the fiber monodromy of
/// mc_lambda, chi(1) = exp(2 pi i lambda). Throws AssumptionFail when the
/// genericity assumption fails, before any integration.
CompatibilityReport verify_mc_compatibility(const PfaffianSystem& sys, const LineDirection& y,
                                            const ConvolutionParameter& lam, std::span<const Scalar> base,
                                            const IntegratorOptions& opts = {}, double iso_tol = 1e-6,
                                            double rank_tol = 1e-9);

} // namespace arrmc
