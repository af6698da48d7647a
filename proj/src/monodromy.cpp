#include "arrmc/monodromy.hpp"

#include "arrmc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace arrmc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

} // namespace

CMatrix FuchsianODE::coefficient(Complex y) const {
    size_t d = dim();
    CMatrix a = CMatrix::Zero(d, d);
    for (size_t k = 0; k < poles.size(); ++k)
        a += residues[k] / (y - poles[k]);
    return a;
}

void FuchsianODE::validate() const {
    if (poles.size() != residues.size())
        throw InputError("one residue per pole expected");
    if (!labels.empty() && labels.size() != poles.size())
        throw InputError("one label per pole expected");
    size_t d = dim();
    for (const auto& r : residues)
        if (r.rows() != static_cast<Eigen::Index>(d) || r.cols() != static_cast<Eigen::Index>(d))
            throw DimensionMismatch("residues of different sizes");
    for (size_t i = 0; i < poles.size(); ++i)
        for (size_t j = i + 1; j < poles.size(); ++j)
            if (std::abs(poles[i] - poles[j]) <= 1e-12 * std::max(1.0, std::abs(poles[i])))
                throw InputError("poles " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " coincide");
}

FuchsianODE FuchsianODE::from_exact(const ExactFiberODE& ode) {
    FuchsianODE out;
    out.labels = ode.labels;
    for (size_t k = 0; k < ode.poles.size(); ++k) {
        out.poles.emplace_back(to_double(ode.poles[k]), 0.0);
        out.residues.push_back(to_complex(ode.residues[k]));
    }
    return out;
}

FuchsianODE FuchsianODE::with_twist(Complex y0, const Scalar& lambda, const std::string& label) const {
    FuchsianODE out = *this;
    out.poles.push_back(y0);
    out.residues.push_back(to_double(lambda) * CMatrix::Identity(dim(), dim()));
    if (!out.labels.empty() || poles.empty())
        out.labels.push_back(label);
    return out;
}

PathPiece PathPiece::line(Complex a, Complex b) {
    PathPiece p;
    p.kind = Kind::Line;
    p.from = a;
    p.to = b;
    return p;
}

PathPiece PathPiece::arc(Complex center, double radius, double theta0, double theta1) {
    PathPiece p;
    p.kind = Kind::Arc;
    p.center = center;
    p.radius = radius;
    p.theta0 = theta0;
    p.theta1 = theta1;
    p.from = center + std::polar(radius, theta0);
    p.to = center + std::polar(radius, theta1);
    return p;
}

Complex PathPiece::point(double s) const {
    if (kind == Kind::Line)
        return from + s * (to - from);
    return center + std::polar(radius, theta0 + s * (theta1 - theta0));
}

Complex PathPiece::derivative(double s) const {
    if (kind == Kind::Line)
        return to - from;
    return Complex(0.0, theta1 - theta0) * std::polar(radius, theta0 + s * (theta1 - theta0));
}

double PathPiece::length() const {
    if (kind == Kind::Line)
        return std::abs(to - from);
    return radius * std::abs(theta1 - theta0);
}

std::vector<Complex> LoopPath::waypoints(double max_spacing) const {
    std::vector<Complex> pts{basepoint};
    for (const auto& piece : pieces) {
        size_t m = std::max<size_t>(8, static_cast<size_t>(std::ceil(piece.length() / max_spacing)));
        for (size_t i = 1; i <= m; ++i)
            pts.push_back(piece.point(static_cast<double>(i) / static_cast<double>(m)));
    }
    return pts;
}

double LoopPath::distance_to(Complex p) const {
    double best = std::abs(basepoint - p);
    for (const auto& piece : pieces) {
        if (piece.kind == PathPiece::Kind::Line) {
            Complex d = piece.to - piece.from;
            double len2 = std::norm(d);
            double s = len2 > 0 ? std::clamp(std::real((p - piece.from) * std::conj(d)) / len2, 0.0, 1.0) : 0.0;
            best = std::min(best, std::abs(piece.point(s) - p));
        } else {
            best = std::min({best, std::abs(piece.from - p), std::abs(piece.to - p)});
            double lo = std::min(piece.theta0, piece.theta1);
            double hi = std::max(piece.theta0, piece.theta1);
            double ang = std::arg(p - piece.center);
            bool covered = hi - lo >= kTwoPi;
            for (int w = -2; w <= 2 && !covered; ++w)
                covered = ang + w * kTwoPi >= lo && ang + w * kTwoPi <= hi;
            if (covered)
                best = std::min(best, std::abs(std::abs(p - piece.center) - piece.radius));
        }
    }
    return best;
}

int LoopPath::winding_number(Complex p) const {
    double dist = distance_to(p);
    if (dist <= 0.0)
        throw NumericError("winding number requested for a point on the path");
    std::vector<Complex> pts = waypoints(dist / 4.0);
    double total = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        total += std::arg((pts[i + 1] - p) / (pts[i] - p));
    return static_cast<int>(std::lround(total / kTwoPi));
}

LoopPath simple_loop(Complex basepoint, Complex pole, double radius) {
    LoopPath path;
    path.basepoint = basepoint;
    Complex entry = pole - Complex(0.0, radius);
    double start = -std::numbers::pi / 2.0;
    path.pieces.push_back(PathPiece::line(basepoint, entry));
    path.pieces.push_back(PathPiece::arc(pole, radius, start, start + kTwoPi));
    path.pieces.push_back(PathPiece::line(entry, basepoint));
    return path;
}

LoopSystem standard_loops(std::span<const Complex> poles) {
    if (poles.empty())
        throw InputError("no poles to encircle");
    LoopSystem sys;
    sys.order.resize(poles.size());
    std::iota(sys.order.begin(), sys.order.end(), size_t{0});
    std::stable_sort(sys.order.begin(), sys.order.end(), [&](size_t a, size_t b) {
        if (poles[a].real() != poles[b].real())
            return poles[a].real() < poles[b].real();
        return poles[a].imag() < poles[b].imag();
    });

    double gap = std::numeric_limits<double>::infinity();
    double re_lo = poles[0].real(), re_hi = re_lo, im_lo = poles[0].imag(), im_hi = im_lo;
    for (size_t i = 0; i < poles.size(); ++i) {
        re_lo = std::min(re_lo, poles[i].real());
        re_hi = std::max(re_hi, poles[i].real());
        im_lo = std::min(im_lo, poles[i].imag());
        im_hi = std::max(im_hi, poles[i].imag());
        for (size_t j = i + 1; j < poles.size(); ++j)
            gap = std::min(gap, std::abs(poles[i] - poles[j]));
    }
    sys.radius = poles.size() == 1 ? 1.0 / 3.0 : gap / 3.0;
    double spread = std::max({1.0, re_hi - re_lo, im_hi - im_lo});
    sys.basepoint = Complex(0.5 * (re_lo + re_hi), im_lo - spread);

    for (size_t k : sys.order)
        sys.loops.push_back(simple_loop(sys.basepoint, poles[k], sys.radius));

    double left = re_lo - spread, right = re_hi + spread, top = im_hi + spread, bottom = sys.basepoint.imag();
    LoopPath& big = sys.big_loop;
    big.basepoint = sys.basepoint;
    std::vector<Complex> corners{{right, bottom}, {right, top}, {left, top}, {left, bottom}, sys.basepoint};
    Complex at = sys.basepoint;
    for (const auto& c : corners) {
        big.pieces.push_back(PathPiece::line(at, c));
        at = c;
    }
    return sys;
}

void validate_loop(const LoopPath& path, std::span<const Complex> poles, std::optional<size_t> target, double margin) {
    for (size_t k = 0; k < poles.size(); ++k) {
        double dist = path.distance_to(poles[k]);
        if (dist < margin)
            throw NumericError("loop passes within " + std::to_string(dist) + " of pole " + std::to_string(k + 1));
        int expected = !target || *target == k ? 1 : 0;
        int w = path.winding_number(poles[k]);
        if (w != expected)
            throw NumericError("loop winds " + std::to_string(w) + " times around pole " + std::to_string(k + 1));
    }
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

double nearest_pole(const FuchsianODE& ode, Complex z) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& q : ode.poles)
        d = std::min(d, std::abs(z - q));
    return d;
}

double max_abs(const CMatrix& m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

void integrate_piece(const FuchsianODE& ode, const PathPiece& piece, CMatrix& f, const IntegratorOptions& opts,
                     TransportResult& stats) {
    auto rhs = [&](double s, const CMatrix& y) -> CMatrix {
        return ode.coefficient(piece.point(s)) * piece.derivative(s) * y;
    };
    if (piece.length() == 0.0)
        return;
    double s = 0.0;
    double h = 0.05;
    CMatrix k1 = rhs(0.0, f);
    while (s < 1.0) {
        double speed = std::abs(piece.derivative(s));
        double cap = 0.5 * nearest_pole(ode, piece.point(s)) / speed;
        h = std::min({h, cap, 1.0 - s});
        if (h < opts.min_step)
            throw StepUnderflow("step size underflow at s = " + std::to_string(s));
        if (stats.steps + stats.rejected >= opts.max_steps)
            throw ToleranceNotMet("step budget exhausted before reaching the end of the path");

        CMatrix k2 = rhs(s + c2 * h, f + h * (a21 * k1));
        CMatrix k3 = rhs(s + c3 * h, f + h * (a31 * k1 + a32 * k2));
        CMatrix k4 = rhs(s + c4 * h, f + h * (a41 * k1 + a42 * k2 + a43 * k3));
        CMatrix k5 = rhs(s + c5 * h, f + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        CMatrix k6 = rhs(s + h, f + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        CMatrix next = f + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        CMatrix k7 = rhs(s + h, next);
        CMatrix err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double scale = 1.0 + std::max(max_abs(f), max_abs(next));
        double err_norm = max_abs(err) / scale;
        double allowed = opts.tol * h * speed;
        double factor = err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(allowed / err_norm, 0.2), 0.2, 5.0);
        if (err_norm <= allowed) {
            s = (1.0 - s - h <= 0.0) ? 1.0 : s + h;
            f = std::move(next);
            k1 = std::move(k7);
            ++stats.steps;
        } else {
            ++stats.rejected;
        }
        h *= factor;
    }
}

} // namespace

TransportResult transport(const FuchsianODE& ode, const LoopPath& path, const IntegratorOptions& opts) {
    ode.validate();
    if (!(opts.tol > 0.0))
        throw InputError("integration tolerance must be positive");
    TransportResult res;
    res.matrix = CMatrix::Identity(ode.dim(), ode.dim());
    for (const auto& piece : path.pieces)
        integrate_piece(ode, piece, res.matrix, opts, res);
    return res;
}

CMatrix transport_along_loop(const FuchsianODE& ode, const LoopPath& path, double tol) {
    IntegratorOptions opts;
    opts.tol = tol;
    return transport(ode, path, opts).matrix;
}

MonodromyReport monodromy_of_ode(const FuchsianODE& ode, const IntegratorOptions& opts) {
    ode.validate();
    if (ode.poles.empty())
        throw InputError("fiber has no punctures");
    MonodromyReport rep;
    rep.loops = standard_loops(ode.poles);
    double margin = rep.loops.radius * (1.0 - 1e-9);
    size_t d = ode.dim();
    rep.tuple.rank = d;
    for (size_t k = 0; k < rep.loops.loops.size(); ++k) {
        size_t idx = rep.loops.order[k];
        validate_loop(rep.loops.loops[k], ode.poles, idx, margin);
        TransportResult t = transport(ode, rep.loops.loops[k], opts);
        rep.steps += t.steps;
        rep.tuple.matrices.push_back(std::move(t.matrix));
        rep.tuple.punctures.push_back(ode.poles[idx]);
        if (!ode.labels.empty())
            rep.tuple.labels.push_back(ode.labels[idx]);
    }
    validate_loop(rep.loops.big_loop, ode.poles, std::nullopt, margin);
    TransportResult big = transport(ode, rep.loops.big_loop, opts);
    rep.steps += big.steps;
    rep.big_loop = std::move(big.matrix);
    rep.product_residual =
        spectral_norm(rep.tuple.product() - rep.big_loop) / std::max(1.0, spectral_norm(rep.big_loop));

    // Around infinity the local monodromy is conjugate to exp(2 pi i sum R)
    // when sum R is diagonalizable without nonzero integer eigenvalue gaps.
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto& r : ode.residues)
        sum += r;
    Eigen::ComplexEigenSolver<CMatrix> es(sum, true);
    rep.infinity_check_applicable = condition_number(es.eigenvectors()) < 1e8;
    const auto& mu = es.eigenvalues();
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        for (Eigen::Index j = 0; j < mu.size(); ++j) {
            Complex gap = mu(i) - mu(j);
            double nearest = std::round(gap.real());
            if (nearest != 0.0 && std::abs(gap - Complex(nearest, 0.0)) < 1e-8)
                rep.infinity_check_applicable = false;
        }
    CMatrix expected = CMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        expected(i, i) = std::exp(Complex(0.0, kTwoPi) * mu(i));
    rep.infinity_residual = char_poly_distance(char_poly(rep.big_loop), char_poly(expected));
    return rep;
}

MonodromyReport monodromy_tuple_of_system(const PfaffianSystem& sys, const LineDirection& y,
                                          std::span<const Scalar> base, const IntegratorOptions& opts) {
    return monodromy_of_ode(FuchsianODE::from_exact(fiber_restriction(sys, y, base)), opts);
}

CompatibilityReport verify_mc_compatibility(const PfaffianSystem& sys, const LineDirection& y,
                                            const ConvolutionParameter& lam, std::span<const Scalar> base,
                                            const IntegratorOptions& opts, double iso_tol, double rank_tol) {
    CompatibilityReport rep;
    rep.genericity = check_assumption_generic(sys, y, lam);
    if (!rep.genericity.ok) {
        std::string what = "genericity assumption fails:";
        for (const auto& o : rep.genericity.offenses)
            what += " (" + o.where + ", " + o.eigenvalue.get_str() + ")";
        throw AssumptionFail(what);
    }
    rep.convolved = middle_convolve(sys, y, lam);
    rep.input = monodromy_tuple_of_system(sys, y, base, opts);
    rep.katz = multiplicative_middle_convolution(rep.input.tuple, CharacterValue(lam.lambda()), rank_tol);
    rep.output = monodromy_tuple_of_system(*rep.convolved, y, base, opts);

    const MonodromyTuple& t1 = rep.katz.tuple;
    const MonodromyTuple& t2 = rep.output.tuple;
    if (t1.rank != t2.rank || t1.size() != t2.size())
        return rep;
    for (size_t k = 0; k < t1.size(); ++k)
        rep.generator_distances.push_back(char_poly_distance(char_poly(t1.matrices[k]), char_poly(t2.matrices[k])));
    rep.isomorphism = tuple_isomorphism(t1, t2, iso_tol);
    return rep;
}

} // namespace arrmc
