#include "arrmc/arrangement.hpp"

#include "arrmc/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace arrmc {

// --- Hyperplane ---------------------------------------------------------------

Hyperplane::Hyperplane(std::vector<Scalar> coeffs, Scalar constant, std::string label)
    : coeffs_(std::move(coeffs)), constant_(std::move(constant)), label_(std::move(label)) {
    auto lead = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c != 0; });
    if (lead == coeffs_.end())
        throw InputError("hyperplane '" + label_ + "' has zero linear part");
    Scalar inv = 1 / *lead;
    for (auto& c : coeffs_)
        c *= inv;
    constant_ *= inv;
}

Scalar Hyperplane::linear_part(std::span<const Scalar> v) const {
    if (v.size() != coeffs_.size())
        throw DimensionMismatch("hyperplane/vector dimension mismatch");
    Scalar s = 0;
    for (size_t i = 0; i < v.size(); ++i)
        s += coeffs_[i] * v[i];
    return s;
}

Scalar Hyperplane::evaluate(std::span<const Scalar> x) const { return linear_part(x) + constant_; }

Hyperplane Hyperplane::relabeled(std::string label) const {
    Hyperplane h = *this;
    h.label_ = std::move(label);
    return h;
}

std::string Hyperplane::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        const Scalar& c = coeffs_[i];
        if (c == 0)
            continue;
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        Scalar a = abs(c);
        if (a != 1)
            os << a.get_str() << "*";
        os << "x" << (i + 1);
        first = false;
    }
    if (constant_ != 0)
        os << (constant_ < 0 ? " - " : " + ") << Scalar(abs(constant_)).get_str();
    os << " = 0";
    return os.str();
}

bool operator<(const Hyperplane& a, const Hyperplane& b) {
    if (a.coeffs_ != b.coeffs_)
        return std::lexicographical_compare(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin(), b.coeffs_.end());
    return a.constant_ < b.constant_;
}

// --- Arrangement --------------------------------------------------------------

Arrangement::Arrangement(size_t dim, std::vector<Hyperplane> hyperplanes)
    : dim_(dim), hyperplanes_(std::move(hyperplanes)) {
    if (dim_ == 0)
        throw InputError("arrangement dimension must be positive");
    std::set<std::string> labels;
    for (size_t i = 0; i < hyperplanes_.size(); ++i) {
        auto& h = hyperplanes_[i];
        if (h.dim() != dim_)
            throw InputError("hyperplane '" + h.label() + "' has wrong number of coefficients");
        if (h.label().empty())
            h = h.relabeled("H" + std::to_string(i + 1));
        if (!labels.insert(h.label()).second)
            throw InputError("duplicate hyperplane label '" + h.label() + "'");
        for (size_t j = 0; j < i; ++j)
            if (hyperplanes_[j] == h)
                throw InputError("duplicate hyperplane: '" + hyperplanes_[j].label() + "' and '" + h.label() + "'");
    }
}

std::optional<size_t> Arrangement::find(const Hyperplane& h) const {
    for (size_t i = 0; i < hyperplanes_.size(); ++i)
        if (hyperplanes_[i] == h)
            return i;
    return std::nullopt;
}

std::optional<size_t> Arrangement::find_label(const std::string& label) const {
    for (size_t i = 0; i < hyperplanes_.size(); ++i)
        if (hyperplanes_[i].label() == label)
            return i;
    return std::nullopt;
}

Scalar Arrangement::defining_polynomial(std::span<const Scalar> x) const {
    Scalar q = 1;
    for (const auto& h : hyperplanes_)
        q *= h.evaluate(x);
    return q;
}

bool Arrangement::same_hyperplanes(const Arrangement& other) const {
    if (dim_ != other.dim_ || size() != other.size())
        return false;
    return std::all_of(hyperplanes_.begin(), hyperplanes_.end(), [&](const Hyperplane& h) { return other.contains(h); });
}

bool operator==(const Arrangement& a, const Arrangement& b) {
    if (a.dim_ != b.dim_ || a.size() != b.size())
        return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i]) || a[i].label() != b[i].label())
            return false;
    return true;
}

// --- Flat ---------------------------------------------------------------------

Flat Flat::ambient(size_t dim) { return Flat(QMatrix(0, dim), QMatrix(0, 1)); }

std::optional<Flat> Flat::from_system(const QMatrix& matrix, const QMatrix& rhs) {
    size_t l = matrix.cols();
    Echelon e = rref(hcat(matrix, rhs));
    if (!e.pivots.empty() && e.pivots.back() == l)
        return std::nullopt;
    size_t r = e.pivots.size();
    return Flat(e.reduced.block(0, 0, r, l), e.reduced.block(0, l, r, 1));
}

Flat Flat::of_hyperplane(const Hyperplane& h) {
    QMatrix a(1, h.dim());
    for (size_t j = 0; j < h.dim(); ++j)
        a(0, j) = h.coeffs()[j];
    QMatrix b(1, 1);
    b(0, 0) = -h.constant();
    return *from_system(a, b);
}

std::optional<Flat> Flat::intersect(const Hyperplane& h) const {
    Flat hf = of_hyperplane(h);
    return from_system(vcat(equations_, hf.equations_), vcat(rhs_, hf.rhs_));
}

bool Flat::inside(const Hyperplane& h) const {
    auto f = intersect(h);
    return f && f->rank() == rank();
}

bool Flat::parallel_to(std::span<const Scalar> v) const {
    QMatrix w = equations_ * QMatrix::column_vector(v);
    return w.is_zero();
}

std::vector<Scalar> Flat::canonical_point() const {
    // RREF with pivot column p_r: x_{p_r} = rhs_r, free coordinates zero.
    Echelon e = rref(equations_);
    std::vector<Scalar> x(dim());
    for (size_t r = 0; r < rank(); ++r)
        x[e.pivots[r]] = rhs_(r, 0);
    return x;
}

Flat Flat::plus_direction(std::span<const Scalar> v) const {
    if (v.size() != dim())
        throw DimensionMismatch("flat/direction dimension mismatch");
    QMatrix w = equations_ * QMatrix::column_vector(v);
    if (w.is_zero())
        return *this;
    // Rows of the new system: combinations c^T [A | b] with c^T A v = 0.
    QMatrix c = kernel(w.transpose());
    QMatrix ct = c.transpose();
    auto f = from_system(ct * equations_, ct * rhs_);
    if (!f)
        throw InternalError("X + Y computed as an empty set");
    return *f;
}

Hyperplane Flat::as_hyperplane(std::string label) const {
    if (rank() != 1)
        throw InternalError("flat of rank " + std::to_string(rank()) + " is not a hyperplane");
    std::vector<Scalar> coeffs(dim());
    for (size_t j = 0; j < dim(); ++j)
        coeffs[j] = equations_(0, j);
    return Hyperplane(std::move(coeffs), -rhs_(0, 0), std::move(label));
}

std::string Flat::to_string() const {
    if (rank() == 0)
        return "{ambient}";
    std::ostringstream os;
    os << "{";
    for (size_t r = 0; r < rank(); ++r) {
        std::vector<Scalar> coeffs(dim());
        for (size_t j = 0; j < dim(); ++j)
            coeffs[j] = equations_(r, j);
        os << (r ? ", " : "") << Hyperplane(coeffs, -rhs_(r, 0)).to_string();
    }
    os << "}";
    return os.str();
}

bool operator<(const Flat& a, const Flat& b) {
    if (a.equations_ == b.equations_)
        return a.rhs_ < b.rhs_;
    return a.equations_ < b.equations_;
}

// --- Intersection poset ---------------------------------------------------------

const std::vector<PosetNode>& IntersectionPoset::rank(size_t k) const {
    static const std::vector<PosetNode> none;
    return k < by_rank.size() ? by_rank[k] : none;
}

size_t IntersectionPoset::size() const {
    size_t s = 0;
    for (const auto& r : by_rank)
        s += r.size();
    return s;
}

bool IntersectionPoset::contains(const Flat& f) const {
    for (const auto& node : rank(f.rank()))
        if (node.flat == f)
            return true;
    return false;
}

IntersectionPoset build_intersection_poset(const Arrangement& arr) {
    std::vector<std::vector<Flat>> levels;
    levels.push_back({Flat::ambient(arr.dim())});
    while (true) {
        std::set<Flat> next;
        for (const Flat& x : levels.back())
            for (const Hyperplane& h : arr.hyperplanes()) {
                auto z = x.intersect(h);
                if (z && z->rank() == x.rank() + 1)
                    next.insert(*z);
            }
        if (next.empty())
            break;
        levels.emplace_back(next.begin(), next.end());
    }

    IntersectionPoset poset;
    for (const auto& level : levels) {
        std::vector<PosetNode> nodes;
        for (const Flat& f : level) {
            PosetNode node{f, {}};
            for (const Hyperplane& h : arr.hyperplanes())
                if (f.inside(h))
                    node.containing.push_back(h.label());
            nodes.push_back(std::move(node));
        }
        poset.by_rank.push_back(std::move(nodes));
    }
    for (size_t k = 0; k + 1 < poset.by_rank.size(); ++k) {
        std::vector<std::pair<size_t, size_t>> cov;
        const auto& lo = poset.by_rank[k];
        const auto& hi = poset.by_rank[k + 1];
        for (size_t i = 0; i < lo.size(); ++i)
            for (size_t j = 0; j < hi.size(); ++j) {
                const auto& a = lo[i].containing;
                const auto& b = hi[j].containing;
                bool sub = std::all_of(a.begin(), a.end(),
                                       [&](const std::string& s) { return std::find(b.begin(), b.end(), s) != b.end(); });
                if (sub)
                    cov.emplace_back(i, j);
            }
        poset.covers.push_back(std::move(cov));
    }
    return poset;
}

// --- Lines and adapted coordinates ------------------------------------------------

LineDirection::LineDirection(std::vector<Scalar> direction) : d_(std::move(direction)) {
    auto lead = std::find_if(d_.begin(), d_.end(), [](const Scalar& c) { return c != 0; });
    if (lead == d_.end())
        throw InputError("line direction must be nonzero");
    pivot_ = static_cast<size_t>(lead - d_.begin());
    Scalar inv = 1 / *lead;
    for (auto& c : d_)
        c *= inv;
}

std::vector<Scalar> AdaptedCoordinates::to_original(std::span<const Scalar> base, const Scalar& t) const {
    size_t l = basis.rows();
    if (base.size() + 1 != l)
        throw InputError("base point must have " + std::to_string(l - 1) + " coordinates");
    std::vector<Scalar> x(l);
    for (size_t i = 0; i < l; ++i) {
        x[i] = t * basis(i, l - 1);
        for (size_t k = 0; k + 1 < l; ++k)
            x[i] += basis(i, k) * base[k];
    }
    return x;
}

AdaptedCoordinates adapted_coordinates(const LineDirection& y) {
    size_t l = y.dim();
    AdaptedCoordinates ac{QMatrix(l, l), {}};
    size_t col = 0;
    for (size_t i = 0; i < l; ++i) {
        if (i == y.pivot())
            continue;
        ac.basis(i, col++) = 1;
        ac.transverse.push_back(i);
    }
    for (size_t i = 0; i < l; ++i)
        ac.basis(i, l - 1) = y.direction()[i];
    return ac;
}

// --- Good lines -------------------------------------------------------------------

namespace {

void check_dims(const Arrangement& arr, const LineDirection& y) {
    if (arr.dim() != y.dim())
        throw DimensionMismatch("line direction has dimension " + std::to_string(y.dim()) + ", arrangement " +
                                std::to_string(arr.dim()));
}

} // namespace

GoodLineResult is_good_line(const Arrangement& arr, const LineDirection& y) {
    check_dims(arr, y);
    IntersectionPoset poset = build_intersection_poset(arr);
    for (const auto& node : poset.rank(2)) {
        Flat shifted = node.flat.plus_direction(y.direction());
        if (!poset.contains(shifted))
            return {false, node.flat};
    }
    return {};
}

ParallelSplit parallel_subarrangement(const Arrangement& arr, const LineDirection& y) {
    check_dims(arr, y);
    std::vector<Hyperplane> par, trans;
    for (const auto& h : arr.hyperplanes())
        (h.linear_part(y.direction()) == 0 ? par : trans).push_back(h);
    return {Arrangement(arr.dim(), std::move(par)), Arrangement(arr.dim(), std::move(trans))};
}

std::vector<ShiftedHyperplane> shifted_family(const Arrangement& arr, const LineDirection& y) {
    ParallelSplit split = parallel_subarrangement(arr, y);
    IntersectionPoset poset = build_intersection_poset(split.transversal);
    std::map<Hyperplane, std::vector<std::pair<std::string, std::string>>> family;
    for (const auto& node : poset.rank(2)) {
        Flat shifted = node.flat.plus_direction(y.direction());
        if (shifted.rank() != 1)
            throw InternalError("rank-2 flat of the transversal arrangement did not shift to a hyperplane");
        Hyperplane h = shifted.as_hyperplane();
        auto& pairs = family[h];
        const auto& c = node.containing;
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = i + 1; j < c.size(); ++j)
                pairs.emplace_back(c[i], c[j]);
    }
    std::vector<ShiftedHyperplane> out;
    for (auto& [h, pairs] : family) {
        std::string label;
        if (auto idx = arr.find(h))
            label = arr[*idx].label();
        else
            label = "Y+(" + pairs.front().first + "," + pairs.front().second + ")";
        out.push_back({h.relabeled(label), std::move(pairs)});
    }
    return out;
}

// --- Cone / decone ----------------------------------------------------------------

Arrangement cone(const Arrangement& arr) {
    std::vector<Hyperplane> hs;
    std::set<std::string> labels;
    for (const auto& h : arr.hyperplanes()) {
        std::vector<Scalar> c;
        c.reserve(arr.dim() + 1);
        c.push_back(h.constant());
        c.insert(c.end(), h.coeffs().begin(), h.coeffs().end());
        hs.emplace_back(std::move(c), Scalar(0), h.label());
        labels.insert(h.label());
    }
    std::string label = "H0";
    for (int k = 1; labels.count(label); ++k)
        label = "H0_" + std::to_string(k);
    std::vector<Scalar> e0(arr.dim() + 1);
    e0[0] = 1;
    hs.emplace_back(std::move(e0), Scalar(0), label);
    return Arrangement(arr.dim() + 1, std::move(hs));
}

Arrangement decone(const Arrangement& arr) {
    if (arr.dim() < 2)
        throw InputError("decone needs a central arrangement in dimension at least 2");
    std::vector<Scalar> e0(arr.dim());
    e0[0] = 1;
    Hyperplane h0(e0, Scalar(0));
    if (!arr.contains(h0))
        throw InputError("decone: arrangement does not contain the hyperplane x0 = 0");
    std::vector<Hyperplane> hs;
    for (const auto& h : arr.hyperplanes()) {
        if (h.constant() != 0)
            throw InputError("decone: hyperplane '" + h.label() + "' is not central");
        if (h == h0)
            continue;
        std::vector<Scalar> c(h.coeffs().begin() + 1, h.coeffs().end());
        if (std::all_of(c.begin(), c.end(), [](const Scalar& x) { return x == 0; }))
            throw InputError("decone: hyperplane '" + h.label() + "' restricts to a constant");
        hs.emplace_back(std::move(c), h.coeffs()[0], h.label());
    }
    return Arrangement(arr.dim() - 1, std::move(hs));
}

// --- Fiber points -------------------------------------------------------------------

bool base_on_projected(const Arrangement& arr, const LineDirection& y, std::span<const Scalar> base) {
    check_dims(arr, y);
    AdaptedCoordinates ac = adapted_coordinates(y);
    std::vector<Scalar> x = ac.to_original(base, Scalar(0));
    for (const auto& h : arr.hyperplanes())
        if (h.linear_part(y.direction()) == 0 && h.evaluate(x) == 0)
            return true;
    return false;
}

FiberPoints fiber_points(const Arrangement& arr, const LineDirection& y, std::span<const Scalar> base) {
    check_dims(arr, y);
    AdaptedCoordinates ac = adapted_coordinates(y);
    std::vector<Scalar> x = ac.to_original(base, Scalar(0));
    FiberPoints fp;
    for (const auto& h : arr.hyperplanes()) {
        Scalar slope = h.linear_part(y.direction());
        if (slope == 0) {
            if (h.evaluate(x) == 0)
                throw InputError("base point lies on the projection of '" + h.label() + "'");
            continue;
        }
        fp.labels.push_back(h.label());
        fp.roots.push_back(-h.evaluate(x) / slope);
    }
    std::vector<Scalar> sorted = fp.roots;
    std::sort(sorted.begin(), sorted.end());
    fp.collision = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    return fp;
}

namespace {

Scalar radical_inverse(unsigned long index, unsigned long base) {
    Scalar r = 0;
    Scalar f(1, base);
    Scalar scale = f;
    while (index) {
        r += Scalar(static_cast<long>(index % base)) * scale;
        index /= base;
        scale *= f;
    }
    return r;
}

constexpr unsigned long kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Halton point in [-3, 3)^d.
std::vector<Scalar> halton_point(unsigned long index, size_t d) {
    std::vector<Scalar> p(d);
    for (size_t k = 0; k < d; ++k)
        p[k] = 6 * radical_inverse(index, kPrimes[k % std::size(kPrimes)]) - 3;
    return p;
}

} // namespace

FiberOracleResult goodness_fiber_oracle(const Arrangement& arr, const LineDirection& y, size_t sample_count) {
    check_dims(arr, y);
    size_t d = arr.dim() - 1;
    AdaptedCoordinates ac = adapted_coordinates(y);

    // Root of each transversal hyperplane as an affine function of the base:
    // q_H(u) = g_H . u + c_H.
    struct RootFunction {
        std::string label;
        std::vector<Scalar> g;
        Scalar c;
    };
    std::vector<RootFunction> roots;
    for (const auto& h : arr.hyperplanes()) {
        Scalar slope = h.linear_part(y.direction());
        if (slope == 0)
            continue;
        RootFunction rf{h.label(), std::vector<Scalar>(d), -h.constant() / slope};
        for (size_t k = 0; k < d; ++k)
            rf.g[k] = -h.coeffs()[ac.transverse[k]] / slope;
        roots.push_back(std::move(rf));
    }

    FiberOracleResult result;
    auto test = [&](const std::vector<Scalar>& base) {
        if (base_on_projected(arr, y, base))
            return true;
        ++result.samples_tested;
        FiberPoints fp = fiber_points(arr, y, base);
        if (!fp.collision)
            return true;
        result.distinct = false;
        result.collision_base = base;
        for (size_t i = 0; i < fp.roots.size(); ++i)
            for (size_t j = i + 1; j < fp.roots.size(); ++j)
                if (fp.roots[i] == fp.roots[j]) {
                    result.colliding = {fp.labels[i], fp.labels[j]};
                    return false;
                }
        return false;
    };

    for (size_t s = 0; s < sample_count; ++s) {
        std::vector<Scalar> p = halton_point(s + 1, d);
        if (!test(p))
            return result;
        // Project p onto every pairwise collision locus {q_i(u) = q_j(u)}.
        for (size_t i = 0; i < roots.size(); ++i)
            for (size_t j = i + 1; j < roots.size(); ++j) {
                std::vector<Scalar> g(d);
                Scalar norm2 = 0, value = roots[i].c - roots[j].c;
                for (size_t k = 0; k < d; ++k) {
                    g[k] = roots[i].g[k] - roots[j].g[k];
                    norm2 += g[k] * g[k];
                    value += g[k] * p[k];
                }
                if (norm2 == 0)
                    continue; // roots differ by a nonzero constant
                std::vector<Scalar> q = p;
                for (size_t k = 0; k < d; ++k)
                    q[k] -= value / norm2 * g[k];
                if (!test(q))
                    return result;
            }
    }
    return result;
}

} // namespace arrmc
