#include "arrmc/io.hpp"

#include "arrmc/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace arrmc {

namespace {

void check_object(const Json& j, const std::string& context, std::initializer_list<const char*> allowed) {
    if (!j.is_object())
        throw InputError(context + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "schema") {
            if (!value.is_number_integer() || value.get<int>() != kSchemaVersion)
                throw InputError(context + ": unsupported schema version");
            continue;
        }
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            throw InputError(context + ": unknown field '" + key + "'");
    }
}

const Json& field(const Json& j, const char* name, const std::string& context) {
    auto it = j.find(name);
    if (it == j.end())
        throw InputError(context + ": missing field '" + name + "'");
    return *it;
}

Scalar rational_from_json(const Json& j, const std::string& context) {
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Scalar(mpz_class(j.dump()));
    throw InputError(context + ": rational must be a string such as \"1/2\"");
}

std::vector<Scalar> rational_list(const Json& j, const std::string& context) {
    if (!j.is_array())
        throw InputError(context + ": expected an array of rationals");
    std::vector<Scalar> out;
    for (const auto& e : j)
        out.push_back(rational_from_json(e, context));
    return out;
}

Json rational_list_json(std::span<const Scalar> v) {
    Json out = Json::array();
    for (const auto& q : v)
        out.push_back(to_string(q));
    return out;
}

size_t size_from_json(const Json& j, const std::string& context) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw InputError(context + ": expected a nonnegative integer");
    return j.get<size_t>();
}

} // namespace

Json matrix_to_json(const QMatrix& m) {
    Json out = Json::array();
    for (size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < m.cols(); ++j)
            row.push_back(to_string(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

QMatrix matrix_from_json(const Json& j, const std::string& context) {
    if (!j.is_array())
        throw InputError(context + ": matrix must be an array of rows");
    size_t rows = j.size();
    size_t cols = rows ? (j[0].is_array() ? j[0].size() : 0) : 0;
    QMatrix m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw InputError(context + ": ragged matrix");
        for (size_t c = 0; c < cols; ++c)
            m(i, c) = rational_from_json(j[i][c], context);
    }
    return m;
}

Json to_json(const Arrangement& arr) {
    Json hs = Json::array();
    for (const auto& h : arr.hyperplanes()) {
        Json e;
        e["label"] = h.label();
        e["coeffs"] = rational_list_json(h.coeffs());
        e["constant"] = to_string(h.constant());
        hs.push_back(std::move(e));
    }
    Json out;
    out["schema"] = kSchemaVersion;
    out["dim"] = arr.dim();
    out["hyperplanes"] = std::move(hs);
    return out;
}

Arrangement arrangement_from_json(const Json& j) {
    const std::string ctx = "arrangement";
    check_object(j, ctx, {"dim", "hyperplanes"});
    size_t dim = size_from_json(field(j, "dim", ctx), ctx + ".dim");
    const Json& hs = field(j, "hyperplanes", ctx);
    if (!hs.is_array())
        throw InputError(ctx + ": hyperplanes must be an array");
    std::vector<Hyperplane> out;
    for (const auto& h : hs) {
        check_object(h, ctx + " hyperplane", {"label", "coeffs", "constant"});
        std::string label;
        if (auto it = h.find("label"); it != h.end()) {
            if (!it->is_string())
                throw InputError(ctx + ": label must be a string");
            label = it->get<std::string>();
        }
        Scalar constant = 0;
        if (auto it = h.find("constant"); it != h.end())
            constant = rational_from_json(*it, ctx + " constant");
        out.emplace_back(rational_list(field(h, "coeffs", ctx), ctx + " coeffs"), constant, label);
    }
    return Arrangement(dim, std::move(out));
}

Json to_json(const PfaffianSystem& sys) {
    Json arr = to_json(sys.arrangement());
    arr.erase("schema");
    Json res = Json::object();
    for (size_t i = 0; i < sys.arrangement().size(); ++i)
        res[sys.arrangement()[i].label()] = matrix_to_json(sys.residue(i));
    Json out;
    out["schema"] = kSchemaVersion;
    out["arrangement"] = std::move(arr);
    out["dimE"] = sys.dim_e();
    out["residues"] = std::move(res);
    return out;
}

PfaffianSystem system_from_json(const Json& j, PfaffianSystem::Check check) {
    const std::string ctx = "system";
    check_object(j, ctx, {"arrangement", "dimE", "residues"});
    Arrangement arr = arrangement_from_json(field(j, "arrangement", ctx));
    size_t d = size_from_json(field(j, "dimE", ctx), ctx + ".dimE");
    const Json& res = field(j, "residues", ctx);
    if (!res.is_object())
        throw InputError(ctx + ": residues must be an object keyed by label");
    std::vector<QMatrix> residues(arr.size(), QMatrix(d, d));
    for (const auto& [label, m] : res.items()) {
        auto idx = arr.find_label(label);
        if (!idx)
            throw InputError(ctx + ": residue for unknown hyperplane '" + label + "'");
        QMatrix q = matrix_from_json(m, ctx + " residue '" + label + "'");
        if (d == 0 && q.rows() == 0)
            continue;
        residues[*idx] = std::move(q);
    }
    return PfaffianSystem(std::move(arr), d, std::move(residues), check);
}

Json to_json(const LineDirection& y) {
    Json out;
    out["schema"] = kSchemaVersion;
    out["direction"] = rational_list_json(y.direction());
    return out;
}

LineDirection line_from_json(const Json& j) {
    check_object(j, "line", {"direction"});
    return LineDirection(rational_list(field(j, "direction", "line"), "line direction"));
}

Json character_to_json(const Scalar& lambda) {
    Json out;
    out["schema"] = kSchemaVersion;
    out["lambda"] = to_string(lambda);
    return out;
}

Scalar character_from_json(const Json& j) {
    check_object(j, "character", {"lambda"});
    return rational_from_json(field(j, "lambda", "character"), "character lambda");
}

namespace {

Json tuple_header(size_t rank, const std::vector<std::string>& labels) {
    Json out;
    out["schema"] = kSchemaVersion;
    out["rank"] = rank;
    if (!labels.empty())
        out["labels"] = labels;
    return out;
}

} // namespace

Json to_json(const MonodromyTuple& t) {
    Json out = tuple_header(t.rank, t.labels);
    Json ms = Json::array();
    for (const auto& m : t.matrices) {
        Json rows = Json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            Json row = Json::array();
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                row.push_back(Json::array({m(i, c).real(), m(i, c).imag()}));
            rows.push_back(std::move(row));
        }
        ms.push_back(std::move(rows));
    }
    out["matrices"] = std::move(ms);
    return out;
}

Json to_json(const ExactTuple& t) {
    Json out = tuple_header(t.rank, t.labels);
    Json ms = Json::array();
    for (const auto& m : t.matrices)
        ms.push_back(matrix_to_json(m));
    out["matrices"] = std::move(ms);
    return out;
}

ParsedTuple tuple_from_json(const Json& j) {
    const std::string ctx = "tuple";
    check_object(j, ctx, {"rank", "matrices", "labels"});
    size_t rank = size_from_json(field(j, "rank", ctx), ctx + ".rank");
    const Json& ms = field(j, "matrices", ctx);
    if (!ms.is_array() || ms.empty())
        throw InputError(ctx + ": matrices must be a nonempty array");

    ParsedTuple out;
    out.numeric.rank = rank;
    bool exact = true;
    ExactTuple ex;
    ex.rank = rank;
    for (const auto& m : ms) {
        if (!m.is_array() || m.size() != rank)
            throw DimensionMismatch(ctx + ": every matrix needs " + std::to_string(rank) + " rows");
        CMatrix cm(rank, rank);
        QMatrix qm(rank, rank);
        for (size_t i = 0; i < rank; ++i) {
            if (!m[i].is_array() || m[i].size() != rank)
                throw DimensionMismatch(ctx + ": every row needs " + std::to_string(rank) + " entries");
            for (size_t c = 0; c < rank; ++c) {
                const Json& e = m[i][c];
                if (e.is_string()) {
                    qm(i, c) = parse_rational(e.get<std::string>());
                    cm(i, c) = Complex(to_double(qm(i, c)), 0.0);
                } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
                    exact = false;
                    cm(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
                } else {
                    throw InputError(ctx + ": entry must be [re, im] or a rational string");
                }
            }
        }
        out.numeric.matrices.push_back(std::move(cm));
        ex.matrices.push_back(std::move(qm));
    }
    if (auto it = j.find("labels"); it != j.end()) {
        if (!it->is_array())
            throw InputError(ctx + ": labels must be an array of strings");
        for (const auto& l : *it) {
            if (!l.is_string())
                throw InputError(ctx + ": labels must be an array of strings");
            out.numeric.labels.push_back(l.get<std::string>());
        }
        ex.labels = out.numeric.labels;
    }
    if (exact)
        out.exact = std::move(ex);
    return out;
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw InputError("cannot write '" + path.string() + "'");
    out << text;
}

std::vector<Scalar> parse_rational_list(const std::string& text) {
    std::vector<Scalar> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_rational(item));
    if (out.empty())
        throw InputError("empty list of rationals");
    return out;
}

} // namespace arrmc
