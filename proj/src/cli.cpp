#include "arrmc/cli.hpp"

#include "arrmc/convolution.hpp"
#include "arrmc/errors.hpp"
#include "arrmc/io.hpp"
#include "arrmc/katz.hpp"
#include "arrmc/monodromy.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace arrmc {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string fmt_complex(Complex z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.10f%+.10fi", z.real(), z.imag());
    return buf;
}

Json complex_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

Json poly_json(const std::vector<Complex>& p) {
    Json out = Json::array();
    for (const auto& c : p)
        out.push_back(complex_json(c));
    return out;
}

std::string poly_text(const std::vector<Complex>& p) {
    std::string s;
    for (size_t i = p.size(); i-- > 0;) {
        if (!s.empty())
            s += " ";
        s += "(" + fmt_complex(p[i]) + ")";
    }
    return s;
}

std::string labels_text(const std::vector<std::string>& labels) {
    std::string s = "{";
    for (size_t i = 0; i < labels.size(); ++i)
        s += (i ? ", " : "") + labels[i];
    return s + "}";
}

struct Output {
    Json report = Json::object();
    std::ostringstream text;
    std::optional<Json> artifact; // written to --out, or appended to the text report
};

const std::string& single_input(const JobSpec& job) {
    if (job.inputs.size() != 1)
        throw InputError(job.command + " expects exactly one input file");
    return job.inputs[0];
}

Json load(const std::string& path) {
    return read_json_file(resolve_input(path));
}

Arrangement load_arrangement(const JobSpec& job) {
    Json j = load(single_input(job));
    if (j.contains("arrangement"))
        return system_from_json(j, PfaffianSystem::Check::Unchecked).arrangement();
    return arrangement_from_json(j);
}

PfaffianSystem load_system(const JobSpec& job, bool force_unchecked = false) {
    auto check = job.unchecked || force_unchecked ? PfaffianSystem::Check::Unchecked : PfaffianSystem::Check::Integrable;
    return system_from_json(load(single_input(job)), check);
}

LineDirection require_line(const JobSpec& job) {
    if (!job.line)
        throw InputError(job.command + " needs --line");
    return LineDirection(parse_rational_list(*job.line));
}

Scalar require_rational(const std::optional<std::string>& v, const char* flag, const std::string& command) {
    if (!v)
        throw InputError(command + " needs " + flag);
    return parse_rational(*v);
}

std::vector<std::vector<Scalar>> require_bases(const JobSpec& job) {
    if (job.bases.empty())
        throw InputError(job.command + " needs --base");
    std::vector<std::vector<Scalar>> out;
    for (const auto& b : job.bases)
        out.push_back(parse_rational_list(b));
    return out;
}

IntegratorOptions integrator(const JobSpec& job) {
    IntegratorOptions o;
    o.tol = job.tol;
    return o;
}

std::string base_text(const std::vector<Scalar>& base) {
    std::string s;
    for (size_t i = 0; i < base.size(); ++i)
        s += (i ? "," : "") + to_string(base[i]);
    return s;
}

// ---------------------------------------------------------------------------

int cmd_poset(const JobSpec& job, Output& o) {
    Arrangement arr = load_arrangement(job);
    IntersectionPoset poset = build_intersection_poset(arr);
    Json ranks = Json::array();
    o.text << "intersection poset: " << poset.size() << " flats\n";
    for (size_t k = 0; k < poset.by_rank.size(); ++k) {
        Json flats = Json::array();
        o.text << "rank " << k << ": " << poset.by_rank[k].size() << " flats\n";
        for (const auto& node : poset.by_rank[k]) {
            flats.push_back(Json{{"flat", node.flat.to_string()}, {"containing", node.containing}});
            o.text << "  " << node.flat.to_string() << "  " << labels_text(node.containing) << "\n";
        }
        ranks.push_back(std::move(flats));
    }
    Json covers = Json::array();
    for (size_t k = 0; k < poset.covers.size(); ++k) {
        Json level = Json::array();
        for (const auto& [i, j] : poset.covers[k])
            level.push_back(Json::array({i, j}));
        o.text << "covers rank " << k << " -> " << k + 1 << ": " << poset.covers[k].size() << "\n";
        covers.push_back(std::move(level));
    }
    o.report["flats"] = poset.size();
    o.report["by_rank"] = std::move(ranks);
    o.report["covers"] = std::move(covers);
    return kExitOk;
}

int cmd_goodline(const JobSpec& job, Output& o) {
    Arrangement arr = load_arrangement(job);
    LineDirection y = require_line(job);
    GoodLineResult g = is_good_line(arr, y);
    FiberOracleResult fo = goodness_fiber_oracle(arr, y, job.samples);
    if (g.good && !fo.distinct)
        throw InternalError("line declared good but fibers collide");
    o.report["good"] = g.good;
    o.report["witness"] = g.witness ? Json(g.witness->to_string()) : Json(nullptr);
    o.report["fiber_samples"] = fo.samples_tested;
    o.report["fiber_collision"] = !fo.distinct;
    o.text << "line " << base_text(y.direction()) << ": " << (g.good ? "good" : "not good") << "\n";
    if (g.witness)
        o.text << "witness flat X with X + Y outside the poset: " << g.witness->to_string() << "\n";
    o.text << "fiber sampling: " << fo.samples_tested << " bases, "
           << (fo.distinct ? "no collisions" : "collision of " + fo.colliding.first + " and " + fo.colliding.second)
           << "\n";
    return g.good ? kExitOk : kExitPropertyFalse;
}

int cmd_cone(const JobSpec& job, Output& o, bool inverse) {
    Arrangement arr = load_arrangement(job);
    Arrangement res = inverse ? decone(arr) : cone(arr);
    o.report["dim"] = res.dim();
    o.report["hyperplanes"] = res.size();
    o.text << (inverse ? "decone" : "cone") << ": dimension " << arr.dim() << " -> " << res.dim() << ", "
           << arr.size() << " -> " << res.size() << " hyperplanes\n";
    o.artifact = to_json(res);
    return kExitOk;
}

int cmd_check(const JobSpec& job, Output& o) {
    PfaffianSystem sys = load_system(job, true);
    bool ok = true;
    IntegrabilityResult ir = check_integrability(sys);
    o.report["integrable"] = ir.integrable;
    o.text << "integrability: " << (ir.integrable ? "ok" : "FAILS") << "\n";
    if (!ir.integrable) {
        ok = false;
        o.report["integrability_witness"] = Json{{"flat", ir.flat->to_string()}, {"hyperplane", ir.hyperplane}};
        o.text << "  [A_" << ir.hyperplane << ", sum over " << ir.flat->to_string() << "] != 0\n";
    }

    std::optional<Scalar> lambda;
    if (job.lambda)
        lambda = parse_rational(*job.lambda);
    Json offenses = Json::array();
    auto offense = [&](const std::string& where, const mpz_class& k) {
        offenses.push_back(Json{{"where", where}, {"eigenvalue", k.get_str()}});
        o.text << "  (" << where << ", k=" << k.get_str() << ")\n";
    };

    if (job.line) {
        LineDirection y = require_line(job);
        StarReport star = check_star_conditions(sys, y);
        o.report["star1"] = star.star1;
        o.report["star2"] = star.star2;
        o.report["star1_failures"] = star.star1_failures;
        o.report["star2_failures"] = star.star2_failures;
        o.text << "star conditions: (1) " << (star.star1 ? "ok" : "FAILS at " + labels_text(star.star1_failures))
               << ", (2) " << (star.star2 ? "ok" : "FAILS at " + labels_text(star.star2_failures)) << "\n";
        ok = ok && star.ok();
        if (lambda) {
            GenericityReport gen = check_assumption_generic(sys, y, ConvolutionParameter(*lambda));
            o.text << "genericity for lambda = " << to_string(*lambda) << ": " << (gen.ok ? "ok" : "FAILS") << "\n";
            for (const auto& off : gen.offenses)
                offense(off.where, off.eigenvalue);
            ok = ok && gen.ok;
        }
    } else {
        // Without a line every hyperplane counts as transversal.
        o.text << "nonzero integer eigenvalues of residues:\n";
        QMatrix sum = QMatrix::scalar(sys.dim_e(), lambda ? *lambda : Scalar(0));
        for (size_t i = 0; i < sys.arrangement().size(); ++i) {
            sum += sys.residue(i);
            for (const auto& k : nonzero_integer_eigenvalues(sys.residue(i)))
                offense(sys.arrangement()[i].label(), k);
        }
        if (lambda) {
            ConvolutionParameter check_lambda(*lambda);
            for (const auto& k : nonzero_integer_eigenvalues(sum))
                offense("sum", k);
        }
        ok = ok && offenses.empty();
    }
    o.report["integer_eigenvalues"] = std::move(offenses);
    o.report["ok"] = ok;
    o.text << (ok ? "all checks pass" : "some checks fail") << "\n";
    return ok ? kExitOk : kExitPropertyFalse;
}

int cmd_convolve(const JobSpec& job, Output& o, bool middle) {
    PfaffianSystem sys = load_system(job);
    LineDirection y = require_line(job);
    ConvolutionParameter lam(require_rational(job.lambda, "--lambda", job.command));
    ConvolutionOptions opts;
    opts.allow_non_good = job.allow_non_good;
    ConvolutionResult c = convolve(sys, y, lam, opts);
    o.report["lambda"] = to_string(lam.lambda());
    o.report["input_dim"] = sys.dim_e();
    o.report["convolution_dim"] = c.system.dim_e();
    o.report["block_order"] = c.block_order;
    o.report["dim_K"] = c.k_basis.cols();
    o.report["dim_L"] = c.l_basis.cols();
    o.report["K_basis"] = matrix_to_json(c.k_basis);
    o.report["L_basis"] = matrix_to_json(c.l_basis);
    o.report["KL_invariant"] = c.kl_invariant;
    o.text << (middle ? "middle convolution" : "convolution") << " with lambda = " << to_string(lam.lambda())
           << "\n";
    o.text << "block order: " << labels_text(c.block_order) << "\n";
    o.text << "dim E = " << sys.dim_e() << ", dim c_lambda = " << c.system.dim_e() << ", dim K = "
           << c.k_basis.cols() << ", dim L = " << c.l_basis.cols() << "\n";
    o.text << "K basis: " << c.k_basis.to_string() << "\n";
    o.text << "L basis: " << c.l_basis.to_string() << "\n";
    o.text << "K + L invariant: " << (c.kl_invariant ? "yes" : "no") << "\n";
    if (!middle) {
        o.artifact = to_json(c.system);
        return kExitOk;
    }
    PfaffianSystem mc = middle_convolve(sys, y, lam, opts);
    o.report["middle_convolution_dim"] = mc.dim_e();
    o.text << "dim mc_lambda = " << mc.dim_e() << "\n";
    o.artifact = to_json(mc);
    return kExitOk;
}

Json iso_json(const IsomorphismResult& r) {
    Json j{{"isomorphic", r.isomorphic}, {"solution_dim", r.solution_dim}, {"method", r.method}};
    j["intertwiner"] = r.intertwiner ? matrix_to_json(*r.intertwiner) : Json(nullptr);
    return j;
}

std::string iso_text(const IsomorphismResult& r) {
    std::string s = r.isomorphic ? "isomorphic" : "NOT isomorphic";
    s += " (solution space dim " + std::to_string(r.solution_dim) + ", " + r.method + ")";
    if (r.intertwiner)
        s += "\n    S = " + r.intertwiner->to_string();
    return s;
}

int cmd_compose(const JobSpec& job, Output& o) {
    PfaffianSystem sys = load_system(job);
    LineDirection y = require_line(job);
    ConvolutionParameter lam(require_rational(job.lambda, "--lambda", job.command));
    ConvolutionParameter mu(require_rational(job.mu, "--mu", job.command));
    CompositionReport r = verify_composition_law(sys, y, lam, mu);
    o.report["lambda"] = to_string(r.lambda);
    o.report["mu"] = to_string(r.mu);
    o.report["dims"] = Json{{"input", r.dim_input},
                            {"mc_lambda", r.dim_mc_lambda},
                            {"mc_mu_mc_lambda", r.dim_mc_mu_mc_lambda},
                            {"mc_lambda_plus_mu", r.dim_mc_lambda_plus_mu},
                            {"mc_minus_lambda_mc_lambda", r.dim_inverse_round_trip}};
    o.report["intermediate_star"] = Json{{"star1", r.intermediate_star.star1}, {"star2", r.intermediate_star.star2}};
    o.report["sum_law"] = iso_json(r.sum_law);
    o.report["inverse_law"] = iso_json(r.inverse_law);
    o.report["ok"] = r.ok();
    o.text << "lambda = " << to_string(r.lambda) << ", mu = " << to_string(r.mu) << "\n";
    o.text << "dims: A " << r.dim_input << ", mc_lambda " << r.dim_mc_lambda << ", mc_mu mc_lambda "
           << r.dim_mc_mu_mc_lambda << ", mc_(lambda+mu) " << r.dim_mc_lambda_plus_mu << ", mc_-lambda mc_lambda "
           << r.dim_inverse_round_trip << "\n";
    o.text << "star conditions of mc_lambda: (1) " << (r.intermediate_star.star1 ? "ok" : "fail") << ", (2) "
           << (r.intermediate_star.star2 ? "ok" : "fail") << "\n";
    o.text << "mc_mu mc_lambda vs mc_(lambda+mu): " << iso_text(r.sum_law) << "\n";
    o.text << "mc_-lambda mc_lambda vs A: " << iso_text(r.inverse_law) << "\n";
    return r.ok() ? kExitOk : kExitPropertyFalse;
}

Json property_json(const PropertyPReport& p) {
    return Json{{"holds", p.holds},
                {"no_fixed_vector", p.no_fixed_vector},
                {"no_fixed_covector", p.no_fixed_covector},
                {"star_failures", p.star_failures},
                {"dual_star_failures", p.dual_star_failures}};
}

std::string matrix_text(const CMatrix& m) {
    std::string s;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        s += "    [";
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            s += (j ? ", " : "") + fmt_complex(m(i, j));
        s += "]\n";
    }
    return s;
}

int cmd_katz(const JobSpec& job, Output& o) {
    ParsedTuple t = tuple_from_json(load(single_input(job)));
    CharacterValue c(require_rational(job.lambda, "--lambda", job.command));
    o.report["lambda"] = to_string(c.lambda());
    o.text << "multiplicative middle convolution, c = exp(2 pi i " << to_string(c.lambda()) << ")\n";
    auto dims_json = [](const KatzDimensions& d) {
        return Json{{"convolution", d.convolution_dim}, {"kernels", d.kernel_dim}, {"fixed", d.fixed_dim},
                    {"output", d.output_dim()}};
    };
    auto dims_text = [&](const KatzDimensions& d) {
        o.text << "dims: n*rank = " << d.convolution_dim << ", sum dim Ker(M_k - 1) = " << d.kernel_dim
               << ", fixed = " << d.fixed_dim << ", output rank = " << d.output_dim() << "\n";
    };
    if (t.exact && c.rational_value()) {
        PropertyPReport p = check_property_p(*t.exact);
        ExactKatzResult r = multiplicative_middle_convolution(*t.exact, *c.rational_value());
        o.report["exact"] = true;
        o.report["property_p"] = property_json(p);
        o.report["dims"] = dims_json(r.dims);
        o.text << "exact arithmetic (c = -1)\nproperty P of input: " << (p.holds ? "holds" : "fails") << "\n";
        dims_text(r.dims);
        o.artifact = to_json(r.tuple);
        return kExitOk;
    }
    PropertyPReport p = check_property_p(t.numeric, job.rank_tol);
    KatzResult r = multiplicative_middle_convolution(t.numeric, c, job.rank_tol);
    o.report["exact"] = false;
    o.report["property_p"] = property_json(p);
    o.report["dims"] = dims_json(r.dims);
    o.report["invariance_residual"] = fmt_double(r.invariance_residual);
    o.text << "property P of input: " << (p.holds ? "holds" : "fails") << "\n";
    dims_text(r.dims);
    o.text << "invariance residual: " << fmt_double(r.invariance_residual) << "\n";
    o.artifact = to_json(r.tuple);
    return kExitOk;
}

Json monodromy_json(const MonodromyReport& m) {
    Json gens = Json::array();
    for (size_t k = 0; k < m.tuple.size(); ++k) {
        Json g{{"label", m.tuple.labels.empty() ? Json(nullptr) : Json(m.tuple.labels[k])},
               {"puncture", complex_json(m.tuple.punctures[k])},
               {"char_poly", poly_json(char_poly(m.tuple.matrices[k]))}};
        gens.push_back(std::move(g));
    }
    return Json{{"rank", m.tuple.rank},
                {"generators", std::move(gens)},
                {"basepoint", complex_json(m.loops.basepoint)},
                {"loop_radius", m.loops.radius},
                {"product_residual", fmt_double(m.product_residual)},
                {"infinity_residual", fmt_double(m.infinity_residual)},
                {"infinity_check_applicable", m.infinity_check_applicable}};
}

bool monodromy_consistent(const MonodromyReport& m, double tol) {
    return m.product_residual <= 10 * tol && (!m.infinity_check_applicable || m.infinity_residual <= 10 * tol);
}

int cmd_monodromy(const JobSpec& job, Output& o) {
    PfaffianSystem sys = load_system(job);
    LineDirection y = require_line(job);
    auto bases = require_bases(job);
    bool ok = true;
    Json per_base = Json::array();
    for (const auto& base : bases) {
        MonodromyReport m = monodromy_tuple_of_system(sys, y, base, integrator(job));
        bool consistent = monodromy_consistent(m, job.tol);
        ok = ok && consistent;
        Json j = monodromy_json(m);
        j["base"] = base_text(base);
        j["consistent"] = consistent;
        per_base.push_back(std::move(j));
        o.text << "base " << base_text(base) << ": rank " << m.tuple.rank << ", " << m.tuple.size()
               << " punctures, basepoint " << fmt_complex(m.loops.basepoint) << "\n";
        for (size_t k = 0; k < m.tuple.size(); ++k) {
            o.text << "  M_" << k + 1 << (m.tuple.labels.empty() ? "" : " (" + m.tuple.labels[k] + ")")
                   << " at " << fmt_complex(m.tuple.punctures[k]) << "\n"
                   << matrix_text(m.tuple.matrices[k]);
        }
        o.text << "  product vs big loop: " << fmt_double(m.product_residual) << ", infinity check: "
               << (m.infinity_check_applicable ? fmt_double(m.infinity_residual) : std::string("n/a")) << "\n";
        if (bases.size() == 1)
            o.artifact = to_json(m.tuple);
    }
    o.report["bases"] = std::move(per_base);
    o.report["ok"] = ok;
    if (!ok)
        throw ToleranceNotMet("loop product disagrees with the big loop beyond 10 * tol");
    return kExitOk;
}

int rh_one(const PfaffianSystem& sys, const LineDirection& y, const ConvolutionParameter& lam,
           const std::vector<Scalar>& base, const JobSpec& job, Json& out, std::ostringstream& text,
           MonodromyTuple* output = nullptr) {
    CompatibilityReport r = verify_mc_compatibility(sys, y, lam, base, integrator(job), job.iso_tol, job.rank_tol);
    const MonodromyTuple& t1 = r.katz.tuple;
    const MonodromyTuple& t2 = r.output.tuple;
    if (output)
        *output = t2;
    out["base"] = base_text(base);
    out["lambda"] = to_string(lam.lambda());
    out["rank_T1"] = t1.rank;
    out["rank_T2"] = t2.rank;
    out["input_monodromy"] = monodromy_json(r.input);
    out["output_monodromy"] = monodromy_json(r.output);
    Json table = Json::array();
    text << "base " << base_text(base) << ", lambda = " << to_string(lam.lambda()) << ": rank T1 = " << t1.rank
         << ", rank T2 = " << t2.rank << "\n";
    for (size_t k = 0; k < r.generator_distances.size(); ++k) {
        auto p1 = char_poly(t1.matrices[k]);
        auto p2 = char_poly(t2.matrices[k]);
        table.push_back(Json{{"generator", k + 1},
                             {"T1_char_poly", poly_json(p1)},
                             {"T2_char_poly", poly_json(p2)},
                             {"distance", fmt_double(r.generator_distances[k])}});
        text << "  M_" << k + 1 << (t2.labels.empty() ? "" : " (" + t2.labels[k] + ")") << "\n"
             << "    T1: " << poly_text(p1) << "\n"
             << "    T2: " << poly_text(p2) << "\n"
             << "    distance " << fmt_double(r.generator_distances[k]) << "\n";
    }
    out["invariants"] = std::move(table);
    const TupleIsomorphism& iso = r.isomorphism;
    out["isomorphic"] = iso.isomorphic;
    out["invariant_distance"] = fmt_double(iso.invariant_distance);
    out["intertwiner_residual"] = fmt_double(iso.residual);
    out["intertwiner_condition"] = fmt_double(iso.condition);
    out["solution_dim"] = iso.solution_dim;
    text << "  invariant distance " << fmt_double(iso.invariant_distance) << ", intertwiner residual "
         << fmt_double(iso.residual) << ", condition " << fmt_double(iso.condition) << "\n";
    text << "  T1 " << (iso.isomorphic ? "~" : "!~") << " T2\n";
    bool consistent = monodromy_consistent(r.input, job.tol) && monodromy_consistent(r.output, job.tol);
    out["loop_products_consistent"] = consistent;
    if (!consistent)
        throw ToleranceNotMet("loop product disagrees with the big loop beyond 10 * tol");
    return iso.isomorphic ? kExitOk : kExitPropertyFalse;
}

int cmd_rh(const JobSpec& job, Output& o) {
    PfaffianSystem sys = load_system(job);
    LineDirection y = require_line(job);
    ConvolutionParameter lam(require_rational(job.lambda, "--lambda", job.command));
    auto bases = require_bases(job);
    int code = kExitOk;
    Json runs = Json::array();
    std::vector<MonodromyTuple> outputs(bases.size());
    for (size_t b = 0; b < bases.size(); ++b) {
        Json j;
        int c = rh_one(sys, y, lam, bases[b], job, j, o.text, &outputs[b]);
        if (c != kExitOk)
            code = c;
        runs.push_back(std::move(j));
    }
    o.report["runs"] = std::move(runs);

    // The local system is constant over the base, so T2 keeps its invariants.
    Json across = Json::array();
    for (size_t b = 1; b < bases.size(); ++b) {
        TupleIsomorphism t = tuple_isomorphism(outputs[0], outputs[b], job.iso_tol, job.seed);
        bool match = t.invariants_match && t.invariant_distance <= job.iso_tol;
        across.push_back(Json{{"bases", Json::array({base_text(bases[0]), base_text(bases[b])})},
                              {"invariant_distance", fmt_double(t.invariant_distance)},
                              {"invariants_match", match}});
        o.text << "T2 at base " << base_text(bases[0]) << " vs base " << base_text(bases[b])
               << ": invariant distance " << fmt_double(t.invariant_distance) << (match ? ", match" : ", MISMATCH")
               << "\n";
        if (!match)
            code = kExitPropertyFalse;
    }
    o.report["across_bases"] = std::move(across);

    // mc_{-lambda} recovers the input up to isomorphism.
    IsomorphismResult back = verify_inverse_law(sys, y, lam);
    o.report["inverse_law"] = iso_json(back);
    o.text << "mc_-lambda mc_lambda vs input: " << iso_text(back) << "\n";
    if (!back.isomorphic)
        code = kExitPropertyFalse;

    if (job.shifted) {
        // Same character, different lambda: reported only.
        Json shifted = Json::array();
        ConvolutionParameter lam1(lam.lambda() + 1);
        for (const auto& base : bases) {
            Json j;
            o.text << "(reported only) ";
            try {
                rh_one(sys, y, lam1, base, job, j, o.text);
            } catch (const Error& e) {
                j["error"] = e.what();
                o.text << "lambda + 1: " << e.what() << "\n";
            }
            shifted.push_back(std::move(j));
        }
        o.report["shifted_lambda"] = std::move(shifted);
    }
    o.report["ok"] = code == kExitOk;
    o.text << (code == kExitOk ? "PASS" : "FAIL") << "\n";
    return code;
}

int dispatch(const JobSpec& job, Output& o) {
    const std::string& c = job.command;
    if (c == "poset")
        return cmd_poset(job, o);
    if (c == "goodline")
        return cmd_goodline(job, o);
    if (c == "cone")
        return cmd_cone(job, o, false);
    if (c == "decone")
        return cmd_cone(job, o, true);
    if (c == "check")
        return cmd_check(job, o);
    if (c == "convolve")
        return cmd_convolve(job, o, false);
    if (c == "middle-convolve")
        return cmd_convolve(job, o, true);
    if (c == "compose-verify")
        return cmd_compose(job, o);
    if (c == "katz-mc")
        return cmd_katz(job, o);
    if (c == "monodromy")
        return cmd_monodromy(job, o);
    if (c == "rh-verify")
        return cmd_rh(job, o);
    throw InputError("unknown command '" + c + "'");
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const PropertyError*>(&e))
        return kExitPropertyFalse;
    if (dynamic_cast<const InputError*>(&e))
        return kExitInputError;
    return kExitNumericError;
}

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const NotGoodLine*>(&e))
        return "NotGoodLine";
    if (dynamic_cast<const NonIntegrableInput*>(&e))
        return "NonIntegrableInput";
    if (dynamic_cast<const AssumptionFail*>(&e))
        return "AssumptionFail";
    if (dynamic_cast<const StarConditionsFail*>(&e))
        return "StarConditionsFail";
    if (dynamic_cast<const ParameterIntegral*>(&e))
        return "ParameterIntegral";
    if (dynamic_cast<const DimensionMismatch*>(&e))
        return "DimensionMismatch";
    if (dynamic_cast<const TrivialCharacter*>(&e))
        return "TrivialCharacter";
    if (dynamic_cast<const SingularInput*>(&e))
        return "SingularInput";
    if (dynamic_cast<const InputError*>(&e))
        return "InputError";
    if (dynamic_cast<const StepUnderflow*>(&e))
        return "StepUnderflow";
    if (dynamic_cast<const ToleranceNotMet*>(&e))
        return "ToleranceNotMet";
    if (dynamic_cast<const NumericError*>(&e))
        return "NumericError";
    return "InternalError";
}

} // namespace

std::string resolve_input(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path) || fs::path(path).is_absolute())
        return path;
    if (const char* dir = std::getenv("ARRMC_CORPUS_DIR")) {
        fs::path candidate = fs::path(dir) / path;
        if (fs::exists(candidate))
            return candidate.string();
    }
    return path;
}

int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
    Output o;
    int code;
    try {
        code = dispatch(job, o);
    } catch (const std::exception& e) {
        code = exit_code_for(e);
        o.report["error"] = Json{{"kind", error_kind(e)}, {"message", e.what()}};
        o.text << error_kind(e) << ": " << e.what() << "\n";
        err << job.command << ": " << error_kind(e) << ": " << e.what() << "\n";
    }
    o.report["exit_code"] = code;

    if (o.artifact && job.out) {
        try {
            write_text_file(*job.out, o.artifact->dump(2) + "\n");
        } catch (const InputError& e) {
            err << job.command << ": " << e.what() << "\n";
            return kExitInputError;
        }
    }
    if (job.json) {
        Json full;
        full["schema"] = kSchemaVersion;
        full["command"] = job.command;
        for (auto& [k, v] : o.report.items())
            full[k] = v;
        if (o.artifact && !job.out)
            full["result"] = *o.artifact;
        out << full.dump(2) << "\n";
    } else {
        out << o.text.str();
        if (o.artifact && !job.out)
            out << o.artifact->dump(2) << "\n";
    }
    return code;
}

} // namespace arrmc
