#ifndef GENMULT_JSON_IO_HPP
#define GENMULT_JSON_IO_HPP

//
// JSON encodings of matrices, sequences, symbols, multiplier bundles,
// experiments and reports. Complex scalars are always [re, im] pairs.
//

#include "genmult/invertibility.hpp"
#include "genmult/multiplier.hpp"
#include "genmult/perturbation.hpp"
#include "genmult/sequences.hpp"
#include "genmult/symbols.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace genmult::io {

using json = nlohmann::json;

struct format_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw format_error(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline long integer(const json& j, const char* what) {
    if (!j.is_number_integer()) throw format_error(std::string(what) + ": expected integer");
    return j.get<long>();
}

inline double number(const json& j, const char* what) {
    if (!j.is_number()) throw format_error(std::string(what) + ": expected number");
    return j.get<double>();
}

}  // namespace detail

inline json complex_to_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

inline Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw format_error("complex scalar must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json vector_to_json(const CVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

inline CVector vector_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw format_error("vector must be a non-empty array of [re, im]");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

inline std::vector<Complex> scalars_from_json(const json& j) {
    const CVector v = vector_from_json(j);
    return {v.data(), v.data() + v.size()};
}

inline json scalars_to_json(const std::vector<Complex>& s) {
    json out = json::array();
    for (const auto& z : s) out.push_back(complex_to_json(z));
    return out;
}

inline json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline CMatrix matrix_from_json(const json& j) {
    const long rows = detail::integer(detail::field(j, "rows"), "rows");
    const long cols = detail::integer(detail::field(j, "cols"), "cols");
    if (rows < 1 || cols < 1) throw format_error("matrix: rows and cols must be >= 1");
    const json& entries = detail::field(j, "entries");
    if (!entries.is_array() || static_cast<long>(entries.size()) != rows)
        throw format_error("matrix: entries must have 'rows' rows");
    CMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i) {
        const json& row = entries[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<long>(row.size()) != cols)
            throw format_error("matrix: every row must have 'cols' entries");
        for (long k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
    }
    if (!m.allFinite()) throw format_error("matrix: non-finite entries");
    return m;
}

inline json sequence_to_json(const SequenceSystem& s) {
    json vecs = json::array();
    for (Eigen::Index k = 0; k < s.count(); ++k) vecs.push_back(vector_to_json(s.vector(k)));
    return {{"dim", s.dim()}, {"vectors", std::move(vecs)}};
}

inline SequenceSystem sequence_from_json(const json& j) {
    const long dim = detail::integer(detail::field(j, "dim"), "dim");
    const json& vecs = detail::field(j, "vectors");
    if (dim < 1) throw format_error("sequence: dim must be >= 1");
    if (!vecs.is_array() || vecs.empty()) throw format_error("sequence: vectors must be a non-empty array");
    std::vector<CVector> vs;
    for (const auto& v : vecs) {
        vs.push_back(vector_from_json(v));
        if (vs.back().size() != dim) throw format_error("sequence: vector length differs from dim");
    }
    if (!std::all_of(vs.begin(), vs.end(), [](const CVector& v) { return v.allFinite(); }))
        throw format_error("sequence: non-finite entries");
    return SequenceSystem::from_vectors(vs);
}

inline json symbol_to_json(const Symbol& u) {
    json out = matrix_to_json(u.matrix());
    out["kind"] = kind_name(u.kind());
    if (const auto* d = std::get_if<symbol_kind::Diagonal>(&u.kind())) out["m"] = scalars_to_json(d->m);
    if (const auto* c = std::get_if<symbol_kind::Convolution>(&u.kind())) {
        out["kernel"] = scalars_to_json(c->kernel);
        out["offset"] = c->offset;
    }
    return out;
}

///
/// Accepts either explicit entries (with an optional kind tag) or
/// constructor parameters: diagonal {"m"}, convolution {"kernel",
/// "offset", "n"}, frobenius {"a"}, triblock {"n"}.
///
inline Symbol symbol_from_json(const json& j) {
    if (!j.is_object()) throw format_error("symbol must be an object");
    const std::string kind = j.contains("kind") ? j.at("kind").get<std::string>() : "dense";

    if (j.contains("entries")) {
        CMatrix m = matrix_from_json(j);
        if (kind == "diagonal") {
            if (m.rows() != m.cols()) throw format_error("diagonal symbol must be square");
            std::vector<Complex> d(static_cast<std::size_t>(m.rows()));
            for (Eigen::Index i = 0; i < m.rows(); ++i) d[static_cast<std::size_t>(i)] = m(i, i);
            const Symbol s = diagonal_symbol(d);
            if ((s.matrix() - m).norm() != 0.0) throw format_error("diagonal symbol has off-diagonal entries");
            return s;
        }
        if (kind == "convolution") {
            const Symbol s = convolution_symbol(scalars_from_json(detail::field(j, "kernel")),
                                                detail::integer(detail::field(j, "offset"), "offset"), m.rows());
            if (s.rows() != m.rows() || s.cols() != m.cols() || (s.matrix() - m).norm() != 0.0)
                throw format_error("convolution symbol entries do not match kernel");
            return s;
        }
        if (kind == "frobenius") return frobenius_symbol(std::move(m));
        if (kind == "triblock") return Symbol(std::move(m), symbol_kind::TriBlock{});
        if (kind == "dense") return dense_symbol(std::move(m));
        throw format_error("unknown symbol kind '" + kind + "'");
    }

    if (kind == "diagonal") return diagonal_symbol(scalars_from_json(detail::field(j, "m")));
    if (kind == "convolution")
        return convolution_symbol(scalars_from_json(detail::field(j, "kernel")),
                                  j.contains("offset") ? detail::integer(j.at("offset"), "offset") : 0,
                                  detail::integer(detail::field(j, "n"), "n"));
    if (kind == "frobenius") return frobenius_symbol(matrix_from_json(detail::field(j, "a")));
    if (kind == "triblock") return triblock_example(detail::integer(detail::field(j, "n"), "n"));
    throw format_error("symbol '" + kind + "' needs explicit entries");
}

inline json bundle_to_json(const GeneralizedMultiplier& m) {
    return {{"symbol", symbol_to_json(m.symbol())},
            {"synthesis", sequence_to_json(m.synthesis_seq())},
            {"analysis", sequence_to_json(m.analysis_seq())}};
}

inline GeneralizedMultiplier bundle_from_json(const json& j) {
    return build(symbol_from_json(detail::field(j, "symbol")), sequence_from_json(detail::field(j, "synthesis")),
                 sequence_from_json(detail::field(j, "analysis")));
}

inline json certificate_to_json(const Certificate& c) {
    json ctx = json::object();
    for (const auto& [k, v] : c.context) ctx[k] = v;
    return {{"claim", c.claim},     {"lhs", c.lhs},
            {"rhs", c.rhs},         {"slack", c.slack}, {"threshold", c.threshold},
            {"verdict", c.pass ? "pass" : "fail"}, {"context", std::move(ctx)}};
}

inline json verdict_to_json(const Verdict& v) {
    json hyps = json::array();
    for (const auto& h : v.hypotheses)
        hyps.push_back({{"name", h.name}, {"holds", h.holds}, {"value", h.value}, {"threshold", h.threshold}});
    json margins = json::object();
    for (const auto& [k, val] : v.margins) margins[k] = val;
    return {{"proposition", v.proposition},
            {"hypotheses", std::move(hyps)},
            {"evidence", v.evidence},
            {"conclusion_checked", v.conclusion_checked},
            {"conclusion_holds", v.conclusion_holds},
            {"status", to_string(v.status())},
            {"margins", std::move(margins)}};
}

inline json classification_to_json(const SequenceSystem& s, const ToleranceConfig& tol = default_tolerances()) {
    const SequenceClass c = classify(s, tol);
    const FrameBounds b = frame_bounds(s);
    json out = {{"dim", s.dim()},
                {"count", s.count()},
                {"class", to_string(c.kind)},
                {"overcomplete", c.overcomplete},
                {"satisfies_lower_frame_condition", c.satisfies_lower_frame_condition},
                {"bounds", {{"lower", b.lower}, {"upper", b.upper}}},
                {"synthesis_op_norm", operator_norm(s.synthesis_matrix())},
                {"sqrt_upper", std::sqrt(b.upper)}};
    if (c.is_frame()) {
        const FrameBounds db = frame_bounds(canonical_dual(s, tol));
        out["canonical_dual_bounds"] = {{"lower", db.lower}, {"upper", db.upper}};
    }
    if (c.is_riesz()) {
        const FrameBounds rb = riesz_bounds(s);
        out["riesz_bounds"] = {{"lower", rb.lower}, {"upper", rb.upper}};
    }
    return out;
}

inline ConvergenceExperiment experiment_from_json(const json& j) {
    GeneralizedMultiplier base = bundle_from_json(j);
    const json& sched = detail::field(j, "schedule");
    if (!sched.is_array() || sched.size() < 2) throw format_error("schedule must list at least two steps");
    std::vector<ScheduleEntry> entries;
    for (const auto& e : sched) {
        ScheduleEntry entry;
        entry.l = static_cast<int>(detail::integer(detail::field(e, "l"), "l"));
        const int parts = int(e.contains("symbol")) + int(e.contains("synthesis")) + int(e.contains("analysis"));
        if (parts != 1) throw format_error("schedule step must carry exactly one of symbol/synthesis/analysis");
        if (e.contains("symbol"))
            entry.change = SymbolStep{symbol_from_json(e.at("symbol")).matrix()};
        else if (e.contains("synthesis"))
            entry.change = SynthesisStep{sequence_from_json(e.at("synthesis"))};
        else
            entry.change = AnalysisStep{sequence_from_json(e.at("analysis"))};
        entries.push_back(std::move(entry));
    }
    std::vector<NormMode> norms{NormMode::Op, NormMode::S1, NormMode::S2};
    if (j.contains("norms")) {
        norms.clear();
        for (const auto& n : j.at("norms")) {
            if (!n.is_string()) throw format_error("norms must be strings");
            try {
                norms.push_back(parse_norm_mode(n.get<std::string>()));
            } catch (const std::invalid_argument& ex) {
                throw format_error(ex.what());
            }
        }
        if (norms.empty()) throw format_error("norms must not be empty");
    }
    return {std::move(base), std::move(entries), std::move(norms)};
}

inline json report_to_json(const ConvergenceReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"l", row.l},
                        {"norm", to_string(row.norm)},
                        {"schedule_distance", row.schedule_distance},
                        {"multiplier_distance", row.multiplier_distance},
                        {"envelope", row.envelope},
                        {"ratio", row.ratio()},
                        {"satisfied", row.satisfied}});
    return {{"perturbed", to_string(r.part)},
            {"factor", r.factor},
            {"all_satisfied", r.all_satisfied()},
            {"envelope_decreasing", r.envelope_decreasing()},
            {"rows", std::move(rows)}};
}

inline std::string report_to_csv(const ConvergenceReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "l,norm,schedule_distance,multiplier_distance,envelope,ratio,satisfied\n";
    for (const auto& row : r.rows)
        os << row.l << ',' << to_string(row.norm) << ',' << row.schedule_distance << ',' << row.multiplier_distance
           << ',' << row.envelope << ',' << row.ratio() << ',' << (row.satisfied ? 1 : 0) << '\n';
    return os.str();
}

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw format_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& ex) {
        throw format_error("'" + path + "': " + ex.what());
    }
}

}  // namespace genmult::io

#endif  // GENMULT_JSON_IO_HPP
