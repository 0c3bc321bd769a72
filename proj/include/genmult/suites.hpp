#ifndef GENMULT_SUITES_HPP
#define GENMULT_SUITES_HPP

//
// Randomized sweeps that exercise one result per suite over many draws.
// Draw i uses its own engine seeded with derive_seed(seed, i), so a failing
// draw can be replayed alone; rows are always ordered by draw index.
//

#include "genmult/invertibility.hpp"
#include "genmult/json_io.hpp"
#include "genmult/multiplier.hpp"
#include "genmult/perturbation.hpp"
#include "genmult/random.hpp"

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace genmult {

struct SweepConfig {
    Eigen::Index dim_lo = 2;
    Eigen::Index dim_hi = 8;
    Eigen::Index count_lo = 2;
    Eigen::Index count_hi = 16;
    std::size_t draws = 100;
    std::uint64_t seed = 42;
    bool tight_only = false;  // prop-4-4: draw tight frames only
    ToleranceConfig tol{};

    void validate() const {
        if (draws < 1) throw std::invalid_argument("draws must be >= 1");
        if (dim_lo < 1 || dim_hi < dim_lo) throw std::invalid_argument("invalid dimension range");
        if (count_lo < 1 || count_hi < count_lo) throw std::invalid_argument("invalid count range");
        tol.validate();
    }
};

struct DrawResult {
    std::size_t draw = 0;
    std::uint64_t seed = 0;
    VerdictStatus status = VerdictStatus::Pass;
    double margin = std::numeric_limits<double>::infinity();  // normalized slack left; < 0 on failure
    std::map<std::string, double> detail;
};

struct SuiteReport {
    std::string suite;
    SweepConfig config;
    std::vector<DrawResult> rows;

    [[nodiscard]] std::size_t count(VerdictStatus s) const {
        return static_cast<std::size_t>(
            std::count_if(rows.begin(), rows.end(), [s](const DrawResult& r) { return r.status == s; }));
    }
    [[nodiscard]] double worst_margin() const {
        double w = std::numeric_limits<double>::infinity();
        for (const auto& r : rows)
            if (r.status != VerdictStatus::NotApplicable) w = std::min(w, r.margin);
        return w;
    }
    [[nodiscard]] bool all_pass() const { return count(VerdictStatus::Fail) == 0; }
};

namespace suites {

/// accumulates checks of one draw
class DrawRecorder {
public:
    explicit DrawRecorder(DrawResult& r) : r_(r) {}

    /// records margin (allowed - measured) / max(1, |allowed|)
    void check(const std::string& name, bool pass, double measured, double allowed) {
        const double m = (allowed - measured) / std::max(1.0, std::abs(allowed));
        r_.detail[name] = measured;
        r_.margin = std::min(r_.margin, pass ? std::max(m, 0.0) : std::min(m, -1e-300));
        if (!pass) r_.status = VerdictStatus::Fail;
    }
    void certificate(const Certificate& c) {
        check(c.claim, c.pass, c.lhs, c.threshold);
    }
    void flag(const std::string& name, bool pass) { check(name, pass, pass ? 0.0 : 1.0, 0.0); }
    void note(const std::string& name, double v) { r_.detail[name] = v; }
    void not_applicable() {
        if (r_.status != VerdictStatus::Fail) r_.status = VerdictStatus::NotApplicable;
    }
    void verdict(const Verdict& v) {
        for (const auto& [k, val] : v.margins) r_.detail[v.proposition + ":" + k] = val;
        if (v.status() == VerdictStatus::NotApplicable) {
            not_applicable();
            return;
        }
        if (v.conclusion_checked) flag(v.proposition + " conclusion", v.conclusion_holds);
    }

private:
    DrawResult& r_;
};

inline Eigen::Index dim(const SweepConfig& c, Rng& rng) { return uniform_index(c.dim_lo, c.dim_hi, rng); }

/// count >= d for frames
inline Eigen::Index count_at_least(const SweepConfig& c, Eigen::Index d, Rng& rng) {
    return uniform_index(std::max(d, c.count_lo), std::max(d, c.count_hi), rng);
}

inline void thm_3_2(const SweepConfig& cfg, Rng& rng, DrawRecorder& rec) {
    const auto d1 = dim(cfg, rng), d2 = dim(cfg, rng);
    const auto n1 = uniform_index(cfg.count_lo, cfg.count_hi, rng);
    const auto n2 = uniform_index(cfg.count_lo, cfg.count_hi, rng);
    const SequenceSystem f = random_bessel(d1, n1, rng);
    const SequenceSystem g = random_bessel(d2, n2, rng);
    const GeneralizedMultiplier m = build(Symbol(gaussian_matrix(n2, n1, rng)), g, f);
    for (const auto& c : norm_certificates(m, cfg.tol)) rec.certificate(c);
    rec.certificate(adjoint_check(m, cfg.tol));

    const Symbol psd(random_psd(n1, uniform_index(1, n1, rng), rng));
    rec.certificate(positivity_check(psd, f, cfg.tol));
}

inline void prop_3_5(const SweepConfig& cfg, Rng& rng, DrawRecorder& rec, std::uint64_t seed) {
    const auto d = dim(cfg, rng);
    const auto n = count_at_least(cfg, d, rng);
    const SequenceSystem f = random_frame(d, n, rng, cfg.tol);
    const bool positive = uniform_index(0, 1, rng) == 0;
    const SequenceSystem g = positive ? f : random_frame(d, n, rng, cfg.tol);
    CMatrix u = positive ? CMatrix(random_psd(n, n, rng) + CMatrix::Identity(n, n)) : gaussian_matrix(n, n, rng);
    const GeneralizedMultiplier m = build(Symbol(std::move(u)), g, f);

    const InvertibilityReport r = bounded_below_frame_bound(m, cfg.tol);
    for (const auto& c : r.certificates) rec.certificate(c);
    if (r.certificates.empty()) rec.note("no_conclusion", 1.0);

    const RVector h = hermitian_part_eigenvalues(m.assembled());
    const double a = positive ? h(0) : 0.5 * std::max(std::abs(h(0)), 1e-3);
    if (a > 0.0) rec.verdict(sesquilinear_lower_check(m, a, 32, seed, cfg.tol));
}

inline void prop_3_6(const SweepConfig& cfg, Rng& rng, DrawRecorder& rec, std::uint64_t seed) {
    const auto d = dim(cfg, rng);
    const auto n = count_at_least(cfg, d, rng);
    const SequenceSystem f = random_frame(d, n, rng, cfg.tol);
    const SequenceSystem g = canonical_dual(f, cfg.tol);
    const CMatrix e = gaussian_matrix(n, n, rng);
    const double spread = operator_norm(g.synthesis_matrix() * e * f.analysis_matrix());
    const double t = uniform_real(0.05, 0.9, rng);
    const GeneralizedMultiplier m = build(Symbol(CMatrix::Identity(n, n) + (t / spread) * e), g, f);

    const double dist = operator_norm(CMatrix::Identity(d, d) - m.assembled());
    const bool part_two = uniform_index(0, 1, rng) == 0;
    const double lambda2 = part_two ? 0.0 : uniform_real(0.0, 1.0, rng);
    const double lambda1 = std::min(dist * (1.0 + 1e-12), 0.999999);
    const Verdict v = identity_perturbation_check(m, lambda1, lambda2, 32, seed, cfg.tol);
    rec.note("identity_distance", dist);
    rec.verdict(v);
}

inline void prop_3_7(const SweepConfig& cfg, Rng& rng, DrawRecorder& rec) {
    const auto d = dim(cfg, rng);
    const SequenceSystem f = random_riesz_basis(d, rng);
    const SequenceSystem g = random_riesz_basis(d, rng);
    const GeneralizedMultiplier m = build(Symbol(gaussian_matrix(d, d, rng)), g, f);
    rec.certificate(riesz_lower_bound(m, cfg.tol));
}

inline void prop_3_8(const SweepConfig& cfg, Rng& rng, DrawRecorder& rec) {
    const auto d = dim(cfg, rng);
    const auto d1 = dim(cfg, rng), d2 = dim(cfg, rng);
    const auto nh = uniform_index(cfg.count_lo, cfg.count_hi, rng);
    const auto ng = uniform_index(cfg.count_lo, cfg.count_hi, rng);
    const SequenceSystem f = random_riesz_basis(d, rng);
    const SequenceSystem l = biorthogonal_dual(f, cfg.tol);
    const SequenceSystem g = random_bessel(d2, ng, rng);
    const SequenceSystem h = random_bessel(d1, nh, rng);
    const GeneralizedMultiplier outer = build(Symbol(gaussian_matrix(ng, d, rng)), g, f);
    const GeneralizedMultiplier inner = build(Symbol(gaussian_matrix(d, nh, rng)), l, h);
    const Composition c = compose_biorthogonal(outer, inner, cfg.tol);
    rec.certificate(c.residual);

    // a perturbed l must be rejected
    CMatrix bent = l.synthesis_matrix();
    bent(0, 0) += 1e-3 * std::max(1.0, bent.norm());
    bool rejected = false;
    try {
        (void)compose_biorthogonal(outer, build(inner.symbol(), SequenceSystem(bent), h), cfg.tol);
    } catch (const precondition_error&) {
        rejected = true;
    }
    rec.flag("prop-3.8 rejects non-biorthogonal", rejected);
}

inline void prop_4_1(const SweepConfig& cfg, Rng& rng, DrawRecorder& rec) {
    const auto d = dim(cfg, rng);
    const SequenceSystem f = random_riesz_basis(d, rng);
    const SequenceSystem g = random_riesz_basis(d, rng);
    const bool singular = uniform_index(0, 1, rng) == 0;
    const CMatrix u = singular ? random_rank_deficient(d, uniform_index(0, d - 1, rng) == 0 ? 1 : d - 1, rng)
                               : gaussian_matrix(d, d, rng);
    const GeneralizedMultiplier m = build(Symbol(u), g, f);
    const RieszInverse r = riesz_inverse(m, cfg.tol);
    rec.note("sigma_min_symbol", r.sigma_min_symbol);
    rec.note("sigma_min_multiplier", r.sigma_min_multiplier);
    rec.flag("prop-4.1 symbol invertible <=> multiplier invertible", r.consistent());
    if (r.inverse) {
        const CMatrix direct = inverse(m.assembled(), cfg.tol);
        const double scale = std::max(1.0, direct.norm());
        const double diff = (r.inverse->assembled() - direct).norm();
        rec.check("prop-4.1 formula vs direct inverse", diff <= 1e-9 * scale, diff, 1e-9 * scale);
        rec.check("prop-4.1 ||M M^-1 - I||", r.right_residual <= 1e-9, r.right_residual, 1e-9);
        rec.check("prop-4.1 ||M^-1 M - I||", r.left_residual <= 1e-9, r.left_residual, 1e-9);
    }
}

inline void prop_4_2(const SweepConfig& cfg, Rng& rng, DrawRecorder& rec) {
    const auto d = dim(cfg, rng);
    const auto n = count_at_least(cfg, d, rng);
    const SequenceSystem f = random_frame(d, n, rng, cfg.tol);
    const SequenceSystem g = random_frame(d, n, rng, cfg.tol);
    const GeneralizedMultiplier m = build(Symbol(gaussian_matrix(n, n, rng)), g, f);
    if (!multiplier_invertible(m, cfg.tol)) {
        rec.not_applicable();
        return;
    }
    for (const auto& c : lower_frame_from_invertible(m, cfg.tol).certificates) rec.certificate(c);
}

inline void cor_4_3(const SweepConfig& cfg, Rng& rng, DrawRecorder& rec) {
    const auto n = std::max<Eigen::Index>(2, dim(cfg, rng));
    const SequenceSystem g = random_riesz_basis(n, rng);
    CMatrix u = gaussian_matrix(n, n, rng);
    while (!is_invertible(u, cfg.tol)) u = gaussian_matrix(n, n, rng);
    const auto which = uniform_index(0, 2, rng);
    std::optional<SequenceSystem> f;
    if (which == 0) f.emplace(random_riesz_basis(n, rng));
    else if (which == 1) f.emplace(random_frame(uniform_index(1, n - 1, rng), n, rng, cfg.tol));  // overcomplete
    else f.emplace(SequenceSystem(random_rank_deficient(n, n - 1, rng)));                        // Bessel only
    const Verdict v = riesz_iff_corollary(g, *f, Symbol(std::move(u)), cfg.tol);
    rec.note("case", static_cast<double>(which));
    rec.verdict(v);
}

inline void prop_4_4(const SweepConfig& cfg, Rng& rng, DrawRecorder& rec) {
    const auto d = std::max<Eigen::Index>(2, dim(cfg, rng));
    const auto n = count_at_least(cfg, d, rng);
    const bool tight = cfg.tight_only || uniform_index(0, 4, rng) == 0;
    const SequenceSystem f = tight ? frame_with_bounds(d, n, 1.5, 1.5, rng) : frame_with_bounds(d, n, 1.0, 2.0, rng);
    const FrameBounds fb = frame_bounds(f);
    const double a = fb.lower, b = fb.upper;
    const double mu_bound = std::pow((a * b * b - a * a * b) / (a * a + b * b), 2) / b;

    // controlled mu* = t * mu_bound; t > 1 violates the hypothesis
    const CMatrix h = gaussian_matrix(d, n, rng);
    const double t = uniform_real(0.0, 1.3, rng);
    const double target = t * (mu_bound > 0.0 ? mu_bound : 0.08);
    const CMatrix gm = f.synthesis_matrix() + std::sqrt(target) / operator_norm(h) * h;
    const CMatrix e = gaussian_matrix(n, n, rng);
    const double s = uniform_real(0.0, 0.33, rng);
    const Symbol u(CMatrix::Identity(n, n) + s / operator_norm(e) * e);

    const Verdict v = perturbation_invertibility(f, SequenceSystem(gm), u, cfg.tol);
    rec.note("tight", tight ? 1.0 : 0.0);
    if (tight && v.status() != VerdictStatus::NotApplicable) rec.flag("prop-4.4 tight frame is not applicable", false);
    rec.verdict(v);
}

inline void prop_5_2(const SweepConfig& cfg, Rng& rng, DrawRecorder& rec) {
    const auto d1 = dim(cfg, rng), d2 = dim(cfg, rng);
    const auto n1 = uniform_index(cfg.count_lo, cfg.count_hi, rng);
    const auto n2 = uniform_index(cfg.count_lo, cfg.count_hi, rng);
    const SequenceSystem f = random_bessel(d1, n1, rng);
    const SequenceSystem g = random_bessel(d2, n2, rng);
    const GeneralizedMultiplier base = build(Symbol(gaussian_matrix(n2, n1, rng)), g, f);
    const CMatrix e = gaussian_matrix(n2, n1, rng);
    const CMatrix hg = gaussian_matrix(d2, n2, rng);
    const CMatrix hf = gaussian_matrix(d1, n1, rng);

    std::vector<ScheduleEntry> sym, syn, ana;
    for (int l = 1; l <= 20; ++l) {
        const double w = 1.0 / l;
        sym.push_back({l, SymbolStep{base.symbol().matrix() + w * e}});
        syn.push_back({l, SynthesisStep{SequenceSystem(g.synthesis_matrix() + w * hg)}});
        ana.push_back({l, AnalysisStep{SequenceSystem(f.synthesis_matrix() + w * hf)}});
    }
    for (auto* sched : {&sym, &syn, &ana}) {
        const ConvergenceReport r = run_experiment({base, *sched, {NormMode::Op, NormMode::S1, NormMode::S2}}, cfg.tol);
        for (const auto& row : r.rows)
            rec.check("prop-5.2 " + to_string(r.part) + " " + to_string(row.norm), row.satisfied,
                      row.multiplier_distance, row.envelope * (1.0 + cfg.tol.bound_slack) + cfg.tol.bound_slack);
    }
}

using SuiteFn = std::function<void(const SweepConfig&, Rng&, DrawRecorder&, std::uint64_t)>;

inline const std::map<std::string, SuiteFn>& registry() {
    static const std::map<std::string, SuiteFn> r = {
        {"thm-3-2", [](auto& c, auto& g, auto& rec, auto) { thm_3_2(c, g, rec); }},
        {"prop-3-5", [](auto& c, auto& g, auto& rec, auto s) { prop_3_5(c, g, rec, s); }},
        {"prop-3-6", [](auto& c, auto& g, auto& rec, auto s) { prop_3_6(c, g, rec, s); }},
        {"prop-3-7", [](auto& c, auto& g, auto& rec, auto) { prop_3_7(c, g, rec); }},
        {"prop-3-8", [](auto& c, auto& g, auto& rec, auto) { prop_3_8(c, g, rec); }},
        {"prop-4-1", [](auto& c, auto& g, auto& rec, auto) { prop_4_1(c, g, rec); }},
        {"prop-4-2", [](auto& c, auto& g, auto& rec, auto) { prop_4_2(c, g, rec); }},
        {"cor-4-3", [](auto& c, auto& g, auto& rec, auto) { cor_4_3(c, g, rec); }},
        {"prop-4-4", [](auto& c, auto& g, auto& rec, auto) { prop_4_4(c, g, rec); }},
        {"prop-5-2", [](auto& c, auto& g, auto& rec, auto) { prop_5_2(c, g, rec); }},
    };
    return r;
}

}  // namespace suites

inline std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& [k, v] : suites::registry()) out.push_back(k);
    return out;
}

inline DrawResult run_draw(const std::string& suite, const SweepConfig& cfg, std::size_t index) {
    const auto it = suites::registry().find(suite);
    if (it == suites::registry().end()) throw std::invalid_argument("unknown suite '" + suite + "'");
    DrawResult r;
    r.draw = index;
    r.seed = derive_seed(cfg.seed, index);
    Rng rng(r.seed);
    suites::DrawRecorder rec(r);
    it->second(cfg, rng, rec, r.seed);
    return r;
}

inline SuiteReport run_suite(const std::string& suite, const SweepConfig& cfg) {
    cfg.validate();
    SuiteReport rep{suite, cfg, {}};
    rep.rows.reserve(cfg.draws);
    for (std::size_t i = 0; i < cfg.draws; ++i) rep.rows.push_back(run_draw(suite, cfg, i));
    return rep;
}

namespace io {

inline json draw_to_json(const DrawResult& r, bool with_detail) {
    json out = {{"draw", r.draw}, {"seed", r.seed}, {"status", to_string(r.status)}};
    out["margin"] = std::isfinite(r.margin) ? json(r.margin) : json(nullptr);
    if (with_detail) {
        json d = json::object();
        for (const auto& [k, v] : r.detail) d[k] = std::isfinite(v) ? json(v) : json(nullptr);
        out["detail"] = std::move(d);
    }
    return out;
}

inline json suite_report_to_json(const SuiteReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back(draw_to_json(row, false));
    const double worst = r.worst_margin();
    return {{"suite", r.suite},
            {"seed", r.config.seed},
            {"draws", r.config.draws},
            {"dims", {r.config.dim_lo, r.config.dim_hi}},
            {"counts", {r.config.count_lo, r.config.count_hi}},
            {"passed", r.count(VerdictStatus::Pass)},
            {"failed", r.count(VerdictStatus::Fail)},
            {"not_applicable", r.count(VerdictStatus::NotApplicable)},
            {"worst_margin", std::isfinite(worst) ? json(worst) : json(nullptr)},
            {"rows", std::move(rows)}};
}

inline std::string suite_report_to_csv(const SuiteReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "draw,seed,status,margin\n";
    for (const auto& row : r.rows) os << row.draw << ',' << row.seed << ',' << to_string(row.status) << ',' << row.margin << '\n';
    return os.str();
}

}  // namespace io

}  // namespace genmult

#endif  // GENMULT_SUITES_HPP
