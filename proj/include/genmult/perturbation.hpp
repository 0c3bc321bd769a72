#ifndef GENMULT_PERTURBATION_HPP
#define GENMULT_PERTURBATION_HPP

//
// Convergence of multipliers under perturbation of the symbol or of one
// of the two sequences, measured against the explicit envelopes
//   symbol:    ||M_{U_l} - M_U||_X <= sqrt(B_f B_g) ||U_l - U||_X
//   sequence:  ||M_{U,g_l,f} - M_{U,g,f}||_X <= ||U||_op sqrt(B_f) d_p(g_l, g)
// where d_p is the l^p distance of the sequences (p = 1 for S1, p = 2 for S2).
//

#include "genmult/multiplier.hpp"

#include <string>
#include <variant>
#include <vector>

namespace genmult {

enum class NormMode { Op, S1, S2 };

inline std::string to_string(NormMode m) {
    switch (m) {
        case NormMode::Op: return "op";
        case NormMode::S1: return "s1";
        case NormMode::S2: return "s2";
    }
    return "unknown";
}

inline NormMode parse_norm_mode(const std::string& s) {
    if (s == "op") return NormMode::Op;
    if (s == "s1") return NormMode::S1;
    if (s == "s2") return NormMode::S2;
    throw std::invalid_argument("unknown norm mode '" + s + "'");
}

inline double norm_of(const CMatrix& a, NormMode mode) {
    const SingularSpectrum s = singular_values(a);
    switch (mode) {
        case NormMode::Op: return s.max();
        case NormMode::S1: return schatten_norm(s, 1.0);
        case NormMode::S2: return schatten_norm(s, 2.0);
    }
    return 0.0;
}

/// (sum_k ||a_k - b_k||^p)^(1/p)
inline double lp_sequence_distance(const SequenceSystem& a, const SequenceSystem& b, double p) {
    if (a.dim() != b.dim() || a.count() != b.count()) throw dimension_error("lp_sequence_distance: shape mismatch");
    if (!(p >= 1.0)) throw domain_error("lp_sequence_distance: p must be >= 1");
    double acc = 0.0;
    for (Eigen::Index k = 0; k < a.count(); ++k)
        acc += std::pow((a.synthesis_matrix().col(k) - b.synthesis_matrix().col(k)).norm(), p);
    return std::pow(acc, 1.0 / p);
}

struct SymbolStep {
    CMatrix symbol;
};
struct SynthesisStep {
    SequenceSystem sequence;
};
struct AnalysisStep {
    SequenceSystem sequence;
};

struct ScheduleEntry {
    int l = 0;
    std::variant<SymbolStep, SynthesisStep, AnalysisStep> change;
};

enum class PerturbedPart { Symbol, Synthesis, Analysis };

inline std::string to_string(PerturbedPart p) {
    switch (p) {
        case PerturbedPart::Symbol: return "symbol";
        case PerturbedPart::Synthesis: return "synthesis";
        case PerturbedPart::Analysis: return "analysis";
    }
    return "unknown";
}

struct unsupported_mode_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConvergenceExperiment {
    GeneralizedMultiplier base;
    std::vector<ScheduleEntry> schedule;
    std::vector<NormMode> norms{NormMode::Op, NormMode::S1, NormMode::S2};

    /// which part the schedule perturbs; mixing parts is unsupported
    [[nodiscard]] PerturbedPart perturbed_part() const {
        if (schedule.empty()) throw std::invalid_argument("experiment: empty schedule");
        const auto idx = schedule.front().change.index();
        for (const auto& e : schedule)
            if (e.change.index() != idx)
                throw unsupported_mode_error("experiment: schedule perturbs more than one part");
        return static_cast<PerturbedPart>(idx);
    }
};

struct ConvergenceRow {
    int l = 0;
    NormMode norm = NormMode::Op;
    double schedule_distance = 0.0;
    double multiplier_distance = 0.0;
    double envelope = 0.0;
    bool satisfied = false;

    /// measured / envelope (0 when the envelope vanishes)
    [[nodiscard]] double ratio() const { return envelope > 0.0 ? multiplier_distance / envelope : 0.0; }
};

struct ConvergenceReport {
    PerturbedPart part = PerturbedPart::Symbol;
    double factor = 0.0;  // sqrt(B_f B_g) or ||U|| sqrt(B)
    std::vector<ConvergenceRow> rows;

    [[nodiscard]] bool all_satisfied() const {
        for (const auto& r : rows)
            if (!r.satisfied) return false;
        return true;
    }

    [[nodiscard]] std::vector<ConvergenceRow> rows_for(NormMode mode) const {
        std::vector<ConvergenceRow> out;
        for (const auto& r : rows)
            if (r.norm == mode) out.push_back(r);
        return out;
    }

    /// envelope values strictly decrease along the schedule for every norm
    [[nodiscard]] bool envelope_decreasing() const {
        for (NormMode mode : {NormMode::Op, NormMode::S1, NormMode::S2}) {
            const auto r = rows_for(mode);
            for (std::size_t i = 1; i < r.size(); ++i)
                if (!(r[i].envelope < r[i - 1].envelope)) return false;
        }
        return true;
    }
};

namespace detail {

inline ConvergenceRow make_row(int l, NormMode mode, double sched, double dist, double factor,
                               const ToleranceConfig& tol) {
    ConvergenceRow row{l, mode, sched, dist, factor * sched, false};
    row.satisfied = dist <= row.envelope * (1.0 + tol.bound_slack) + tol.bound_slack;
    return row;
}

}  // namespace detail

inline ConvergenceReport symbol_convergence_sweep(const ConvergenceExperiment& exp,
                                                  const ToleranceConfig& tol = default_tolerances()) {
    if (exp.perturbed_part() != PerturbedPart::Symbol)
        throw unsupported_mode_error("symbol_convergence_sweep: schedule does not perturb the symbol");
    const GeneralizedMultiplier& base = exp.base;
    ConvergenceReport rep;
    rep.part = PerturbedPart::Symbol;
    rep.factor = std::sqrt(bessel_bound(base.analysis_seq()) * bessel_bound(base.synthesis_seq()));

    for (const auto& entry : exp.schedule) {
        const CMatrix& ul = std::get<SymbolStep>(entry.change).symbol;
        if (ul.rows() != base.symbol().rows() || ul.cols() != base.symbol().cols())
            throw dimension_error("symbol_convergence_sweep: schedule symbol shape drift");
        const GeneralizedMultiplier ml = build(Symbol(ul), base.synthesis_seq(), base.analysis_seq());
        const CMatrix du = ul - base.symbol().matrix();
        const CMatrix dm = ml.assembled() - base.assembled();
        for (NormMode mode : exp.norms)
            rep.rows.push_back(detail::make_row(entry.l, mode, norm_of(du, mode), norm_of(dm, mode), rep.factor, tol));
    }
    return rep;
}

///
/// Perturbs exactly one of the sequences. S1 rows use the l^1 sequence
/// distance, S2 and op rows the l^2 distance.
///
inline ConvergenceReport sequence_convergence_sweep(const ConvergenceExperiment& exp,
                                                    const ToleranceConfig& tol = default_tolerances()) {
    const PerturbedPart part = exp.perturbed_part();
    if (part == PerturbedPart::Symbol)
        throw unsupported_mode_error("sequence_convergence_sweep: schedule perturbs the symbol");
    const GeneralizedMultiplier& base = exp.base;
    ConvergenceReport rep;
    rep.part = part;
    const double u_op = operator_norm(base.symbol().matrix());
    // the fixed side supplies the Bessel bound
    const SequenceSystem& fixed = part == PerturbedPart::Synthesis ? base.analysis_seq() : base.synthesis_seq();
    rep.factor = u_op * std::sqrt(bessel_bound(fixed));

    for (const auto& entry : exp.schedule) {
        const SequenceSystem& moved = part == PerturbedPart::Synthesis
                                          ? std::get<SynthesisStep>(entry.change).sequence
                                          : std::get<AnalysisStep>(entry.change).sequence;
        const SequenceSystem& ref = part == PerturbedPart::Synthesis ? base.synthesis_seq() : base.analysis_seq();
        if (moved.dim() != ref.dim() || moved.count() != ref.count())
            throw dimension_error("sequence_convergence_sweep: schedule sequence shape drift");
        const GeneralizedMultiplier ml = part == PerturbedPart::Synthesis
                                             ? build(base.symbol(), moved, base.analysis_seq())
                                             : build(base.symbol(), base.synthesis_seq(), moved);
        const CMatrix dm = ml.assembled() - base.assembled();
        const double l1 = lp_sequence_distance(moved, ref, 1.0);
        const double l2 = lp_sequence_distance(moved, ref, 2.0);
        for (NormMode mode : exp.norms)
            rep.rows.push_back(
                detail::make_row(entry.l, mode, mode == NormMode::S1 ? l1 : l2, norm_of(dm, mode), rep.factor, tol));
    }
    return rep;
}

inline ConvergenceReport run_experiment(const ConvergenceExperiment& exp, const ToleranceConfig& tol = default_tolerances()) {
    return exp.perturbed_part() == PerturbedPart::Symbol ? symbol_convergence_sweep(exp, tol)
                                                         : sequence_convergence_sweep(exp, tol);
}

}  // namespace genmult

#endif  // GENMULT_PERTURBATION_HPP
