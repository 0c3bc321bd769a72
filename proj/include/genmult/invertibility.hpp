#ifndef GENMULT_INVERTIBILITY_HPP
#define GENMULT_INVERTIBILITY_HPP

//
// Invertibility of generalized multipliers: the Riesz inversion formula,
// frame conditions forced by invertible or bounded-below multipliers,
// reproducing pairs and a perturbation criterion for invertibility.
//
// Checks whose hypotheses quantify over all f in H distinguish between
// "certified" (a sufficient operator-norm certificate holds) and "probed"
// (the hypothesis held on a finite probe set only). Conclusions are asserted
// only when certified.
//

#include "genmult/certificate.hpp"
#include "genmult/multiplier.hpp"
#include "genmult/random.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace genmult {

struct Hypothesis {
    std::string name;
    bool holds = false;
    double value = 0.0;
    double threshold = 0.0;
};

enum class VerdictStatus { Pass, Fail, NotApplicable };

inline std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Pass: return "pass";
        case VerdictStatus::Fail: return "fail";
        case VerdictStatus::NotApplicable: return "not_applicable";
    }
    return "unknown";
}

struct Verdict {
    std::string proposition;
    std::vector<Hypothesis> hypotheses;
    std::string evidence;  // "exact", "certified", "probed" or "none"
    bool conclusion_checked = false;
    bool conclusion_holds = false;
    std::map<std::string, double> margins;

    [[nodiscard]] bool hypotheses_hold() const {
        for (const auto& h : hypotheses)
            if (!h.holds) return false;
        return true;
    }

    [[nodiscard]] VerdictStatus status() const {
        if (!hypotheses_hold()) return VerdictStatus::NotApplicable;
        if (conclusion_checked && !conclusion_holds) return VerdictStatus::Fail;
        return VerdictStatus::Pass;
    }
};

enum class InversionMethod { RieszFormula, DirectSolve };

struct InvertibilityReport {
    double sigma_min = 0.0;
    bool invertible = false;
    double inverse_residual = 0.0;
    InversionMethod method = InversionMethod::DirectSolve;
    std::optional<double> derived_lower_bound_f;
    std::optional<double> derived_lower_bound_g;
    std::vector<Certificate> certificates;

    [[nodiscard]] bool all_pass() const {
        for (const auto& c : certificates)
            if (!c.pass) return false;
        return true;
    }
};

/// sigma_min > invert_floor * sigma_max for a square assembled matrix
inline bool multiplier_invertible(const GeneralizedMultiplier& m, const ToleranceConfig& tol = default_tolerances()) {
    return is_invertible(m.assembled(), tol);
}

struct RieszInverse {
    bool symbol_invertible = false;
    bool multiplier_invertible = false;
    double sigma_min_symbol = 0.0;
    double sigma_min_multiplier = 0.0;
    std::optional<GeneralizedMultiplier> inverse;  // M_{U^-1, dual f, dual g}
    double right_residual = 0.0;                   // ||M M^-1 - I||_op
    double left_residual = 0.0;                    // ||M^-1 M - I||_op

    /// symbol invertible <=> multiplier invertible
    [[nodiscard]] bool consistent() const { return symbol_invertible == multiplier_invertible; }
};

///
/// For Riesz bases f, g: U invertible iff M_{U,g,f} invertible, and then
/// M^{-1} = M_{U^{-1}, f~, g~} with the biorthogonal duals.
///
inline RieszInverse riesz_inverse(const GeneralizedMultiplier& m, const ToleranceConfig& tol = default_tolerances()) {
    if (!classify(m.analysis_seq(), tol).is_riesz() || !classify(m.synthesis_seq(), tol).is_riesz())
        throw precondition_error("riesz_inverse: both sequences must be Riesz bases");

    RieszInverse out;
    out.sigma_min_symbol = smallest_singular(m.symbol().matrix());
    out.sigma_min_multiplier = smallest_singular(m.assembled());
    out.symbol_invertible = is_invertible(m.symbol().matrix(), tol);
    out.multiplier_invertible = multiplier_invertible(m, tol);
    if (!out.symbol_invertible) return out;

    GeneralizedMultiplier inv = build(invert(m.symbol(), tol), biorthogonal_dual(m.analysis_seq(), tol),
                                      biorthogonal_dual(m.synthesis_seq(), tol));
    const auto d2 = m.assembled().rows();
    const auto d1 = m.assembled().cols();
    out.right_residual = operator_norm(m.assembled() * inv.assembled() - CMatrix::Identity(d2, d2));
    out.left_residual = operator_norm(inv.assembled() * m.assembled() - CMatrix::Identity(d1, d1));
    out.inverse.emplace(std::move(inv));
    return out;
}

///
/// M invertible and f Bessel with bound B => {g_k} satisfies the lower
/// frame condition with constant (||U|| ||M^-1||)^-2 / B.
///
inline InvertibilityReport lower_frame_from_invertible(const GeneralizedMultiplier& m,
                                                       const ToleranceConfig& tol = default_tolerances()) {
    if (!multiplier_invertible(m, tol))
        throw precondition_error("lower_frame_from_invertible: multiplier is not invertible");
    InvertibilityReport r;
    r.sigma_min = smallest_singular(m.assembled());
    r.invertible = true;
    r.method = InversionMethod::DirectSolve;

    const CMatrix inv = inverse(m.assembled(), tol);
    const auto d = m.assembled().rows();
    r.inverse_residual = operator_norm(m.assembled() * inv - CMatrix::Identity(d, d));

    const double u_norm = operator_norm(m.symbol().matrix());
    const double inv_norm = operator_norm(inv);
    const double b = bessel_bound(m.analysis_seq());
    const double derived = 1.0 / (std::pow(u_norm * inv_norm, 2) * b);
    const double actual = frame_bounds(m.synthesis_seq()).lower;
    r.derived_lower_bound_g = derived;

    Certificate c = inequality_certificate("prop-4.2 lower frame bound", derived, actual, tol.bound_slack);
    c.context["U_op"] = u_norm;
    c.context["M_inv_op"] = inv_norm;
    c.context["B_f"] = b;
    r.certificates.push_back(std::move(c));
    return r;
}

///
/// g Riesz, U bijective, f Bessel: M_{U,g,f} invertible iff f is a Riesz
/// basis. The verdict's conclusion is the equivalence itself.
///
inline Verdict riesz_iff_corollary(const SequenceSystem& g, const SequenceSystem& f, const Symbol& u,
                                   const ToleranceConfig& tol = default_tolerances()) {
    if (!classify(g, tol).is_riesz()) throw precondition_error("riesz_iff_corollary: g is not a Riesz basis");
    if (!is_invertible(u.matrix(), tol)) throw precondition_error("riesz_iff_corollary: symbol is not bijective");
    const GeneralizedMultiplier m = build(u, g, f);

    Verdict v;
    v.proposition = "cor-4.3";
    v.evidence = "exact";
    v.hypotheses.push_back({"g Riesz basis", true, 0.0, 0.0});
    v.hypotheses.push_back({"U bijective", true, smallest_singular(u.matrix()), 0.0});
    const bool inv = multiplier_invertible(m, tol);
    const bool riesz = classify(f, tol).is_riesz();
    v.conclusion_checked = true;
    v.conclusion_holds = inv == riesz;
    v.margins["multiplier_invertible"] = inv ? 1.0 : 0.0;
    v.margins["f_riesz"] = riesz ? 1.0 : 0.0;
    v.margins["sigma_min_M"] = m.assembled().rows() == m.assembled().cols() ? smallest_singular(m.assembled()) : 0.0;
    return v;
}

///
/// M bounded below with constant C = sigma_min and g Bessel with bound B:
/// lambda_min(S_f) >= C^2 / (B ||U||^2). C below the floor yields no
/// certificate.
///
inline InvertibilityReport bounded_below_frame_bound(const GeneralizedMultiplier& m,
                                                     const ToleranceConfig& tol = default_tolerances()) {
    InvertibilityReport r;
    const SingularSpectrum s = singular_values(m.assembled());
    const double c = lower_bound_constant(m.assembled());
    r.sigma_min = c;
    r.invertible = m.assembled().rows() == m.assembled().cols() && s.max() > 0.0 && c > tol.invert_floor * s.max();
    if (!(s.max() > 0.0) || !(c > tol.invert_floor * s.max())) return r;

    const double b = bessel_bound(m.synthesis_seq());
    const double u_norm = operator_norm(m.symbol().matrix());
    const double derived = c * c / (b * u_norm * u_norm);
    r.derived_lower_bound_f = derived;
    Certificate cert = inequality_certificate("prop-3.5(1) frame bound", derived, frame_bounds(m.analysis_seq()).lower,
                                              tol.bound_slack);
    cert.context["C"] = c;
    cert.context["B_g"] = b;
    cert.context["U_op"] = u_norm;
    r.certificates.push_back(std::move(cert));
    return r;
}

namespace detail {

/// random unit probes plus eigenvectors of the Hermitian and skew parts
inline std::vector<CVector> probe_set(const CMatrix& m, std::size_t random_probes, std::uint64_t seed) {
    std::vector<CVector> probes;
    const auto d = m.cols();
    Rng rng(seed);
    for (std::size_t i = 0; i < random_probes; ++i) probes.push_back(unit_vector(d, rng));
    if (m.rows() == m.cols()) {
        const CMatrix herm = 0.5 * (m + m.adjoint());
        const CMatrix skew = Complex(0.0, -0.5) * (m - m.adjoint());
        for (const CMatrix* part : {&herm, &skew}) {
            Eigen::SelfAdjointEigenSolver<CMatrix> es(*part);
            for (Eigen::Index j = 0; j < d; ++j) probes.push_back(es.eigenvectors().col(j));
        }
    }
    Eigen::JacobiSVD<CMatrix> dec(m, Eigen::ComputeFullV);
    for (Eigen::Index j = 0; j < d; ++j) probes.push_back(dec.matrixV().col(j));
    return probes;
}

/// lower frame bounds forced on f and g once ||M h|| >= c ||h|| and ||M^* h|| >= c ||h||
inline void frame_conclusions(Verdict& v, const GeneralizedMultiplier& m, double c, bool adjoint_too,
                              const ToleranceConfig& tol) {
    const double u2 = std::pow(operator_norm(m.symbol().matrix()), 2);
    const double bf = bessel_bound(m.analysis_seq());
    const double bg = bessel_bound(m.synthesis_seq());
    const double lf = frame_bounds(m.analysis_seq()).lower;
    const double derived_f = c * c / (bg * u2);
    v.margins["derived_lower_f"] = derived_f;
    v.margins["lambda_min_f"] = lf;
    bool ok = lf >= derived_f * (1.0 - tol.bound_slack) - tol.bound_slack;
    if (adjoint_too) {
        const double lg = frame_bounds(m.synthesis_seq()).lower;
        const double derived_g = c * c / (bf * u2);
        v.margins["derived_lower_g"] = derived_g;
        v.margins["lambda_min_g"] = lg;
        ok = ok && lg >= derived_g * (1.0 - tol.bound_slack) - tol.bound_slack;
    }
    v.conclusion_holds = v.conclusion_holds && ok;
}

}  // namespace detail

///
/// Hypothesis A ||f||^2 <= |<M f, f>| for all f implies both sequences are
/// frames. Certified when the Hermitian part of M is definite with
/// smallest |eigenvalue| >= A (then |<Mf,f>| >= |<Hf,f>| >= A||f||^2);
/// otherwise evaluated on probes.
///
inline Verdict sesquilinear_lower_check(const GeneralizedMultiplier& m, double a, std::size_t random_probes = 64,
                                        std::uint64_t seed = 0, const ToleranceConfig& tol = default_tolerances()) {
    const CMatrix& mat = m.assembled();
    if (mat.rows() != mat.cols()) throw dimension_error("sesquilinear_lower_check: multiplier is not square");
    if (!(a > 0.0)) throw domain_error("sesquilinear_lower_check: A must be positive");

    Verdict v;
    v.proposition = "prop-3.5(2)";
    const RVector h = hermitian_part_eigenvalues(mat);
    const double hmin = h(0);
    const double hmax = h(h.size() - 1);
    const bool definite = hmin > 0.0 || hmax < 0.0;
    const double herm_gap = definite ? std::min(std::abs(hmin), std::abs(hmax)) : 0.0;
    const double slack = tol.bound_slack * std::max(1.0, a);

    double probe_min = std::numeric_limits<double>::infinity();
    for (const CVector& f : detail::probe_set(mat, random_probes, seed))
        probe_min = std::min(probe_min, std::abs(inner(mat * f, f)) / f.squaredNorm());

    v.margins["A"] = a;
    v.margins["probe_min"] = probe_min;
    v.margins["hermitian_gap"] = herm_gap;
    if (definite && herm_gap + slack >= a) {
        v.evidence = "certified";
        v.hypotheses.push_back({"A||f||^2 <= |<Mf,f>|", true, herm_gap, a});
    } else {
        v.evidence = "probed";
        v.hypotheses.push_back({"A||f||^2 <= |<Mf,f>|", probe_min + slack >= a, probe_min, a});
    }
    if (!v.hypotheses_hold() || v.evidence != "certified") return v;

    // A||f||^2 <= |<Mf,f>| <= ||Mf|| ||f|| gives the bounded-below constant A for M and M^*
    v.conclusion_checked = true;
    v.conclusion_holds = is_frame(m.analysis_seq(), tol) && is_frame(m.synthesis_seq(), tol);
    detail::frame_conclusions(v, m, a, true, tol);
    return v;
}

///
/// ||f - Mf|| <= l1 ||f|| + l2 ||Mf|| (l1 < 1, l2 > -1) implies
/// ||Mf|| >= (1 - l1)/(1 + l2) ||f||, so f is a frame; with l2 = 0 and
/// l1 in [0,1) the adjoint inherits the bound and g is a frame too.
/// Certified via ||I - M||_op <= l1 when l2 >= 0.
///
inline Verdict identity_perturbation_check(const GeneralizedMultiplier& m, double lambda1, double lambda2,
                                           std::size_t random_probes = 64, std::uint64_t seed = 0,
                                           const ToleranceConfig& tol = default_tolerances()) {
    if (!(lambda1 < 1.0)) throw domain_error("identity_perturbation_check: lambda1 must be < 1");
    if (!(lambda2 > -1.0)) throw domain_error("identity_perturbation_check: lambda2 must be > -1");
    const CMatrix& mat = m.assembled();
    if (mat.rows() != mat.cols()) throw dimension_error("identity_perturbation_check: multiplier is not square");

    Verdict v;
    v.proposition = lambda2 == 0.0 && lambda1 >= 0.0 ? "prop-3.6(2)" : "prop-3.6(1)";
    const auto d = mat.rows();
    const double dist = operator_norm(CMatrix::Identity(d, d) - mat);
    const double slack = tol.bound_slack;

    double worst = -std::numeric_limits<double>::infinity();
    for (const CVector& f : detail::probe_set(mat, random_probes, seed)) {
        const CVector mf = mat * f;
        worst = std::max(worst, (f - mf).norm() - lambda1 * f.norm() - lambda2 * mf.norm());
    }
    v.margins["identity_distance"] = dist;
    v.margins["probe_worst_excess"] = worst;

    if (lambda2 >= 0.0 && dist <= lambda1 + slack) {
        v.evidence = "certified";
        v.hypotheses.push_back({"||f - Mf|| <= l1||f|| + l2||Mf||", true, dist, lambda1});
    } else {
        v.evidence = "probed";
        v.hypotheses.push_back({"||f - Mf|| <= l1||f|| + l2||Mf||", worst <= slack, worst, 0.0});
    }
    if (!v.hypotheses_hold() || v.evidence != "certified") return v;

    const double c = (1.0 - lambda1) / (1.0 + lambda2);
    const double smin = smallest_singular(mat);
    v.margins["sigma_min"] = smin;
    v.margins["guaranteed"] = c;
    v.conclusion_checked = true;
    v.conclusion_holds = smin >= c - slack && is_frame(m.analysis_seq(), tol);
    const bool part_two = lambda2 == 0.0 && lambda1 >= 0.0;
    if (part_two) {
        // ||I - M^*|| = ||I - M||, so M^* obeys the same bound
        const double smin_adj = smallest_singular(mat.adjoint());
        v.margins["sigma_min_adjoint"] = smin_adj;
        v.conclusion_holds = v.conclusion_holds && smin_adj >= c - slack && is_frame(m.synthesis_seq(), tol);
    }
    detail::frame_conclusions(v, m, c, part_two, tol);
    return v;
}

struct ReproducingPair {
    bool reproducing = false;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
};

///
/// (f, g) is a reproducing pair iff S = D_g C_f, the multiplier with
/// U = I, is boundedly invertible.
///
inline ReproducingPair reproducing_pair_check(const SequenceSystem& f, const SequenceSystem& g,
                                              const ToleranceConfig& tol = default_tolerances()) {
    if (f.dim() != g.dim()) throw dimension_error("reproducing_pair_check: dimension mismatch");
    if (f.count() != g.count()) throw dimension_error("reproducing_pair_check: count mismatch");
    const CMatrix s = g.synthesis_matrix() * f.analysis_matrix();
    const SingularSpectrum sp = singular_values(s);
    return {sp.max() > 0.0 && sp.min() > tol.invert_floor * sp.max(), sp.min(), sp.max()};
}

///
/// Frame f with bounds (A,B), sequence g and symbol U. If
/// mu* = lambda_max(S_{f-g}) < (1/B)((AB^2 - A^2 B)/(A^2 + B^2))^2 and
/// ||U - I|| < A^2/B^2, then g is a frame and M_{U,f,g} (synthesis f,
/// analysis g) is invertible. Tight frames make the mu-interval empty and
/// the verdict is "not applicable".
///
inline Verdict perturbation_invertibility(const SequenceSystem& f, const SequenceSystem& g, const Symbol& u,
                                          const ToleranceConfig& tol = default_tolerances()) {
    if (f.dim() != g.dim() || f.count() != g.count())
        throw dimension_error("perturbation_invertibility: f and g differ in shape");
    if (u.rows() != u.cols() || u.rows() != f.count())
        throw dimension_error("perturbation_invertibility: symbol must be count x count");
    if (!is_frame(f, tol)) throw precondition_error("perturbation_invertibility: f is not a frame");

    const FrameBounds fb = frame_bounds(f);
    const double a = fb.lower;
    const double b = fb.upper;
    const double mu_bound = std::pow((a * b * b - a * a * b) / (a * a + b * b), 2) / b;
    const SequenceSystem diff(f.synthesis_matrix() - g.synthesis_matrix());
    const double mu = bessel_bound(diff);
    const auto n = f.count();
    const double u_dist = operator_norm(u.matrix() - CMatrix::Identity(n, n));
    const double u_bound = a * a / (b * b);

    Verdict v;
    v.proposition = "prop-4.4";
    v.evidence = "exact";
    // the interval (0, mu_bound) is empty for tight frames; rounding must not reopen it
    const bool tight = b - a <= tol.eq_abs * b;
    v.hypotheses.push_back({"0 <= mu* < mu_bound", !tight && mu < mu_bound, mu, mu_bound});
    v.hypotheses.push_back({"||U - I|| < A^2/B^2", u_dist < u_bound, u_dist, u_bound});
    v.margins["A"] = a;
    v.margins["B"] = b;
    v.margins["mu"] = mu;
    v.margins["mu_bound"] = mu_bound;
    v.margins["U_distance"] = u_dist;
    v.margins["tight"] = tight ? 1.0 : 0.0;
    if (!v.hypotheses_hold()) return v;

    const GeneralizedMultiplier m = build(u, f, g);
    const GeneralizedMultiplier mff = build(u, f, f);
    const CMatrix sf = f.frame_operator();
    const double sigma = smallest_singular(m.assembled());
    const double u_norm = operator_norm(u.matrix());

    // intermediate steps of the argument
    const double step1 = operator_norm(mff.assembled() - sf);
    const double step2 = operator_norm(m.assembled() - mff.assembled());
    const double step2_bound = u_norm * std::sqrt(b) * std::sqrt(mu);
    const double rel = tol.bound_slack;

    v.margins["sigma_min_M"] = sigma;
    v.margins["MUff_minus_S"] = step1;
    v.margins["MUff_minus_S_bound"] = a * a / b;
    v.margins["MUfg_minus_MUff"] = step2;
    v.margins["MUfg_minus_MUff_bound"] = step2_bound;

    v.conclusion_checked = true;
    v.conclusion_holds = is_frame(g, tol) && multiplier_invertible(m, tol) &&
                         sigma > tol.invert_floor * m.magnitude() && step1 < a * a / b * (1.0 + rel) &&
                         step2 <= step2_bound * (1.0 + rel) + tol.eq_abs * m.magnitude();
    return v;
}

}  // namespace genmult

#endif  // GENMULT_INVERTIBILITY_HPP
