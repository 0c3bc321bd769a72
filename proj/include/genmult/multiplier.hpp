#ifndef GENMULT_MULTIPLIER_HPP
#define GENMULT_MULTIPLIER_HPP

//
// Generalized Bessel multipliers M = D_g U C_f and the checks of their
// boundedness, adjoint, Schatten-class, positivity and composition
// properties.
//

#include "genmult/certificate.hpp"
#include "genmult/numerics.hpp"
#include "genmult/sequences.hpp"
#include "genmult/symbols.hpp"

#include <vector>

namespace genmult {

///
/// The triple (U, {g_k}, {f_k}) with the assembled d2 x d1 matrix
/// D_g U D_f^*. Argument order follows M_{U, synthesis, analysis}.
///
class GeneralizedMultiplier {
public:
    GeneralizedMultiplier(Symbol symbol, SequenceSystem synthesis, SequenceSystem analysis)
        : symbol_(std::move(symbol)), synthesis_(std::move(synthesis)), analysis_(std::move(analysis)) {
        if (symbol_.cols() != analysis_.count())
            throw dimension_error("multiplier: symbol columns do not match analysis count");
        if (symbol_.rows() != synthesis_.count())
            throw dimension_error("multiplier: symbol rows do not match synthesis count");
        assembled_ = synthesis_.synthesis_matrix() * symbol_.matrix() * analysis_.analysis_matrix();
    }

    [[nodiscard]] const Symbol& symbol() const { return symbol_; }
    [[nodiscard]] const SequenceSystem& synthesis_seq() const { return synthesis_; }
    [[nodiscard]] const SequenceSystem& analysis_seq() const { return analysis_; }
    [[nodiscard]] const CMatrix& assembled() const { return assembled_; }

    /// D_g(U(C_f f)) evaluated stage by stage
    [[nodiscard]] CVector apply(const CVector& f) const {
        return synthesis_.synthesis(symbol_.matrix() * analysis_.analysis(f));
    }

    /// rounding magnitude of the assembly, ||D_g||_F ||U||_F ||D_f||_F (at least 1)
    [[nodiscard]] double magnitude() const {
        return std::max(1.0, synthesis_.frobenius() * symbol_.matrix().norm() * analysis_.frobenius());
    }

private:
    Symbol symbol_;
    SequenceSystem synthesis_;
    SequenceSystem analysis_;
    CMatrix assembled_;
};

inline GeneralizedMultiplier build(const Symbol& u, const SequenceSystem& g, const SequenceSystem& f) {
    return GeneralizedMultiplier(u, g, f);
}

/// (M_{U,g,f})^* = M_{U^*,f,g}
inline Certificate adjoint_check(const GeneralizedMultiplier& m, const ToleranceConfig& tol = default_tolerances()) {
    const GeneralizedMultiplier swapped = build(adjoint(m.symbol()), m.analysis_seq(), m.synthesis_seq());
    const double residual = (m.assembled().adjoint() - swapped.assembled()).norm();
    Certificate c = identity_certificate("thm-3.2(2) adjoint", residual, tol.eq_abs * m.magnitude());
    c.context["scale"] = m.magnitude();
    return c;
}

///
/// ||M||_X <= sqrt(B_f B_g) ||U||_X for X in {op, S1, S2}, with optimal
/// Bessel bounds.
///
inline std::vector<Certificate> norm_certificates(const GeneralizedMultiplier& m,
                                                  const ToleranceConfig& tol = default_tolerances()) {
    const double bf = bessel_bound(m.analysis_seq());
    const double bg = bessel_bound(m.synthesis_seq());
    const double factor = std::sqrt(bf * bg);
    const SingularSpectrum sm = singular_values(m.assembled());
    const SymbolNorms un = symbol_norms(m.symbol());

    auto make = [&](const char* claim, double lhs, double unorm) {
        Certificate c = inequality_certificate(claim, lhs, factor * unorm, tol.bound_slack);
        c.context["B_f"] = bf;
        c.context["B_g"] = bg;
        c.context["symbol_norm"] = unorm;
        return c;
    };
    return {make("thm-3.2(1) op", sm.max(), un.op),
            make("thm-3.2(4) S1", schatten_norm(sm, 1.0), un.s1),
            make("thm-3.2(4) S2", schatten_norm(sm, 2.0), un.s2)};
}

inline bool is_positive_semidefinite(const CMatrix& u, const ToleranceConfig& tol = default_tolerances()) {
    if (u.rows() != u.cols()) return false;
    if (hermitian_defect(u) > tol.eq_abs * operand_scale(u)) return false;
    return hermitian_eig(u, tol).values(0) >= -tol.eq_abs * operand_scale(u);
}

/// U positive => M_{U,f,f} positive
inline Certificate positivity_check(const Symbol& u, const SequenceSystem& f,
                                    const ToleranceConfig& tol = default_tolerances()) {
    if (!is_positive_semidefinite(u.matrix(), tol))
        throw precondition_error("positivity_check: symbol is not positive semidefinite");
    const GeneralizedMultiplier m = build(u, f, f);
    const double lambda_min = hermitian_part_eigenvalues(m.assembled())(0);
    // certificate in the form -lambda_min <= eq_abs * scale
    Certificate c = identity_certificate("thm-3.2(5) positivity", -lambda_min, tol.eq_abs * m.magnitude());
    c.context["lambda_min"] = lambda_min;
    c.context["scale"] = m.magnitude();
    return c;
}

///
/// K sqrt(A A') <= ||M||_op for Riesz bases f (bounds A,B) and g (A',B'),
/// K = max_n ||U e_n||.
///
inline Certificate riesz_lower_bound(const GeneralizedMultiplier& m, const ToleranceConfig& tol = default_tolerances()) {
    if (!classify(m.analysis_seq(), tol).is_riesz() || !classify(m.synthesis_seq(), tol).is_riesz())
        throw precondition_error("riesz_lower_bound: both sequences must be Riesz bases");
    const double k = max_column_norm(m.symbol().matrix());
    const double a = riesz_bounds(m.analysis_seq()).lower;
    const double a2 = riesz_bounds(m.synthesis_seq()).lower;
    const double lhs = k * std::sqrt(a * a2);
    const double norm = operator_norm(m.assembled());
    Certificate c = inequality_certificate("prop-3.7 riesz lower bound", lhs, norm, tol.bound_slack);
    c.context["K"] = k;
    c.context["A_f"] = a;
    c.context["A_g"] = a2;
    c.context["ratio"] = norm > 0.0 ? lhs / norm : 0.0;
    return c;
}

struct Composition {
    GeneralizedMultiplier product;
    Certificate residual;
};

///
/// M_{U1,g,f} o M_{U2,l,h} = M_{U1 U2, g, h} when {l_k} and {f_k} are
/// biorthogonal. Throws precondition_error (with the deviation) otherwise.
///
inline Composition compose_biorthogonal(const GeneralizedMultiplier& outer, const GeneralizedMultiplier& inner,
                                        const ToleranceConfig& tol = default_tolerances()) {
    const SequenceSystem& f = outer.analysis_seq();
    const SequenceSystem& l = inner.synthesis_seq();
    if (f.dim() != l.dim() || f.count() != l.count())
        throw dimension_error("compose_biorthogonal: analysis of outer and synthesis of inner differ in shape");
    const double defect = biorthogonality_defect(l, f);
    if (defect > tol.eq_abs * std::max(1.0, f.frobenius() * l.frobenius()))
        throw precondition_error("compose_biorthogonal: sequences not biorthogonal, max deviation " +
                                 std::to_string(defect));

    GeneralizedMultiplier product =
        build(Symbol(outer.symbol().matrix() * inner.symbol().matrix()), outer.synthesis_seq(), inner.analysis_seq());
    const double residual = (outer.assembled() * inner.assembled() - product.assembled()).norm();
    const double scale = std::max(1.0, outer.magnitude() * inner.magnitude());
    Certificate c = identity_certificate("prop-3.8 composition", residual, tol.eq_abs * scale);
    c.context["biorthogonality_defect"] = defect;
    c.context["scale"] = scale;
    return {std::move(product), std::move(c)};
}

inline SingularSpectrum singular_profile(const GeneralizedMultiplier& m) {
    return singular_values(m.assembled());
}

}  // namespace genmult

#endif  // GENMULT_MULTIPLIER_HPP
