#ifndef GENMULT_SEQUENCES_HPP
#define GENMULT_SEQUENCES_HPP

//
// Finite sequence systems {f_k} in C^d: analysis/synthesis/frame operators,
// optimal frame and Riesz bounds, classification and dual systems.
//

#include "genmult/numerics.hpp"

#include <string>
#include <vector>

namespace genmult {

///
/// n vectors in C^d stored as the columns of the d x n synthesis matrix D.
/// The analysis operator is D^*, the frame operator D D^*.
///
class SequenceSystem {
public:
    explicit SequenceSystem(CMatrix synthesis) : synthesis_(std::move(synthesis)) {
        require_nonempty(synthesis_, "SequenceSystem");
        require_finite(synthesis_, "SequenceSystem");
    }

    static SequenceSystem from_vectors(const std::vector<CVector>& vectors) {
        if (vectors.empty()) throw dimension_error("SequenceSystem: at least one vector required");
        const auto d = vectors.front().size();
        CMatrix m(d, static_cast<Eigen::Index>(vectors.size()));
        for (std::size_t k = 0; k < vectors.size(); ++k) {
            if (vectors[k].size() != d) throw dimension_error("SequenceSystem: vectors of unequal length");
            m.col(static_cast<Eigen::Index>(k)) = vectors[k];
        }
        return SequenceSystem(std::move(m));
    }

    /// canonical basis of C^d
    static SequenceSystem canonical_basis(Eigen::Index d) {
        return SequenceSystem(CMatrix::Identity(d, d));
    }

    [[nodiscard]] Eigen::Index dim() const { return synthesis_.rows(); }
    [[nodiscard]] Eigen::Index count() const { return synthesis_.cols(); }
    [[nodiscard]] CVector vector(Eigen::Index k) const { return synthesis_.col(k); }
    [[nodiscard]] const CMatrix& synthesis_matrix() const { return synthesis_; }
    [[nodiscard]] CMatrix analysis_matrix() const { return synthesis_.adjoint(); }

    /// (<f, f_1>, ..., <f, f_n>)
    [[nodiscard]] CVector analysis(const CVector& f) const {
        if (f.size() != dim()) throw dimension_error("analysis: vector length does not match dim");
        return synthesis_.adjoint() * f;
    }

    /// sum_k c_k f_k
    [[nodiscard]] CVector synthesis(const CVector& c) const {
        if (c.size() != count()) throw dimension_error("synthesis: coefficient length does not match count");
        return synthesis_ * c;
    }

    [[nodiscard]] CMatrix frame_operator() const { return synthesis_ * synthesis_.adjoint(); }

    /// Gram matrix G_{jk} = <f_k, f_j>, i.e. D^* D
    [[nodiscard]] CMatrix gram() const { return synthesis_.adjoint() * synthesis_; }

    /// Frobenius norm of D; also the l^2 norm of (||f_k||)_k
    [[nodiscard]] double frobenius() const { return synthesis_.norm(); }

private:
    CMatrix synthesis_;
};

struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;
};

enum class SequenceKind { BesselOnly, Frame, RieszBasis, OrthonormalBasis };

inline std::string to_string(SequenceKind k) {
    switch (k) {
        case SequenceKind::BesselOnly: return "BesselOnly";
        case SequenceKind::Frame: return "Frame";
        case SequenceKind::RieszBasis: return "RieszBasis";
        case SequenceKind::OrthonormalBasis: return "OrthonormalBasis";
    }
    return "unknown";
}

struct SequenceClass {
    SequenceKind kind = SequenceKind::BesselOnly;
    bool overcomplete = false;
    bool satisfies_lower_frame_condition = false;

    [[nodiscard]] bool is_frame() const { return kind != SequenceKind::BesselOnly; }
    [[nodiscard]] bool is_riesz() const {
        return kind == SequenceKind::RieszBasis || kind == SequenceKind::OrthonormalBasis;
    }
};

/// optimal constants: extreme eigenvalues of the frame operator
inline FrameBounds frame_bounds(const SequenceSystem& seq) {
    const RVector ev = hermitian_eig(seq.frame_operator()).values;
    return {std::max(ev(0), 0.0), std::max(ev(ev.size() - 1), 0.0)};
}

/// optimal Bessel bound B
inline double bessel_bound(const SequenceSystem& seq) {
    return frame_bounds(seq).upper;
}

///
/// Optimal Riesz bounds: extreme eigenvalues of the Gram matrix D^* D.
/// For n > d the lower value is 0, as no Riesz inequality holds.
///
inline FrameBounds riesz_bounds(const SequenceSystem& seq) {
    const RVector ev = hermitian_eig(seq.gram()).values;
    return {std::max(ev(0), 0.0), std::max(ev(ev.size() - 1), 0.0)};
}

inline bool is_frame(const SequenceSystem& seq, const ToleranceConfig& tol = default_tolerances()) {
    const FrameBounds b = frame_bounds(seq);
    return b.upper > 0.0 && b.lower > tol.rank_tol * b.upper;
}

inline SequenceClass classify(const SequenceSystem& seq, const ToleranceConfig& tol = default_tolerances()) {
    SequenceClass out;
    const bool frame = is_frame(seq, tol);
    out.satisfies_lower_frame_condition = frame;
    if (!frame) return out;

    out.kind = SequenceKind::Frame;
    out.overcomplete = seq.count() > seq.dim();
    if (seq.count() != seq.dim()) return out;

    out.kind = SequenceKind::RieszBasis;
    const auto n = seq.count();
    const CMatrix g = seq.gram();
    if ((g - CMatrix::Identity(n, n)).norm() <= tol.eq_abs * std::max(1.0, std::sqrt(static_cast<double>(n))))
        out.kind = SequenceKind::OrthonormalBasis;
    return out;
}

///
/// Canonical dual {S^{-1} f_k}. Its frame bounds are (1/B, 1/A) and
/// D_f C_dual = I.
///
inline SequenceSystem canonical_dual(const SequenceSystem& seq, const ToleranceConfig& tol = default_tolerances()) {
    if (!is_frame(seq, tol)) throw precondition_error("canonical_dual: sequence is not a frame");
    return SequenceSystem(inverse(seq.frame_operator(), tol) * seq.synthesis_matrix());
}

/// unique {g_k} with <f_k, g_j> = delta_kj; requires a Riesz basis
inline SequenceSystem biorthogonal_dual(const SequenceSystem& seq, const ToleranceConfig& tol = default_tolerances()) {
    if (!classify(seq, tol).is_riesz()) throw precondition_error("biorthogonal_dual: sequence is not a Riesz basis");
    // G^* F = I  =>  G = F^{-*}
    return SequenceSystem(inverse(seq.synthesis_matrix(), tol).adjoint());
}

/// max_{k,j} |<f_k, g_j> - delta_kj|
inline double biorthogonality_defect(const SequenceSystem& f, const SequenceSystem& g) {
    if (f.dim() != g.dim() || f.count() != g.count())
        throw dimension_error("biorthogonality_defect: shape mismatch");
    const auto n = f.count();
    // entry (j,k) = g_j^* f_k = <f_k, g_j>
    const CMatrix cross = g.synthesis_matrix().adjoint() * f.synthesis_matrix();
    return (cross - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

/// residual ||D_f C_g - I||_F of the reconstruction f = sum <f, g_k> f_k
inline double dual_residual(const SequenceSystem& f, const SequenceSystem& g) {
    if (f.dim() != g.dim() || f.count() != g.count()) throw dimension_error("is_dual_pair: shape mismatch");
    const auto d = f.dim();
    return (f.synthesis_matrix() * g.synthesis_matrix().adjoint() - CMatrix::Identity(d, d)).norm();
}

inline bool is_dual_pair(const SequenceSystem& f, const SequenceSystem& g,
                         const ToleranceConfig& tol = default_tolerances()) {
    const double scale = std::max(1.0, f.frobenius() * g.frobenius());
    return dual_residual(f, g) <= tol.eq_abs * scale;
}

///
/// A dual of an overcomplete frame different from the canonical one:
/// g_k = S^{-1} f_k + conj(x_k) u, where x spans part of ker D_f, so that
/// D_f C_g = I still holds. `direction` is u in C^d.
///
inline SequenceSystem alternative_dual(const SequenceSystem& seq, const CVector& direction,
                                       const ToleranceConfig& tol = default_tolerances()) {
    if (direction.size() != seq.dim()) throw dimension_error("alternative_dual: direction length does not match dim");
    if (seq.count() <= seq.dim()) throw precondition_error("alternative_dual: frame is not overcomplete");
    const SequenceSystem dual = canonical_dual(seq, tol);

    // last right-singular vector of D lies in its kernel when n > d
    Eigen::JacobiSVD<CMatrix> dec(seq.synthesis_matrix(), Eigen::ComputeFullV);
    const CVector kernel = dec.matrixV().col(seq.count() - 1);
    return SequenceSystem(dual.synthesis_matrix() + direction * kernel.adjoint());
}

}  // namespace genmult

#endif  // GENMULT_SEQUENCES_HPP
