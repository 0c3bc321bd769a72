#ifndef GENMULT_NUMERICS_HPP
#define GENMULT_NUMERICS_HPP

//
// Dense complex linear algebra used throughout genmult: singular values,
// Hermitian eigenproblems, operator and Schatten norms, guarded inversion
// and rank-one tensor operators.
//
// Hilbert spaces are modelled as C^d with <x, y> = sum_i x_i conj(y_i),
// i.e. <x, y> = y^* x.
//

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace genmult {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// error hierarchy; callers that only care about "bad input" can catch
// std::invalid_argument
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct singular_matrix_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

///
/// Tolerance policy shared by every check. `eq_abs` and `invert_floor` are
/// relative to an operand scale supplied by the caller.
///
struct ToleranceConfig {
    double eq_abs       = 1e-10;
    double bound_slack  = 1e-9;
    double rank_tol     = 1e-12;
    double invert_floor = 1e-10;

    void validate() const {
        if (!(eq_abs > 0 && bound_slack > 0 && rank_tol > 0 && invert_floor > 0))
            throw domain_error("tolerances must be positive");
    }
};

inline const ToleranceConfig& default_tolerances() {
    static const ToleranceConfig cfg{};
    return cfg;
}

/// singular values, non-increasing, all >= 0
struct SingularSpectrum {
    std::vector<double> values;

    [[nodiscard]] double max() const { return values.empty() ? 0.0 : values.front(); }
    [[nodiscard]] double min() const { return values.empty() ? 0.0 : values.back(); }
    [[nodiscard]] std::size_t size() const { return values.size(); }

    /// number of values above rel_tol * max()
    [[nodiscard]] std::size_t rank(double rel_tol) const {
        const double cut = rel_tol * max();
        return static_cast<std::size_t>(
            std::count_if(values.begin(), values.end(), [cut](double s) { return s > cut; }));
    }
};

/// thin SVD: A = left * diag(spectrum) * right^*
struct Svd {
    SingularSpectrum spectrum;
    CMatrix left;
    CMatrix right;

    [[nodiscard]] CMatrix reconstruct() const {
        RVector s(static_cast<Eigen::Index>(spectrum.size()));
        for (std::size_t i = 0; i < spectrum.size(); ++i) s(static_cast<Eigen::Index>(i)) = spectrum.values[i];
        return left * s.cast<Complex>().asDiagonal() * right.adjoint();
    }
};

struct HermitianEigen {
    RVector values;   // ascending
    CMatrix vectors;  // columns are orthonormal eigenvectors
};

inline bool is_finite(const CMatrix& a) {
    return a.allFinite();
}

inline void require_finite(const CMatrix& a, const char* what) {
    if (!is_finite(a)) throw domain_error(std::string(what) + ": non-finite entries");
}

inline void require_nonempty(const CMatrix& a, const char* what) {
    if (a.rows() < 1 || a.cols() < 1) throw dimension_error(std::string(what) + ": empty matrix");
}

/// operand scale used for absolute tolerances: max(||A||_F, 1)
inline double operand_scale(const CMatrix& a) {
    return std::max(a.norm(), 1.0);
}

inline Svd svd(const CMatrix& a) {
    require_nonempty(a, "svd");
    require_finite(a, "svd");
    Eigen::JacobiSVD<CMatrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (dec.info() != Eigen::Success) throw numerical_error("svd: decomposition failed");

    Svd out;
    const auto& s = dec.singularValues();
    out.spectrum.values.assign(s.data(), s.data() + s.size());
    out.left  = dec.matrixU();
    out.right = dec.matrixV();
    return out;
}

inline SingularSpectrum singular_values(const CMatrix& a) {
    require_nonempty(a, "singular_values");
    require_finite(a, "singular_values");
    Eigen::JacobiSVD<CMatrix> dec(a);
    if (dec.info() != Eigen::Success) throw numerical_error("singular_values: decomposition failed");
    const auto& s = dec.singularValues();
    return {std::vector<double>(s.data(), s.data() + s.size())};
}

inline double hermitian_defect(const CMatrix& a) {
    return (a - a.adjoint()).norm();
}

///
/// Eigen-decomposition of a Hermitian matrix. Rejects inputs whose
/// anti-Hermitian part exceeds eq_abs * operand_scale(a).
///
inline HermitianEigen hermitian_eig(const CMatrix& a, const ToleranceConfig& tol = default_tolerances()) {
    require_nonempty(a, "hermitian_eig");
    require_finite(a, "hermitian_eig");
    if (a.rows() != a.cols()) throw dimension_error("hermitian_eig: matrix not square");
    if (hermitian_defect(a) > tol.eq_abs * operand_scale(a))
        throw precondition_error("hermitian_eig: matrix is not Hermitian");

    const CMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
    if (es.info() != Eigen::Success) throw numerical_error("hermitian_eig: decomposition failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

/// eigenvalues of the Hermitian part (A + A^*)/2, ascending
inline RVector hermitian_part_eigenvalues(const CMatrix& a) {
    if (a.rows() != a.cols()) throw dimension_error("hermitian_part_eigenvalues: matrix not square");
    const CMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw numerical_error("hermitian_part_eigenvalues: decomposition failed");
    return es.eigenvalues();
}

inline double operator_norm(const CMatrix& a) {
    return singular_values(a).max();
}

inline double smallest_singular(const CMatrix& a) {
    return singular_values(a).min();
}

///
/// Best constant C with ||A x|| >= C ||x|| for all x. For a wide matrix the
/// map has a kernel and the constant is 0.
///
inline double lower_bound_constant(const CMatrix& a) {
    if (a.rows() < a.cols()) return 0.0;
    return smallest_singular(a);
}

inline double schatten_norm(const SingularSpectrum& s, double p) {
    if (!(p >= 1.0)) throw domain_error("schatten_norm: p must be >= 1");
    if (std::isinf(p)) return s.max();
    // scale by sigma_max to keep large p from overflowing
    const double top = s.max();
    if (top == 0.0) return 0.0;
    double acc = 0.0;
    for (double v : s.values) acc += std::pow(v / top, p);
    return top * std::pow(acc, 1.0 / p);
}

inline double schatten_norm(const CMatrix& a, double p) {
    if (!(p >= 1.0)) throw domain_error("schatten_norm: p must be >= 1");
    return schatten_norm(singular_values(a), p);
}

inline bool is_invertible(const CMatrix& a, const ToleranceConfig& tol = default_tolerances()) {
    if (a.rows() != a.cols()) return false;
    const auto s = singular_values(a);
    return s.max() > 0.0 && s.min() > tol.invert_floor * s.max();
}

///
/// Inverse of a square matrix whose sigma_min exceeds invert_floor * sigma_max.
/// Throws singular_matrix_error otherwise, and numerical_error when the
/// residual ||A A^-1 - I||_op exceeds bound_slack.
///
inline CMatrix inverse(const CMatrix& a, const ToleranceConfig& tol = default_tolerances()) {
    require_nonempty(a, "inverse");
    if (a.rows() != a.cols()) throw dimension_error("inverse: matrix not square");
    const Svd dec = svd(a);
    const double smax = dec.spectrum.max();
    const double smin = dec.spectrum.min();
    if (!(smax > 0.0) || !(smin > tol.invert_floor * smax))
        throw singular_matrix_error("inverse: sigma_min " + std::to_string(smin) + " below floor");

    RVector inv_s(static_cast<Eigen::Index>(dec.spectrum.size()));
    for (std::size_t i = 0; i < dec.spectrum.size(); ++i)
        inv_s(static_cast<Eigen::Index>(i)) = 1.0 / dec.spectrum.values[i];
    CMatrix out = dec.right * inv_s.cast<Complex>().asDiagonal() * dec.left.adjoint();

    const auto n = a.rows();
    const double residual = operator_norm(a * out - CMatrix::Identity(n, n));
    // admissible but ill-conditioned inputs lose accuracy in proportion to the condition number
    const double allowed = std::max(tol.bound_slack, 64.0 * (smax / smin) * std::numeric_limits<double>::epsilon());
    if (residual > allowed)
        throw numerical_error("inverse: residual " + std::to_string(residual) + " exceeds slack");
    return out;
}

inline CVector solve(const CMatrix& a, const CVector& b, const ToleranceConfig& tol = default_tolerances()) {
    if (a.rows() != b.size()) throw dimension_error("solve: right-hand side length mismatch");
    return inverse(a, tol) * b;
}

/// rank-one operator (f (x) g)(h) = <h, g> f, i.e. the matrix f g^*
inline CMatrix tensor(const CVector& f, const CVector& g) {
    return f * g.adjoint();
}

/// <x, y> linear in x
inline Complex inner(const CVector& x, const CVector& y) {
    return y.dot(x);
}

/// maximum column 2-norm, i.e. sup_n ||A e_n||
inline double max_column_norm(const CMatrix& a) {
    double k = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) k = std::max(k, a.col(j).norm());
    return k;
}

}  // namespace genmult

#endif  // GENMULT_NUMERICS_HPP
