#ifndef GENMULT_SYMBOLS_HPP
#define GENMULT_SYMBOLS_HPP

//
// Symbols: the operator U on the coefficient space sitting between analysis
// and synthesis. Stored dense; the kind tag records how it was constructed.
//

#include "genmult/numerics.hpp"

#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace genmult {

namespace symbol_kind {

struct Dense {};

/// U = diag(m)
struct Diagonal {
    std::vector<Complex> m;
};

/// U_{jk} = c_{j-k}; kernel[i] holds c_{offset + i}
struct Convolution {
    std::vector<Complex> kernel;
    long offset = 0;
};

/// U_{jk} = a_{jk}
struct Frobenius {};

/// truncated symmetric tri-diagonal example matrix
struct TriBlock {};

}  // namespace symbol_kind

using SymbolKind = std::variant<symbol_kind::Dense, symbol_kind::Diagonal, symbol_kind::Convolution,
                                symbol_kind::Frobenius, symbol_kind::TriBlock>;

inline std::string kind_name(const SymbolKind& k) {
    struct {
        std::string operator()(const symbol_kind::Dense&) const { return "dense"; }
        std::string operator()(const symbol_kind::Diagonal&) const { return "diagonal"; }
        std::string operator()(const symbol_kind::Convolution&) const { return "convolution"; }
        std::string operator()(const symbol_kind::Frobenius&) const { return "frobenius"; }
        std::string operator()(const symbol_kind::TriBlock&) const { return "triblock"; }
    } visitor;
    return std::visit(visitor, k);
}

class Symbol {
public:
    explicit Symbol(CMatrix matrix, SymbolKind kind = symbol_kind::Dense{})
        : matrix_(std::move(matrix)), kind_(std::move(kind)) {
        require_nonempty(matrix_, "Symbol");
        require_finite(matrix_, "Symbol");
    }

    [[nodiscard]] const CMatrix& matrix() const { return matrix_; }
    [[nodiscard]] const SymbolKind& kind() const { return kind_; }
    [[nodiscard]] Eigen::Index rows() const { return matrix_.rows(); }
    [[nodiscard]] Eigen::Index cols() const { return matrix_.cols(); }

private:
    CMatrix matrix_;
    SymbolKind kind_;
};

struct SymbolNorms {
    double op = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
};

inline Symbol dense_symbol(CMatrix u) {
    return Symbol(std::move(u));
}

inline Symbol identity_symbol(Eigen::Index n) {
    return Symbol(CMatrix::Identity(n, n), symbol_kind::Diagonal{std::vector<Complex>(static_cast<std::size_t>(n), 1.0)});
}

inline Symbol diagonal_symbol(const std::vector<Complex>& m, Eigen::Index n) {
    if (n < 1 || static_cast<Eigen::Index>(m.size()) != n)
        throw dimension_error("diagonal_symbol: length of m does not match n");
    CMatrix u = CMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) u(k, k) = m[static_cast<std::size_t>(k)];
    return Symbol(std::move(u), symbol_kind::Diagonal{m});
}

inline Symbol diagonal_symbol(const std::vector<Complex>& m) {
    return diagonal_symbol(m, static_cast<Eigen::Index>(m.size()));
}

///
/// n x n Toeplitz truncation of a convolution with kernel c supported on
/// [offset, offset + kernel.size()). Entries outside the support are zero
/// (no wrap-around).
///
inline Symbol convolution_symbol(const std::vector<Complex>& kernel, long offset, Eigen::Index n) {
    if (kernel.empty()) throw domain_error("convolution_symbol: empty kernel");
    if (n < 1) throw dimension_error("convolution_symbol: n must be >= 1");
    CMatrix u = CMatrix::Zero(n, n);
    const long len = static_cast<long>(kernel.size());
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const long idx = static_cast<long>(j - k) - offset;
            if (idx >= 0 && idx < len) u(j, k) = kernel[static_cast<std::size_t>(idx)];
        }
    }
    return Symbol(std::move(u), symbol_kind::Convolution{kernel, offset});
}

/// U x = A x for a finite coefficient table a
inline Symbol frobenius_symbol(CMatrix a) {
    return Symbol(std::move(a), symbol_kind::Frobenius{});
}

///
/// n x n leading block of the infinite tri-diagonal matrix with (1-indexed)
/// entries (k,k) = (k,k+1) = (k+1,k) = 1/sqrt(k).
///
inline Symbol triblock_example(Eigen::Index n) {
    if (n < 2) throw dimension_error("triblock_example: n must be >= 2");
    CMatrix u = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double v = 1.0 / std::sqrt(static_cast<double>(i + 1));
        u(i, i) = v;
        if (i + 1 < n) {
            u(i, i + 1) = v;
            u(i + 1, i) = v;
        }
    }
    return Symbol(std::move(u), symbol_kind::TriBlock{});
}

inline Symbol adjoint(const Symbol& u) {
    CMatrix adj = u.matrix().adjoint();
    const auto visitor = [](const auto& k) -> SymbolKind {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, symbol_kind::Diagonal>) {
            std::vector<Complex> m(k.m.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::conj(k.m[i]);
            return symbol_kind::Diagonal{std::move(m)};
        } else if constexpr (std::is_same_v<K, symbol_kind::Convolution>) {
            // (U^*)_{jk} = conj(c_{k-j}): reversed, conjugated kernel
            std::vector<Complex> rev(k.kernel.rbegin(), k.kernel.rend());
            for (auto& v : rev) v = std::conj(v);
            const long last = k.offset + static_cast<long>(k.kernel.size()) - 1;
            return symbol_kind::Convolution{std::move(rev), -last};
        } else {
            return k;
        }
    };
    return Symbol(std::move(adj), std::visit(visitor, u.kind()));
}

/// inverse symbol; throws singular_matrix_error below the invert floor
inline Symbol invert(const Symbol& u, const ToleranceConfig& tol = default_tolerances()) {
    CMatrix inv = inverse(u.matrix(), tol);
    if (const auto* d = std::get_if<symbol_kind::Diagonal>(&u.kind())) {
        std::vector<Complex> m(d->m.size());
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = 1.0 / d->m[i];
        return Symbol(std::move(inv), symbol_kind::Diagonal{std::move(m)});
    }
    return Symbol(std::move(inv));
}

inline SymbolNorms symbol_norms(const Symbol& u) {
    const SingularSpectrum s = singular_values(u.matrix());
    return {s.max(), schatten_norm(s, 1.0), schatten_norm(s, 2.0)};
}

inline SingularSpectrum singular_profile(const Symbol& u) {
    return singular_values(u.matrix());
}

}  // namespace genmult

#endif  // GENMULT_SYMBOLS_HPP
