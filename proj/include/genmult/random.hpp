#ifndef GENMULT_RANDOM_HPP
#define GENMULT_RANDOM_HPP

//
// Random instance generators for sweeps. Every draw gets its own engine
// seeded from (master seed, draw index) so single draws can be replayed.
//

#include "genmult/numerics.hpp"
#include "genmult/sequences.hpp"

#include <cstdint>
#include <random>

namespace genmult {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

/// standard complex Gaussian: real and imaginary parts N(0, 1/2)
inline Complex complex_gaussian(Rng& rng) {
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    const double re = n(rng);
    const double im = n(rng);
    return {re, im};
}

inline CMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    CMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_gaussian(rng);
    return m;
}

inline CVector gaussian_vector(Eigen::Index n, Rng& rng) {
    return gaussian_matrix(n, 1, rng).col(0);
}

inline CVector unit_vector(Eigen::Index n, Rng& rng) {
    CVector v = gaussian_vector(n, rng);
    while (v.norm() == 0.0) v = gaussian_vector(n, rng);
    return v / v.norm();
}

inline Eigen::Index uniform_index(Eigen::Index lo, Eigen::Index hi, Rng& rng) {
    std::uniform_int_distribution<long> u(static_cast<long>(lo), static_cast<long>(hi));
    return static_cast<Eigen::Index>(u(rng));
}

inline double uniform_real(double lo, double hi, Rng& rng) {
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng);
}

/// Haar-like unitary from the QR factor of a Gaussian matrix
inline CMatrix random_unitary(Eigen::Index n, Rng& rng) {
    Eigen::HouseholderQR<CMatrix> qr(gaussian_matrix(n, n, rng));
    return qr.householderQ() * CMatrix::Identity(n, n);
}

/// Gaussian d x n system; any finite system is Bessel
inline SequenceSystem random_bessel(Eigen::Index d, Eigen::Index n, Rng& rng) {
    return SequenceSystem(gaussian_matrix(d, n, rng));
}

/// Gaussian d x n system (n >= d), redrawn until it is a frame
inline SequenceSystem random_frame(Eigen::Index d, Eigen::Index n, Rng& rng,
                                   const ToleranceConfig& tol = default_tolerances()) {
    if (n < d) throw dimension_error("random_frame: need n >= d");
    for (;;) {
        SequenceSystem s = random_bessel(d, n, rng);
        if (is_frame(s, tol)) return s;
    }
}

/// square Gaussian system with condition number <= max_condition
inline SequenceSystem random_riesz_basis(Eigen::Index d, Rng& rng, double max_condition = 1e3) {
    for (;;) {
        CMatrix m = gaussian_matrix(d, d, rng);
        const SingularSpectrum s = singular_values(m);
        if (s.min() > 0.0 && s.max() / s.min() <= max_condition) return SequenceSystem(std::move(m));
    }
}

///
/// d x n frame (n >= d) whose frame operator has eigenvalues spread over
/// [lower, upper] with both endpoints attained.
///
inline SequenceSystem frame_with_bounds(Eigen::Index d, Eigen::Index n, double lower, double upper, Rng& rng) {
    if (n < d) throw dimension_error("frame_with_bounds: need n >= d");
    const CMatrix left = random_unitary(d, rng);
    const CMatrix right = random_unitary(n, rng);
    CMatrix sigma = CMatrix::Zero(d, n);
    for (Eigen::Index i = 0; i < d; ++i) {
        double ev = lower;
        if (i == 0) ev = upper;
        else if (i + 1 < d) ev = uniform_real(lower, upper, rng);
        sigma(i, i) = std::sqrt(ev);
    }
    return SequenceSystem(left * sigma * right.adjoint());
}

/// V^* V with V Gaussian of the given inner rank
inline CMatrix random_psd(Eigen::Index n, Eigen::Index rank, Rng& rng) {
    const CMatrix v = gaussian_matrix(rank, n, rng);
    return v.adjoint() * v;
}

/// Gaussian n x n matrix with rank exactly `rank` (generic)
inline CMatrix random_rank_deficient(Eigen::Index n, Eigen::Index rank, Rng& rng) {
    return gaussian_matrix(n, rank, rng) * gaussian_matrix(rank, n, rng);
}

}  // namespace genmult

#endif  // GENMULT_RANDOM_HPP
