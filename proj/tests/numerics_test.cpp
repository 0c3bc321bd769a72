#include "genmult/numerics.hpp"
#include "genmult/random.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace genmult;

namespace {

CMatrix diag(std::initializer_list<double> d) {
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double v : d) m(i, i) = v, ++i;
    return m;
}

}  // namespace

TEST(Svd, DiagonalValuesSortedDescending) {
    const SingularSpectrum s = singular_values(diag({3.0, 4.0}));
    ASSERT_EQ(s.size(), 2u);
    EXPECT_NEAR(s.values[0], 4.0, 1e-14);
    EXPECT_NEAR(s.values[1], 3.0, 1e-14);
}

TEST(Svd, IdentityHasUnitSpectrum) {
    const SingularSpectrum s = singular_values(CMatrix::Identity(5, 5));
    ASSERT_EQ(s.size(), 5u);
    for (double v : s.values) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(Svd, ReconstructsRectangularMatrix) {
    Rng rng(7);
    const CMatrix a = gaussian_matrix(4, 6, rng);
    const Svd dec = svd(a);
    EXPECT_LE(oracle::frobenius(dec.reconstruct() - a), 1e-10 * oracle::frobenius(a));
    const auto ref = oracle::singular_values_via_gram(a);
    for (std::size_t i = 0; i < dec.spectrum.size(); ++i) EXPECT_NEAR(dec.spectrum.values[i], ref[i], 1e-10);
}

TEST(Svd, RejectsNonFiniteAndEmpty) {
    CMatrix a = CMatrix::Identity(2, 2);
    a(0, 1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(svd(a), genmult::domain_error);
    EXPECT_THROW(singular_values(CMatrix(0, 3)), dimension_error);
}

TEST(Svd, RankCountsRelativeToLargest) {
    const SingularSpectrum s = singular_values(diag({1.0, 1e-3, 1e-15}));
    EXPECT_EQ(s.rank(1e-12), 2u);
    EXPECT_EQ(singular_values(CMatrix::Zero(3, 3)).rank(1e-12), 0u);
}

TEST(HermitianEig, DiagonalAscending) {
    const HermitianEigen e = hermitian_eig(diag({2.0, 1.0}));
    EXPECT_NEAR(e.values(0), 1.0, 1e-15);
    EXPECT_NEAR(e.values(1), 2.0, 1e-15);
}

TEST(HermitianEig, ScaledIdentity) {
    const HermitianEigen e = hermitian_eig(1.5 * CMatrix::Identity(2, 2));
    EXPECT_NEAR(e.values(0), 1.5, 1e-15);
    EXPECT_NEAR(e.values(1), 1.5, 1e-15);
}

TEST(HermitianEig, GramOfSkewBasisMatchesCharacteristicPolynomial) {
    CMatrix gram(2, 2);
    gram << 1.0, 1.0, 1.0, 2.0;
    const auto [lo, hi] = oracle::symmetric2x2_eigenvalues(1.0, 1.0, 2.0);
    const HermitianEigen e = hermitian_eig(gram);
    EXPECT_NEAR(e.values(0), lo, 1e-14);
    EXPECT_NEAR(e.values(1), hi, 1e-14);
    EXPECT_NEAR(lo, (3.0 - std::sqrt(5.0)) / 2.0, 1e-15);
}

TEST(HermitianEig, EigenvectorsOrthonormal) {
    Rng rng(3);
    const CMatrix a = random_psd(6, 4, rng);
    const HermitianEigen e = hermitian_eig(a);
    EXPECT_LE((e.vectors.adjoint() * e.vectors - CMatrix::Identity(6, 6)).norm(), 1e-12);
    EXPECT_LE((e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint() - a).norm(), 1e-10 * a.norm());
}

TEST(HermitianEig, RejectsNonHermitian) {
    CMatrix a(2, 2);
    a << 1.0, 2.0, 0.0, 1.0;
    EXPECT_THROW(hermitian_eig(a), precondition_error);
    EXPECT_THROW(hermitian_eig(CMatrix::Zero(2, 3)), dimension_error);
}

TEST(Norms, DiagonalValues) {
    const CMatrix a = diag({3.0, 4.0});
    EXPECT_NEAR(schatten_norm(a, 1.0), 7.0, 1e-14);
    EXPECT_NEAR(schatten_norm(a, 2.0), 5.0, 1e-14);
    EXPECT_NEAR(operator_norm(a), 4.0, 1e-14);
    EXPECT_NEAR(smallest_singular(a), 3.0, 1e-14);
}

TEST(Norms, ZeroMatrix) {
    const CMatrix z = CMatrix::Zero(3, 2);
    EXPECT_EQ(operator_norm(z), 0.0);
    EXPECT_EQ(schatten_norm(z, 1.0), 0.0);
    EXPECT_EQ(schatten_norm(z, 2.0), 0.0);
    EXPECT_EQ(smallest_singular(z), 0.0);
}

TEST(Norms, PBelowOneIsDomainError) {
    EXPECT_THROW(schatten_norm(CMatrix::Identity(2, 2), 0.5), std::domain_error);
    EXPECT_THROW(schatten_norm(CMatrix::Identity(2, 2), std::nan("")), std::domain_error);
}

TEST(Norms, SchattenTwoIsFrobenius) {
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
        const CMatrix a = gaussian_matrix(3 + t % 4, 5, rng);
        EXPECT_NEAR(schatten_norm(a, 2.0), oracle::frobenius(a), 1e-12 * oracle::frobenius(a));
    }
}

TEST(Norms, SchattenOrderingAndLargeP) {
    Rng rng(12);
    const CMatrix a = gaussian_matrix(6, 6, rng);
    const double op = operator_norm(a);
    EXPECT_LE(op, schatten_norm(a, 2.0));
    EXPECT_LE(schatten_norm(a, 2.0), schatten_norm(a, 1.0));
    EXPECT_NEAR(schatten_norm(a, 400.0), op, 0.01 * op);
    EXPECT_NEAR(schatten_norm(a, std::numeric_limits<double>::infinity()), op, 1e-15);
}

TEST(Norms, LowerBoundConstantOfWideMatrixIsZero) {
    Rng rng(5);
    EXPECT_EQ(lower_bound_constant(gaussian_matrix(2, 3, rng)), 0.0);
    const CMatrix tall = gaussian_matrix(4, 2, rng);
    EXPECT_NEAR(lower_bound_constant(tall), smallest_singular(tall), 1e-15);
}

TEST(Inverse, TwiceIdentity) {
    const CMatrix inv = inverse(2.0 * CMatrix::Identity(3, 3));
    EXPECT_LE((inv - 0.5 * CMatrix::Identity(3, 3)).norm(), 1e-15);
}

TEST(Inverse, BelowFloorIsSingular) {
    EXPECT_THROW(inverse(diag({1.0, 1e-14})), singular_matrix_error);
    EXPECT_FALSE(is_invertible(diag({1.0, 1e-14})));
    EXPECT_THROW(inverse(CMatrix::Zero(2, 2)), singular_matrix_error);
    EXPECT_THROW(inverse(CMatrix::Identity(2, 3)), dimension_error);
}

TEST(Inverse, FloorIsRelativeToLargestSingularValue) {
    // uniformly tiny but perfectly conditioned
    EXPECT_TRUE(is_invertible(1e-13 * CMatrix::Identity(3, 3)));
    ToleranceConfig strict;
    strict.invert_floor = 0.5;
    EXPECT_FALSE(is_invertible(diag({1.0, 0.4}), strict));
    EXPECT_TRUE(is_invertible(diag({1.0, 0.6}), strict));
}

TEST(Inverse, WellConditionedResidual) {
    Rng rng(21);
    const CMatrix u = random_unitary(8, rng);
    RVector s(8);
    for (int i = 0; i < 8; ++i) s(i) = 1.0 + i;
    const CMatrix a = u * s.cast<Complex>().asDiagonal() * random_unitary(8, rng);
    const CMatrix inv = inverse(a);
    EXPECT_LE(operator_norm(a * inv - CMatrix::Identity(8, 8)), 1e-9);
    EXPECT_LE((inv - oracle::lu_inverse(a)).norm(), 1e-10);
}

TEST(Inverse, SolveMatchesInverse) {
    Rng rng(22);
    const CMatrix a = gaussian_matrix(5, 5, rng) + 5.0 * CMatrix::Identity(5, 5);
    const CVector b = gaussian_vector(5, rng);
    EXPECT_LE((a * solve(a, b) - b).norm(), 1e-10);
    EXPECT_THROW(solve(a, gaussian_vector(4, rng)), dimension_error);
}

TEST(Tensor, UnitVectors) {
    const CVector e1 = CVector::Unit(2, 0);
    const CMatrix t = tensor(e1, e1);
    CMatrix expect = CMatrix::Zero(2, 2);
    expect(0, 0) = 1.0;
    EXPECT_EQ(t, expect);
    EXPECT_EQ(tensor(e1, CVector::Zero(2)), CMatrix::Zero(2, 2));
}

TEST(Tensor, ActsAsInnerProductTimesVector) {
    Rng rng(31);
    for (int t = 0; t < 10; ++t) {
        const CVector f = gaussian_vector(4, rng), g = gaussian_vector(3, rng), h = gaussian_vector(3, rng);
        // (f (x) g)(h) = <h, g> f
        EXPECT_LE((tensor(f, g) * h - oracle::inner(h, g) * f).norm(), 1e-12);
        EXPECT_NEAR(std::abs(inner(h, g) - oracle::inner(h, g)), 0.0, 1e-12);
        // rank one with ||f (x) g||_op = ||f|| ||g||
        EXPECT_NEAR(operator_norm(tensor(f, g)), f.norm() * g.norm(), 1e-12);
        EXPECT_EQ(singular_values(tensor(f, g)).rank(1e-10), 1u);
    }
}

TEST(Tolerances, ValidateRejectsNonPositive) {
    ToleranceConfig t;
    EXPECT_NO_THROW(t.validate());
    t.rank_tol = 0.0;
    EXPECT_THROW(t.validate(), std::domain_error);
    t = {};
    t.eq_abs = -1.0;
    EXPECT_THROW(t.validate(), std::domain_error);
}

TEST(Random, DerivedSeedsAreStable) {
    EXPECT_EQ(derive_seed(42, 0), derive_seed(42, 0));
    EXPECT_NE(derive_seed(42, 0), derive_seed(42, 1));
    EXPECT_NE(derive_seed(42, 0), derive_seed(43, 0));
    Rng a(derive_seed(1, 5)), b(derive_seed(1, 5));
    EXPECT_EQ(gaussian_matrix(3, 3, a), gaussian_matrix(3, 3, b));
}

TEST(Random, UnitaryAndRankDeficient) {
    Rng rng(8);
    const CMatrix q = random_unitary(6, rng);
    EXPECT_LE((q.adjoint() * q - CMatrix::Identity(6, 6)).norm(), 1e-12);
    const CMatrix r = random_rank_deficient(6, 3, rng);
    EXPECT_EQ(singular_values(r).rank(1e-10), 3u);
    const CMatrix p = random_psd(5, 2, rng);
    EXPECT_GE(hermitian_eig(p).values(0), -1e-12);
}
