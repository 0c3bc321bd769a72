#include "genmult/random.hpp"
#include "genmult/symbols.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace genmult;

TEST(DiagonalSymbol, OnesGiveIdentity) {
    const Symbol u = diagonal_symbol(std::vector<Complex>(4, 1.0), 4);
    EXPECT_EQ(u.matrix(), CMatrix::Identity(4, 4));
    EXPECT_EQ(kind_name(u.kind()), "diagonal");
    EXPECT_EQ(identity_symbol(4).matrix(), CMatrix::Identity(4, 4));
}

TEST(DiagonalSymbol, SingleEntryIsRankOne) {
    const Symbol u = diagonal_symbol({1.0, 0.0, 0.0});
    EXPECT_EQ(singular_profile(u).rank(1e-12), 1u);
    EXPECT_EQ(u.matrix()(0, 0), Complex(1.0));
}

TEST(DiagonalSymbol, LengthMismatch) {
    EXPECT_THROW(diagonal_symbol({1.0, 2.0}, 3), dimension_error);
    EXPECT_THROW(diagonal_symbol({}), dimension_error);
}

TEST(ConvolutionSymbol, DeltaZeroIsIdentity) {
    EXPECT_EQ(convolution_symbol({1.0}, 0, 5).matrix(), CMatrix::Identity(5, 5));
}

TEST(ConvolutionSymbol, DeltaOneIsSubdiagonalShift) {
    const CMatrix u = convolution_symbol({1.0}, 1, 3).matrix();
    CMatrix expect = CMatrix::Zero(3, 3);
    expect(1, 0) = 1.0;
    expect(2, 1) = 1.0;
    EXPECT_EQ(u, expect);
}

TEST(ConvolutionSymbol, ThreeTapKernel) {
    const CMatrix u = convolution_symbol({1.0, 2.0, 3.0}, -1, 3).matrix();
    CMatrix expect(3, 3);
    expect << 2, 1, 0, 3, 2, 1, 0, 3, 2;
    EXPECT_EQ(u, expect);
}

TEST(ConvolutionSymbol, MatchesBruteForceToeplitzFill) {
    Rng rng(2);
    for (long offset : {-4L, -2L, 0L, 1L, 3L}) {
        std::vector<Complex> k;
        for (int i = 0; i < 4; ++i) k.push_back(complex_gaussian(rng));
        for (long n : {1L, 3L, 7L})
            EXPECT_EQ(convolution_symbol(k, offset, n).matrix(), oracle::toeplitz_fill(k, offset, n));
    }
}

TEST(ConvolutionSymbol, KernelOutsideWindowGivesZero) {
    EXPECT_EQ(convolution_symbol({1.0}, 5, 3).matrix(), CMatrix::Zero(3, 3));
}

TEST(ConvolutionSymbol, Errors) {
    EXPECT_THROW(convolution_symbol({}, 0, 3), std::domain_error);
    EXPECT_THROW(convolution_symbol({1.0}, 0, 0), dimension_error);
}

TEST(ConvolutionSymbol, NormBoundedByKernelL1) {
    // Young: ||c * a||_2 <= ||c||_1 ||a||_2, and truncation keeps it
    const std::vector<Complex> k{0.5, -1.0, 2.0, 0.25};
    double l1 = 0.0;
    for (auto c : k) l1 += std::abs(c);
    for (long n : {4L, 16L, 64L}) EXPECT_LE(symbol_norms(convolution_symbol(k, -2, n)).op, l1 + 1e-12);
}

TEST(FrobeniusSymbol, Examples) {
    EXPECT_EQ(symbol_norms(frobenius_symbol(CMatrix::Zero(3, 3))).s2, 0.0);
    CMatrix a = CMatrix::Zero(3, 3);
    a(0, 0) = 1.0;
    const Symbol u = frobenius_symbol(a);
    EXPECT_EQ(singular_profile(u).rank(1e-12), 1u);
    EXPECT_NEAR(symbol_norms(u).s2, 1.0, 1e-15);
    EXPECT_EQ(kind_name(u.kind()), "frobenius");
}

TEST(FrobeniusSymbol, HilbertSchmidtNormIsEntrySum) {
    Rng rng(3);
    const CMatrix a = gaussian_matrix(4, 6, rng);
    EXPECT_NEAR(symbol_norms(frobenius_symbol(a)).s2, oracle::frobenius(a), 1e-12);
}

TEST(TriBlock, TwoByTwo) {
    const CMatrix u = triblock_example(2).matrix();
    CMatrix expect(2, 2);
    expect << 1.0, 1.0, 1.0, 1.0 / std::sqrt(2.0);
    EXPECT_LE((u - expect).norm(), 1e-15);
}

TEST(TriBlock, ThreeByThree) {
    const CMatrix u = triblock_example(3).matrix();
    const double r2 = 1.0 / std::sqrt(2.0), r3 = 1.0 / std::sqrt(3.0);
    CMatrix expect(3, 3);
    expect << 1.0, 1.0, 0.0, 1.0, r2, r2, 0.0, r2, r3;
    EXPECT_LE((u - expect).norm(), 1e-15);
}

TEST(TriBlock, SymmetricTridiagonal) {
    const CMatrix u = triblock_example(10).matrix();
    EXPECT_EQ(u, u.transpose());
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            if (std::abs(i - j) > 1) {
                EXPECT_EQ(u(i, j), Complex(0.0));
            }
    EXPECT_THROW(triblock_example(1), dimension_error);
}

TEST(TriBlock, ProfileMatchesGramOracle) {
    const Symbol u = triblock_example(8);
    const SingularSpectrum s = singular_profile(u);
    const auto ref = oracle::singular_values_via_gram(u.matrix());
    ASSERT_EQ(s.size(), 8u);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(s.values[i], ref[i], 1e-10);
    for (std::size_t i = 1; i < 8; ++i) EXPECT_LE(s.values[i], s.values[i - 1]);
}

TEST(TriBlock, EntriesDecayAlongDiagonal) {
    // row i (0-indexed, i >= 1) has squared norm 1/i + 2/(i+1) <= 3/i
    const CMatrix u = triblock_example(40).matrix();
    for (Eigen::Index k = 1; k < 39; ++k) EXPECT_LE(u.row(k).norm(), std::sqrt(3.0 / static_cast<double>(k)) + 1e-15);
}

TEST(Adjoint, ConjugateTransposeAndKinds) {
    Rng rng(4);
    const Symbol u(gaussian_matrix(3, 5, rng));
    EXPECT_EQ(adjoint(u).matrix(), oracle::conj_transpose(u.matrix()));
    EXPECT_EQ(adjoint(adjoint(u)).matrix(), u.matrix());

    const Symbol d = diagonal_symbol({Complex(1, 2), Complex(3, -1)});
    const Symbol da = adjoint(d);
    const auto* dk = std::get_if<symbol_kind::Diagonal>(&da.kind());
    ASSERT_NE(dk, nullptr);
    EXPECT_EQ(dk->m[0], Complex(1, -2));
}

TEST(Adjoint, ConvolutionKernelReversed) {
    const std::vector<Complex> k{Complex(1, 1), 2.0, Complex(0, 3)};
    const Symbol c = convolution_symbol(k, -1, 6);
    const Symbol a = adjoint(c);
    const auto* ck = std::get_if<symbol_kind::Convolution>(&a.kind());
    ASSERT_NE(ck, nullptr);
    EXPECT_EQ(convolution_symbol(ck->kernel, ck->offset, 6).matrix(), a.matrix());
}

TEST(Invert, DiagonalSymbol) {
    const Symbol inv = invert(diagonal_symbol({2.0, 4.0}));
    CMatrix expect = CMatrix::Zero(2, 2);
    expect(0, 0) = 0.5;
    expect(1, 1) = 0.25;
    EXPECT_LE((inv.matrix() - expect).norm(), 1e-15);
    EXPECT_EQ(kind_name(inv.kind()), "diagonal");
}

TEST(Invert, SingularSymbolThrows) {
    EXPECT_THROW(invert(diagonal_symbol({1.0, 0.0})), singular_matrix_error);
    EXPECT_THROW(invert(Symbol(CMatrix::Ones(2, 2))), singular_matrix_error);
}

TEST(SymbolNorms, DiagonalAndIdentity) {
    const SymbolNorms n = symbol_norms(diagonal_symbol({3.0, -4.0}));
    EXPECT_NEAR(n.op, 4.0, 1e-14);
    EXPECT_NEAR(n.s1, 7.0, 1e-14);
    EXPECT_NEAR(n.s2, 5.0, 1e-14);
    const SymbolNorms i = symbol_norms(identity_symbol(9));
    EXPECT_NEAR(i.op, 1.0, 1e-14);
    EXPECT_NEAR(i.s1, 9.0, 1e-13);
    EXPECT_NEAR(i.s2, 3.0, 1e-14);
}
