#include "vbp/pfaffian.hpp"

#include <gtest/gtest.h>

#include "corpus.hpp"
#include "vbp/rng.hpp"

using namespace vbp;

namespace {

PolyMatrix constantSkew(int n, const std::vector<std::vector<long>>& upper) {
    PolyMatrix A(n, std::vector<TruncPoly>(n, TruncPoly(0)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            A[i][j][0] = upper[i][j];
            A[j][i][0] = -upper[i][j];
        }
    return A;
}

}  // namespace

TEST(MatchingSign, SmallCases) {
    EXPECT_EQ(matchingSign({{0, 1}}), 1);
    EXPECT_EQ(matchingSign({{0, 1}, {2, 3}}), 1);
    EXPECT_EQ(matchingSign({{0, 2}, {1, 3}}), -1);  // one crossing
    EXPECT_EQ(matchingSign({{0, 3}, {1, 2}}), 1);   // nested, no crossing
}

TEST(Pfaffian, TwoByTwo) {
    auto A = constantSkew(2, {{0, 7}, {}});
    EXPECT_EQ(pfaffian(A)[0], 7);
    EXPECT_EQ(pfaffianBruteforce(A)[0], 7);
}

// 4x4 with entries a01=1 a02=2 a03=3 a12=4 a13=5 a23=6:
// pf = a01*a23 - a02*a13 + a03*a12 = 6 - 10 + 12 = 8.
TEST(Pfaffian, FourByFourKnownValue) {
    auto A = constantSkew(4, {{0, 1, 2, 3}, {0, 0, 4, 5}, {0, 0, 0, 6}, {}});
    EXPECT_EQ(pfaffianBruteforce(A)[0], 8);
    EXPECT_EQ(pfaffian(A)[0], 8);
}

TEST(Pfaffian, OddSizeIsRejected) {
    PolyMatrix A(3, std::vector<TruncPoly>(3, TruncPoly(0)));
    A[0][1][0] = 5;
    A[1][0][0] = -5;
    EXPECT_THROW(pfaffian(A), StructuralError);
    EXPECT_THROW(pfaffianBruteforce(A), StructuralError);
}

TEST(Pfaffian, EmptyMatrixIsOne) {
    PolyMatrix A;
    EXPECT_EQ(pfaffian(A)[0], 1);
    EXPECT_EQ(pfaffianBruteforce(A)[0], 1);
}

TEST(Pfaffian, MatchesBruteforceOnIntegerMatrices) {
    Rng rng(corpus::kBaseSeed, 1);
    for (int n : {2, 4, 6, 8}) {
        for (int trial = 0; trial < corpus::kPfaffianRandomTrials; ++trial) {
            auto A = corpus::randomSkewPolyMatrix(rng, n, 0, 50);
            auto fast = pfaffian(A);
            auto slow = pfaffianBruteforce(A);
            ASSERT_EQ(fast, slow) << "n=" << n << " trial=" << trial;
        }
    }
}

TEST(Pfaffian, MatchesBruteforceOnPolynomialMatrices) {
    Rng rng(corpus::kBaseSeed, 2);
    for (int n : {2, 4, 6, 8}) {
        for (int cap : {3, 7}) {
            for (int trial = 0; trial < corpus::kPfaffianRandomTrials / 2; ++trial) {
                auto A = corpus::randomSkewPolyMatrix(rng, n, cap, 20);
                auto fast = pfaffian(A);
                auto slow = pfaffianBruteforce(A);
                ASSERT_EQ(fast, slow) << "n=" << n << " cap=" << cap
                                      << " trial=" << trial;
            }
        }
    }
}

TEST(Pfaffian, TenByTenMatchesBruteforce) {
    Rng rng(corpus::kBaseSeed, 3);
    for (int trial = 0; trial < 8; ++trial) {
        auto A = corpus::randomSkewPolyMatrix(rng, 10, 2, 9);
        ASSERT_EQ(pfaffian(A), pfaffianBruteforce(A)) << "trial=" << trial;
    }
}

// The square of the Pfaffian equals the determinant of the skew matrix.
TEST(Pfaffian, SquareEqualsDeterminant) {
    Rng rng(corpus::kBaseSeed, 4);
    for (int n : {2, 4, 6, 8}) {
        for (int trial = 0; trial < corpus::kPfaffianSquareTrials; ++trial) {
            auto A = corpus::randomSkewPolyMatrix(rng, n, 0, 30);
            std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) M[i][j] = Rational(A[i][j][0]);
            Rational pf(pfaffian(A)[0]);
            ASSERT_EQ(pf * pf, corpus::detRational(M)) << "n=" << n;
        }
    }
}
