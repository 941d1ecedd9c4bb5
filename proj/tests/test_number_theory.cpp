#include <gtest/gtest.h>

#include <qseries/eta_theta.hpp>
#include <qseries/number_theory.hpp>

using namespace qseries;

TEST(Legendre, Examples)
{
    EXPECT_EQ(legendre(0, 5), 0);
    EXPECT_EQ(legendre(4, 5), 1);
    EXPECT_EQ(legendre(-6, 13), -1);
    EXPECT_EQ(legendre(-2, 5), -1);
    EXPECT_EQ(legendre(-2, 3), 1);
}

TEST(Legendre, AgreesWithSquareTable)
{
    for (std::uint64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        std::vector<bool> square(p, false);
        for (std::uint64_t x = 1; x < p; ++x) square[x * x % p] = true;
        for (std::int64_t a = -40; a <= 40; ++a) {
            const auto r = static_cast<std::uint64_t>(((a % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) % static_cast<std::int64_t>(p));
            const int expected = r == 0 ? 0 : (square[r] ? 1 : -1);
            EXPECT_EQ(legendre(a, p), expected) << a << " mod " << p;
        }
    }
}

TEST(Legendre, RejectsNonOddPrime)
{
    EXPECT_THROW(legendre(1, 2), std::invalid_argument);
    EXPECT_THROW(legendre(1, 9), std::invalid_argument);
    EXPECT_THROW(legendre(1, 1), std::invalid_argument);
}

TEST(Legendre, SmallestNonresiduePrimes)
{
    EXPECT_EQ(smallest_nonresidue_prime(-2), 5u);
    EXPECT_EQ(smallest_nonresidue_prime(-6), 13u);
    EXPECT_EQ(smallest_nonresidue_prime(-30), 7u);
}

TEST(Valuation, Examples)
{
    EXPECT_EQ(nu_p(24, 2), 3u);
    EXPECT_EQ(nu_p(7, 5), 0u);
    EXPECT_EQ(nu_p(3 * 13 * 13 * 13, 13), 3u);
    EXPECT_THROW(nu_p(0, 3), std::invalid_argument);
}

TEST(Figurate, Membership)
{
    EXPECT_TRUE(is_triangular(10));
    EXPECT_FALSE(is_triangular(8));
    EXPECT_TRUE(is_triangular(0));
    EXPECT_TRUE(is_gen_pentagonal(7));
    EXPECT_TRUE(is_gen_pentagonal(0));
    EXPECT_FALSE(is_gen_pentagonal(3));
}

TEST(Figurate, AgreesWithEnumeration)
{
    std::set<std::uint64_t> tri, pent;
    for (std::int64_t m = 0; triangular(m) <= 5000; ++m) tri.insert(static_cast<std::uint64_t>(triangular(m)));
    for (std::int64_t k = -100; k <= 100; ++k) pent.insert(static_cast<std::uint64_t>(gen_pentagonal(k)));
    for (std::uint64_t n = 0; n <= 5000; ++n) {
        EXPECT_EQ(is_triangular(n), tri.contains(n)) << n;
        EXPECT_EQ(is_gen_pentagonal(n), pent.contains(n)) << n;
    }
}

TEST(Representation, Examples)
{
    EXPECT_EQ(representation_count(0, PentPlusCPent{2}), 1u);
    EXPECT_EQ(representation_count(3, X2PlusDY2{2, std::set<int>{1, 5}, std::set<int>{1, 5}}), 4u);
    EXPECT_EQ(representation_count(2, TriPlusCPent{10}), 0u);
    EXPECT_EQ(representation_count(1, X2PlusDY2{1, std::nullopt, std::nullopt}), 4u);
    EXPECT_EQ(representation_count(6, Triangular{}), 1u);
    EXPECT_THROW(representation_count(1, PentPlusCPent{0}), std::invalid_argument);
}

TEST(Representation, PentPlusCPentMatchesThetaProduct)
{
    for (std::uint64_t c : {2, 6}) {
        const auto prod = eta_quotient({{1, 1}, {c, 1}}, 2000);
        for (std::uint64_t n = 0; n <= 2000; ++n) {
            ASSERT_EQ(Integer(static_cast<long>(signed_representation_sum(n, PentPlusCPent{c}))), prod.coefficient(n)) << c << " " << n;
        }
    }
}

TEST(Representation, TriPlusCPentMatchesThetaProduct)
{
    const auto prod = mul(theta_series(ThetaSpec::psi(), 2000), eta_quotient({{10, 1}}, 2000));
    for (std::uint64_t n = 0; n <= 2000; ++n) {
        ASSERT_EQ(Integer(static_cast<long>(signed_representation_sum(n, TriPlusCPent{10}))), prod.coefficient(n)) << n;
    }
}

TEST(Representation, CountsAgreeWithBruteForce)
{
    for (std::uint64_t n = 0; n <= 300; ++n) {
        std::uint64_t pp = 0, tp = 0, xy = 0;
        for (std::int64_t k = -30; k <= 30; ++k) {
            for (std::int64_t l = -30; l <= 30; ++l) {
                if (gen_pentagonal(k) + 2 * gen_pentagonal(l) == static_cast<std::int64_t>(n)) ++pp;
                if (l >= 0 && triangular(l) + 10 * gen_pentagonal(k) == static_cast<std::int64_t>(n)) ++tp;
                if (k * k + 3 * l * l == static_cast<std::int64_t>(n)) ++xy;
            }
        }
        EXPECT_EQ(representation_count(n, PentPlusCPent{2}), pp) << n;
        EXPECT_EQ(representation_count(n, TriPlusCPent{10}), tp) << n;
        EXPECT_EQ(representation_count(n, X2PlusDY2{3, std::nullopt, std::nullopt}), xy) << n;
    }
}
