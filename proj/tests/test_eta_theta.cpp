#include <gtest/gtest.h>

#include <qseries/eta_theta.hpp>

using namespace qseries;

namespace {

const auto Z = CoefficientDomain::exact();

TruncatedSeries poch(std::uint64_t a, std::uint64_t b, std::size_t order) { return pochhammer_series({a, b}, order); }

} // namespace

TEST(EulerProduct, PentagonalExpansion)
{
    const auto f1 = euler_product(1, 7).densify(Z);
    EXPECT_EQ(f1, make_series({1, -1, -1, 0, 0, 1, 0, 1}, 7, Z));
}

TEST(EulerProduct, MatchesNaiveProduct)
{
    auto naive = TruncatedSeries::one(300, Z);
    for (std::size_t k = 1; k <= 300; ++k) naive = mul(naive, sub(TruncatedSeries::one(300, Z), shift(TruncatedSeries::one(300, Z), k)));
    EXPECT_EQ(euler_product(1, 300).densify(Z), naive);
    EXPECT_EQ(euler_product(3, 300).densify(Z), dilate(euler_product(1, 100).densify(Z), 3, 300));
}

TEST(Pochhammer, ResidueClassesMultiplyToDilatedEuler)
{
    auto prod = TruncatedSeries::one(60, Z);
    for (std::uint64_t a = 1; a <= 5; ++a) prod = mul(prod, poch(a, 5, 60));
    EXPECT_EQ(prod, eta_quotient({{1, 1}}, 60));
    EXPECT_EQ(poch(5, 5, 60), eta_quotient({{5, 1}}, 60));
}

TEST(Pochhammer, FactorBeyondOrderIsIgnored)
{
    EXPECT_EQ(poch(3, 5, 2), TruncatedSeries::one(2, Z));
    EXPECT_THROW(PochhammerSpec(0, 5), std::invalid_argument);
    EXPECT_THROW(PochhammerSpec(6, 5), std::invalid_argument);
}

TEST(EtaSpec, ParseAndCanonicalForm)
{
    const auto s = EtaQuotientSpec::parse(" 2:5, 1:-2 ,4:-2,1:0");
    EXPECT_EQ(s.to_string(), "1:-2,2:5,4:-2");
    EXPECT_EQ(s.to_math(), "f2^5/(f1^2 f4^2)");
    EXPECT_EQ(EtaQuotientSpec::parse(s.to_string()), s);
    EXPECT_EQ(EtaQuotientSpec::parse("1:1,1:-1").factors().size(), 0u);
    EXPECT_THROW(EtaQuotientSpec::parse("1"), std::invalid_argument);
    EXPECT_THROW(EtaQuotientSpec::parse("0:1"), std::invalid_argument);
    EXPECT_THROW(EtaQuotientSpec::parse("a:1"), std::invalid_argument);
    EXPECT_THROW(EtaQuotientSpec::parse("1:2,"), std::invalid_argument);
}

TEST(EtaQuotient, PartitionSeries)
{
    EXPECT_EQ(eta_quotient({{1, -1}}, 4), make_series({1, 1, 2, 3, 5}, 4, Z));
    EXPECT_EQ(eta_quotient({{1, -1}}, 100).coefficient(100), Integer("190569292"));
}

TEST(EtaQuotient, NegativeExponentInvertsPositive)
{
    const EtaQuotientSpec s{{1, 3}, {2, -2}, {5, 1}};
    EXPECT_EQ(mul(eta_quotient(s, 200), eta_quotient(s.pow(-1), 200)), TruncatedSeries::one(200, Z));
}

TEST(EtaQuotient, ResidueModeMatchesReduction)
{
    const EtaQuotientSpec s{{4, 2}, {5, 2}, {1, -2}, {20, -2}};
    EXPECT_TRUE(congruent_to_order(eta_quotient(s, 400, CoefficientDomain::modulo(40)), reduce(eta_quotient(s, 400), 40), 40, 400).passed());
}

TEST(EtaQuotient, FourthPowerCongruence)
{
    EXPECT_TRUE(congruent_to_order(eta_quotient({{1, 4}}, 200), eta_quotient({{2, 2}}, 200), 4, 200).passed());
}

TEST(EtaQuotient, DilationOfSpec)
{
    EXPECT_EQ(eta_quotient(EtaQuotientSpec{{1, 1}}.dilated(5), 100), dilate(eta_quotient({{1, 1}}, 20), 5, 100));
}

TEST(Theta, NamedFunctionsMatchEtaForms)
{
    for (auto kind : {ThetaSpec::phi(), ThetaSpec::psi(), ThetaSpec::f_neg_q()}) {
        EXPECT_EQ(theta_series(kind, 300), eta_quotient(theta_eta_form(kind.kind()), 300)) << kind.to_string();
    }
}

TEST(Theta, PhiMisprintDiffersAtTwo)
{
    const auto wrong = eta_quotient({{2, 1}, {1, -2}, {4, -2}}, 10);
    const auto phi = theta_series(ThetaSpec::phi(), 10);
    EXPECT_EQ(wrong.coefficient(1), phi.coefficient(1));
    EXPECT_NE(wrong.coefficient(2), phi.coefficient(2));
}

TEST(Theta, GeneralForm)
{
    // f(-q, -q^2) is f(-q); f(q, q^2) is supported on generalised pentagonal numbers.
    EXPECT_EQ(theta_series(ThetaSpec::general(-1, {1, 1}, -1, {2, 1}), 50), eta_quotient({{1, 1}}, 50));
    const auto t = theta_series(ThetaSpec::general(1, {2, 2}, 1, {4, 2}), 40);
    for (std::size_t n = 0; n <= 40; ++n) {
        const bool pent = n == 0 || n == 1 || n == 2 || n == 5 || n == 7 || n == 12 || n == 15 || n == 22 || n == 26 || n == 35 || n == 40;
        EXPECT_EQ(t.coefficient(n), Integer(pent ? 1 : 0)) << n;
    }
}

TEST(Theta, RejectsBadParameters)
{
    EXPECT_THROW(ThetaSpec::general(2, {1, 1}, 1, {1, 1}), std::invalid_argument);
    EXPECT_THROW(ThetaSpec::general(1, {1, 2}, 1, {1, 1}), std::invalid_argument);
    EXPECT_THROW(ThetaSpec::general(1, {0, 1}, 1, {0, 1}), std::invalid_argument);
    EXPECT_THROW(ThetaSpec::general(1, {-1, 1}, 1, {2, 1}), std::invalid_argument);
    EXPECT_THROW(theta_eta_form(ThetaSpec::Kind::general), std::invalid_argument);
}

TEST(RogersRamanujan, DefinitionRearranged)
{
    const auto r = rogers_ramanujan_series(100);
    EXPECT_EQ(mul(r, mul(poch(2, 5, 100), poch(3, 5, 100))), mul(poch(1, 5, 100), poch(4, 5, 100)));
    EXPECT_EQ(r.coefficient(0), Integer(1));
}

TEST(RogersRamanujan, DilatedAndResidual)
{
    const auto r = rogers_ramanujan_series(40);
    EXPECT_EQ(rogers_ramanujan_series(200, Z, 5), dilate(r, 5, 200));
    EXPECT_TRUE(congruent_to_order(rogers_ramanujan_series(100, CoefficientDomain::modulo(9)), reduce(rogers_ramanujan_series(100), 9), 9, 100).passed());
}
