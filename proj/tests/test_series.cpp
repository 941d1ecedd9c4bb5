#include <gtest/gtest.h>

#include <qseries/series.hpp>

using namespace qseries;

namespace {

const auto Z = CoefficientDomain::exact();

std::vector<std::string> coeffs(const TruncatedSeries &s)
{
    std::vector<std::string> out;
    for (std::size_t n = 0; n <= s.order(); ++n) out.push_back(s.coefficient(n).get_str());
    return out;
}

using V = std::vector<std::string>;

} // namespace

TEST(Series, ConstantIsPaddedToOrder)
{
    EXPECT_EQ(coeffs(make_series({1}, 3, Z)), (V{"1", "0", "0", "0"}));
}

TEST(Series, ResidueConstructionReduces)
{
    EXPECT_EQ(coeffs(make_series({5, -1}, 1, CoefficientDomain::modulo(3))), (V{"2", "2"}));
}

TEST(Series, ExtraCoefficientsAreDropped)
{
    EXPECT_EQ(coeffs(make_series({1, 2, 3}, 1, Z)), (V{"1", "2"}));
}

TEST(Series, NegativeOrderRejected)
{
    EXPECT_THROW(make_series({1}, -1, Z), std::invalid_argument);
}

TEST(Series, ModulusBounds)
{
    EXPECT_THROW(CoefficientDomain::modulo(1), std::invalid_argument);
    EXPECT_THROW(CoefficientDomain::modulo(max_modulus + 1), std::invalid_argument);
    EXPECT_NO_THROW(CoefficientDomain::modulo(max_modulus));
}

TEST(Series, AddAndModularCancellation)
{
    EXPECT_EQ(coeffs(add(make_series({1, 1}, 1, Z), make_series({1, -1}, 1, Z))), (V{"2", "0"}));
    const auto m2 = CoefficientDomain::modulo(2);
    EXPECT_EQ(coeffs(add(make_series({1, 1}, 1, m2), make_series({1, 1}, 1, m2))), (V{"0", "0"}));
}

TEST(Series, MixedDomainsRejected)
{
    EXPECT_THROW(add(make_series({1}, 2, Z), make_series({1}, 2, CoefficientDomain::modulo(5))), std::invalid_argument);
}

TEST(Series, OrderOfResultIsMinimum)
{
    EXPECT_EQ(add(make_series({1}, 5, Z), make_series({1}, 3, Z)).order(), 3u);
    EXPECT_EQ(mul(make_series({1}, 5, Z), make_series({1}, 2, Z)).order(), 2u);
}

TEST(Series, Multiplication)
{
    EXPECT_EQ(coeffs(mul(make_series({1, 1}, 2, Z), make_series({1, -1}, 2, Z))), (V{"1", "0", "-1"}));
    EXPECT_EQ(coeffs(mul(make_series({1, 1, 1, 1, 1, 1}, 5, Z), make_series({1, -1}, 5, Z))), (V{"1", "0", "0", "0", "0", "0"}));
}

TEST(Series, Inverse)
{
    EXPECT_EQ(coeffs(invert(make_series({1, -1}, 4, Z))), (V{"1", "1", "1", "1", "1"}));
    const auto m4 = CoefficientDomain::modulo(4);
    EXPECT_EQ(coeffs(invert(make_series({1, 2}, 3, m4))), (V{"1", "2", "0", "0"}));
}

TEST(Series, InverseNeedsUnitConstant)
{
    EXPECT_THROW(invert(make_series({2, 1}, 3, Z)), std::domain_error);
    EXPECT_THROW(invert(make_series({0, 1}, 3, CoefficientDomain::modulo(7))), std::domain_error);
    EXPECT_THROW(invert(make_series({2, 1}, 3, CoefficientDomain::modulo(4))), std::domain_error);
    EXPECT_NO_THROW(invert(make_series({3, 1}, 3, CoefficientDomain::modulo(4))));
}

TEST(Series, Powers)
{
    const auto a = make_series({1, 1}, 4, Z);
    EXPECT_EQ(coeffs(pow(a, 2)), (V{"1", "2", "1", "0", "0"}));
    EXPECT_EQ(pow(a, -1), invert(a));
    EXPECT_EQ(pow(a, 0), TruncatedSeries::one(4, Z));
}

TEST(Series, Dilation)
{
    EXPECT_EQ(coeffs(dilate(make_series({1, 1}, 4, Z), 2, 4)), (V{"1", "0", "1", "0", "0"}));
    const auto a = make_series({3, 1, 4, 1, 5, 9, 2, 6}, 7, Z);
    EXPECT_EQ(dilate(dilate(a, 2), 3), dilate(a, 6));
    EXPECT_THROW(dilate(a, 0), std::invalid_argument);
}

TEST(Series, ArithmeticProgressionExtraction)
{
    const auto a = make_series({1, 2, 3, 4}, 3, Z);
    EXPECT_EQ(coeffs(extract_ap(a, 2, 1)), (V{"2", "4"}));
    EXPECT_EQ(extract_ap(a, 1, 0), a);
    EXPECT_THROW(extract_ap(a, 2, 2), std::invalid_argument);
    EXPECT_THROW(extract_ap(a, 0, 0), std::invalid_argument);
}

TEST(Series, ShiftRaisesOrder)
{
    EXPECT_EQ(coeffs(shift(make_series({1, 2, 3}, 2, Z), 1)), (V{"0", "1", "2", "3"}));
}

TEST(Series, CongruenceWitness)
{
    auto o = congruent_to_order(make_series({1}, 1, Z), make_series({1, 2}, 1, Z), 3, 1);
    ASSERT_EQ(o.status, Status::fail);
    ASSERT_TRUE(o.witness);
    EXPECT_EQ(o.witness->n, 1u);
    EXPECT_EQ(o.witness->expected, "2");
    EXPECT_EQ(o.witness->actual, "0");
    const auto a = make_series({7, -3, 11}, 2, Z);
    EXPECT_TRUE(congruent_to_order(a, a, 13, 2).passed());
}

TEST(Series, ExactModAgreementOnLargeValues)
{
    std::vector<Integer> big{Integer("123456789012345678901234567890"), Integer("-98765432109876543210"), Integer(7)};
    const auto a = make_series(big, 2, Z);
    const auto m = 1000003u;
    EXPECT_TRUE(congruent_to_order(reduce(mul(a, a), m), mul(reduce(a, m), reduce(a, m)), m, 2).passed());
}
