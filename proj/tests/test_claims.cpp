#include <gtest/gtest.h>

#include <map>

#include <qseries/claims.hpp>

using namespace qseries;

namespace {

VerificationOutcome run(const std::string &id, std::optional<std::uint64_t> n_max = std::nullopt)
{
    const auto c = lookup_claim(id);
    return verify_claim(c, n_max.value_or(c.range_hint));
}

} // namespace

TEST(ClaimCatalog, FlagshipEntry)
{
    const auto c = lookup_claim("C-16");
    EXPECT_EQ(c.function, PartitionFunctionId::regular(2, 4, 5));
    EXPECT_EQ(c.step, 8u);
    EXPECT_EQ(c.offset, 7u);
    EXPECT_EQ(c.modulus, 40u);
    EXPECT_TRUE(std::holds_alternative<Vanishing>(c.kind));
    EXPECT_EQ(c.statement(), "b^2_{4,5}(8n+7) == 0 (mod 40)");
    EXPECT_THROW(lookup_claim("NOPE"), std::out_of_range);
}

TEST(ClaimCatalog, EveryGroupPresent)
{
    std::set<std::string> groups;
    for (const auto &c : expanded_claims()) groups.insert(c.group);
    for (int i = 1; i <= 22; ++i) {
        const auto g = std::string(i < 10 ? "C-0" : "C-") + std::to_string(i);
        EXPECT_TRUE(groups.contains(g)) << g;
    }
}

TEST(ClaimCatalog, IdsUnique)
{
    std::set<std::string> ids;
    for (const auto &c : expanded_claims()) EXPECT_TRUE(ids.insert(c.id).second) << c.id;
}

TEST(ClaimCatalog, DefaultPrimesComeFromLegendre)
{
    EXPECT_NO_THROW(lookup_claim("C-09a[p=5,k=0,m0=1]"));
    EXPECT_NO_THROW(lookup_claim("C-12[p=13,k=1,m0=1]"));
    EXPECT_NO_THROW(lookup_claim("C-19[p=7,j=1,i=6]"));
    EXPECT_NO_THROW(lookup_claim("C-13[j=1]"));
}

TEST(Families, ValidationRejectsBadParameters)
{
    const auto &f9 = lookup_family("C-09a");
    EXPECT_THROW(instantiate_family(f9, {{"p", 11}, {"k", 0}, {"m0", 1}}), std::invalid_argument);
    EXPECT_THROW(instantiate_family(f9, {{"p", 5}, {"k", 0}, {"m0", 5}}), std::invalid_argument);
    EXPECT_THROW(instantiate_family(f9, {{"p", 5}, {"k", 0}, {"m0", 0}}), std::invalid_argument);
    EXPECT_THROW(instantiate_family(f9, {{"p", 5}, {"k", 0}}), std::invalid_argument);
    EXPECT_THROW(instantiate_family(f9, {{"p", 9}, {"k", 0}, {"m0", 1}}), std::invalid_argument);
    EXPECT_THROW(instantiate_family(lookup_family("C-13y"), {{"j", 0}, {"y", 42}}), std::invalid_argument);
    EXPECT_THROW(instantiate_family(lookup_family("C-04"), {{"p", 5}, {"r", 0}}), std::invalid_argument);
    EXPECT_THROW(lookup_family("C-99"), std::out_of_range);
}

TEST(Families, ProgressionArithmetic)
{
    const auto c = instantiate_family(lookup_family("C-09a"), {{"p", 5}, {"k", 1}, {"m0", 2}});
    EXPECT_EQ(c.step, 16u * 125u * 5u);
    EXPECT_EQ(c.offset, 16u * 125u * 2u + 2u * 625u + 1u);
    const auto d = instantiate_family(lookup_family("C-13"), {{"j", 1}});
    EXPECT_EQ(d.step, 100u);
    EXPECT_EQ(d.offset, 54u);
}

TEST(Families, InstancesBeyondDefaultsHold)
{
    // Beyond the default instances: 7 and 13 also have (-2/p) = -1.
    for (std::int64_t p : {7, 13}) {
        const auto c = instantiate_family(lookup_family("C-09a"), {{"p", p}, {"k", 0}, {"m0", 3}});
        EXPECT_TRUE(verify_claim(c, 50).passed()) << p;
    }
    const auto c = instantiate_family(lookup_family("C-14t"), {{"j", 2}, {"t", 22}});
    EXPECT_TRUE(verify_claim(c, 4).passed());
}

TEST(ClaimVerification, Flagship)
{
    const auto o = run("C-16", 1000);
    EXPECT_TRUE(o.passed());
    EXPECT_EQ(o.checked_count, 1001u);
    EXPECT_TRUE(run("C-16v", 0).passed());
}

TEST(ClaimVerification, CharacterizationsBothDirections)
{
    for (const char *id : {"C-03", "C-08a", "C-08b", "C-11"}) EXPECT_TRUE(run(id, 2000).passed()) << id;
}

TEST(ClaimVerification, ScaledAndConstantClaims)
{
    for (const char *id : {"C-02", "C-05b", "C-05d", "C-06", "C-07d", "C-14[j=0]", "C-20", "C-22a"}) EXPECT_TRUE(run(id).passed()) << id;
}

TEST(ClaimVerification, IdentityLinks)
{
    EXPECT_TRUE(run("C-10a").passed());
    EXPECT_TRUE(run("C-10b").passed());
}

TEST(ClaimVerification, CorrectedVariantsHold)
{
    for (const char *id : {"C-04c[p=5,r=2]", "C-10g", "C-12c[p=13,k=0,m0=1]", "C-13c", "C-17c", "C-22c"}) {
        EXPECT_TRUE(run(id).passed()) << id;
    }
}

TEST(ClaimVerification, PrintedStatementsThatDoNotHold)
{
    // Recorded counterexamples; the coefficient values are confirmed by direct enumeration below.
    const std::map<std::string, std::uint64_t> witness{{"C-04[p=5,r=2]", 0}, {"C-10e", 1},          {"C-13[j=0]", 5},
                                                       {"C-17[j=0]", 2},     {"C-18", 2},           {"C-19[p=7,j=0,i=5]", 0},
                                                       {"C-22b", 1},         {"C-13y[j=0,y=41]", 0}};
    for (const auto &[id, n] : witness) {
        const auto o = run(id);
        ASSERT_EQ(o.status, Status::fail) << id;
        ASSERT_TRUE(o.witness) << id;
        EXPECT_EQ(o.witness->n, n) << id;
    }
}

TEST(ClaimVerification, CounterexamplesAgreeWithEnumeration)
{
    // b^2_{4,5}(19) = 5570, so C-18 at n = 2 is 2 mod 8.
    const auto b245 = PartitionFunctionId::regular(2, 4, 5);
    EXPECT_EQ(oracle_count(b245, 19), Integer(5570));
    // C-19 with p = 7, i = 5 at n = 0 asks about b^2_{4,5}(491).
    const auto s = series_of(b245, 491, CoefficientDomain::modulo(20));
    EXPECT_EQ(s.residue(491, 20), 10u);
    const Integer r = oracle_count(b245, 491) % 20;
    EXPECT_EQ(r, Integer(10));
}

TEST(ClaimVerification, ResultsAreCachedConsistently)
{
    SeriesCache cache;
    const auto c = lookup_claim("C-15[t=2]");
    const auto a = verify_claim(c, 300, &cache);
    const auto b = verify_claim(c, 300);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.checked_count, b.checked_count);
}

TEST(ClaimVerification, OrderBudget)
{
    const auto c = lookup_claim("C-12[p=13,k=1,m0=12]");
    EXPECT_FALSE(effective_n_max(c, 500, 200000));
    const auto d = lookup_claim("C-13[j=1]");
    EXPECT_EQ(*effective_n_max(d, 500, 200000), 500u);
    EXPECT_EQ(*effective_n_max(d, 5000, 200000), (200000u - 54u) / 100u);
}

TEST(ClaimJson, RoundTripWholeRegistry)
{
    for (const auto &c : expanded_claims()) {
        const auto j = claim_to_json(c);
        const auto back = claim_from_json(nlohmann::json::parse(j.dump()));
        EXPECT_EQ(claim_to_json(back).dump(), j.dump()) << c.id;
    }
}

TEST(ClaimJson, CustomClaimIsAccepted)
{
    const auto j = nlohmann::json::parse(R"({"id": "X-1", "function": "p", "step": 5, "offset": 4, "modulus": 5,
                                             "kind": {"type": "vanishing"}})");
    const auto c = claim_from_json(j);
    EXPECT_TRUE(verify_claim(c, 300).passed());
    EXPECT_EQ(c.statement(), "p(5n+4) == 0 (mod 5)");
}

TEST(ClaimJson, MalformedClaimsRejected)
{
    EXPECT_ANY_THROW(claim_from_json(nlohmann::json::parse(R"({"id": "X", "function": "q", "modulus": 5, "kind": {"type": "vanishing"}})")));
    EXPECT_ANY_THROW(claim_from_json(nlohmann::json::parse(R"({"id": "X", "function": "p", "modulus": 1, "kind": {"type": "vanishing"}})")));
    EXPECT_ANY_THROW(claim_from_json(nlohmann::json::parse(R"({"id": "X", "function": "p", "modulus": 5, "kind": {"type": "nope"}})")));
    EXPECT_ANY_THROW(claim_from_json(nlohmann::json::parse(R"({"id": "X", "function": "p", "step": 0, "modulus": 5, "kind": {"type": "vanishing"}})")));
}
