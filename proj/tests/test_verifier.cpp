#include <gtest/gtest.h>

#include <qseries/verifier.hpp>

using namespace qseries;

namespace {

const Report &full_report()
{
    static const Report r = [] {
        RunConfig c;
        c.omit_timing = true;
        return verify_all(c);
    }();
    return r;
}

} // namespace

TEST(Properties, AllSuitesPass)
{
    for (const auto &p : run_property_suites(default_property_seed, 100)) {
        EXPECT_TRUE(p.outcome.passed()) << p.name << " " << p.outcome.reason;
        EXPECT_EQ(p.cases, 100u);
    }
}

TEST(Properties, OtherSeedsPass)
{
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        for (const auto &p : run_property_suites(seed, 30)) EXPECT_TRUE(p.outcome.passed()) << p.name << " seed " << seed;
    }
}

TEST(NegativeControls, EachMutationIsRejectedEarly)
{
    SeriesCache cache;
    const auto controls = negative_controls();
    EXPECT_GE(controls.size(), 6u);
    for (const auto &nc : controls) {
        const auto o = nc.run(&cache);
        ASSERT_EQ(o.status, Status::fail) << nc.id;
        ASSERT_TRUE(o.witness) << nc.id;
        EXPECT_LE(o.witness->n, 50u) << nc.id;
    }
}

TEST(Verifier, FullReportSections)
{
    const auto &r = full_report();
    std::map<Section, std::size_t> counts;
    for (const auto &e : r.entries) ++counts[e.section];
    EXPECT_EQ(counts[Section::identity], catalog_identities().size());
    EXPECT_EQ(counts[Section::claim], expanded_claims().size());
    EXPECT_EQ(counts[Section::oracle], oracle_ids().size() + 1);
    EXPECT_EQ(counts[Section::control], negative_controls().size());
    EXPECT_EQ(counts[Section::property], 5u);
    for (const auto &e : r.entries) {
        if (e.section != Section::claim) {
            EXPECT_NE(e.outcome.status, Status::fail) << e.id;
        }
    }
}

TEST(Verifier, FailuresCarryWitnesses)
{
    for (const auto &e : full_report().entries) {
        if (e.outcome.status == Status::fail) EXPECT_TRUE(e.outcome.witness) << e.id;
    }
}

TEST(Verifier, StructuredReportRoundTrips)
{
    const auto &r = full_report();
    const auto text = report_to_json(r).dump();
    const auto back = report_from_json(nlohmann::json::parse(text));
    EXPECT_TRUE(same_results(r, back));
    EXPECT_EQ(report_to_json(back).dump(), text);
}

TEST(Verifier, TimingOmittedWhenAsked)
{
    const auto j = report_to_json(full_report());
    EXPECT_FALSE(j.contains("total_ms"));
    for (const auto &e : j.at("entries")) EXPECT_FALSE(e.contains("wall_ms"));
}

TEST(Verifier, DeterministicAcrossParallelism)
{
    RunConfig c;
    c.omit_timing = true;
    c.jobs = 4;
    const auto parallel = verify_all(c);
    EXPECT_EQ(report_to_json(parallel).dump(), report_to_json(full_report()).dump());
}

TEST(Verifier, SelectionByIdGroupAndFamily)
{
    RunConfig c;
    c.claim_ids = {"C-16"};
    auto r = verify_all(c);
    ASSERT_EQ(r.entries.size(), 2u);
    EXPECT_TRUE(r.all_pass());

    c.claim_ids = {"C-13y"};
    r = verify_all(c);
    EXPECT_EQ(r.entries.size(), 4u);

    c.claim_ids = {};
    c.identity_ids = {"L16"};
    r = verify_all(c);
    ASSERT_EQ(r.entries.size(), 1u);
    EXPECT_EQ(r.entries[0].section, Section::identity);
    EXPECT_TRUE(r.all_pass());
}

TEST(Verifier, TagFilterGivesSubset)
{
    RunConfig c;
    c.tags = {"family"};
    const auto r = verify_all(c);
    EXPECT_GT(r.entries.size(), 0u);
    EXPECT_LT(r.entries.size(), full_report().entries.size());
    for (const auto &e : r.entries) EXPECT_NE(std::find(e.tags.begin(), e.tags.end(), "family"), e.tags.end()) << e.id;
}

TEST(Verifier, UnknownIdsThrow)
{
    RunConfig c;
    c.claim_ids = {"NOPE"};
    EXPECT_THROW(verify_all(c), std::out_of_range);
    c.claim_ids = {};
    c.identity_ids = {"L99"};
    EXPECT_THROW(verify_all(c), std::out_of_range);
}

TEST(Verifier, ExtraClaimsRun)
{
    RunConfig c;
    c.extra_claims.push_back(claim_from_json(nlohmann::json::parse(
        R"({"id": "X-7", "function": "p", "step": 7, "offset": 5, "modulus": 7, "kind": {"type": "vanishing"}})")));
    c.claim_ids = {"X-7"};
    const auto r = verify_all(c);
    ASSERT_EQ(r.entries.size(), 1u);
    EXPECT_TRUE(r.all_pass());
}

TEST(Verifier, BudgetSkipsAreReported)
{
    RunConfig c;
    c.claim_ids = {"C-12[p=13,k=1,m0=12]"};
    const auto r = verify_all(c);
    ASSERT_EQ(r.entries.size(), 1u);
    EXPECT_EQ(r.entries[0].outcome.status, Status::skipped);
    EXPECT_TRUE(r.all_pass());
}
