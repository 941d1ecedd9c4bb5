#pragma once

// Full-suite runner: identities, claims, oracle cross-checks, negative
// controls and property suites, with a deterministic structured report.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include <qseries/claims.hpp>
#include <qseries/identities.hpp>
#include <qseries/outcome.hpp>
#include <qseries/partition_functions.hpp>
#include <qseries/properties.hpp>
#include <qseries/series_cache.hpp>

namespace qseries {

inline constexpr const char *tool_name = "qseries-verify";
inline constexpr const char *tool_version = "1.0.0";

enum class Section { identity, claim, oracle, control, property };

inline std::string to_string(Section s)
{
    constexpr const char *names[] = {"identity", "claim", "oracle", "control", "property"};
    return names[static_cast<int>(s)];
}

inline Section section_from_string(const std::string &s)
{
    for (int i = 0; i <= static_cast<int>(Section::property); ++i) {
        if (to_string(static_cast<Section>(i)) == s) return static_cast<Section>(i);
    }
    throw std::invalid_argument("unknown section '" + s + "'");
}

struct RunConfig {
    // Overrides; unset means each entry's own default.
    std::optional<std::size_t> identity_order;
    std::optional<std::uint64_t> claim_n_max;
    std::size_t order_budget = 200000;
    std::uint64_t oracle_up_to = 120;
    unsigned jobs = 1;
    std::uint64_t seed = default_property_seed;
    std::uint64_t property_cases = 100;
    // Empty selections mean everything.
    std::vector<std::string> claim_ids;
    std::vector<std::string> identity_ids;
    std::vector<std::string> tags;
    std::vector<ClaimSpec> extra_claims;
    bool omit_timing = false;

    bool selective() const { return !claim_ids.empty() || !identity_ids.empty() || !tags.empty(); }
};

struct EntryResult {
    Section section = Section::claim;
    std::string id;
    std::string anchor;
    std::string statement;
    std::vector<std::string> tags;
    bool informational = false;
    // Order or n range the check covered.
    std::uint64_t range = 0;
    VerificationOutcome outcome;

    // Does this entry make the run fail?
    bool blocking_failure() const { return !informational && outcome.status == Status::fail; }
};

struct Report {
    std::string tool = tool_name;
    std::string version = tool_version;
    RunConfig config;
    std::vector<EntryResult> entries;
    double total_ms = 0.0;

    bool all_pass() const
    {
        return std::none_of(entries.begin(), entries.end(), [](const EntryResult &e) { return e.blocking_failure(); });
    }

    std::size_t count(Status s, bool informational) const
    {
        return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [&](const EntryResult &e) {
            return e.outcome.status == s && e.informational == informational;
        }));
    }
};

// Partition functions the claim catalog depends on, with hypothesis-valid
// family members spelled out.
inline std::vector<PartitionFunctionId> oracle_ids()
{
    using PF = PartitionFunctionId;
    std::vector<PF> ids;
    auto push = [&](PF id) {
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    };
    for (std::uint64_t t = 1; 2 * t <= 10; ++t) {
        if (t % 3 != 0) push(PF::regular(2, 3, 2 * t));
    }
    push(PF::regular(2, 3, 4));
    push(PF::regular(2, 3, 8));
    for (std::uint64_t t = 1; 4 * t <= 8; ++t) push(PF::regular(4, 3, 4 * t));
    push(PF::regular(4, 3, 2));
    push(PF::regular(4, 2, 5));
    push(PF::regular(2, 2, 5));
    for (std::uint64_t t = 1; 4 * t <= 12; ++t) push(PF::regular(2, 5, 4 * t));
    push(PF::regular(2, 4, 5));
    push(PF::regular(2, 8, 5));
    for (std::uint64_t t = 1; 3 * t <= 9; t += 2) push(PF::regular(3, 2, 3 * t));
    push(PF::regular(1, 2, 3));
    push(PF::regular(1, 3, 4));
    push(PF::regular(3, 3));
    push(PF::unrestricted());
    return ids;
}

struct NegativeControl {
    std::string id;
    std::string description;
    std::function<VerificationOutcome(SeriesCache *)> run;
};

// Each control runs a deliberately falsified statement. It succeeds when the
// verifier rejects it with a witness at n <= 50.
inline std::vector<NegativeControl> negative_controls()
{
    std::vector<NegativeControl> out;
    auto mutate = [&](const std::string &id, const std::string &what, std::function<void(ClaimSpec &)> change,
                      std::uint64_t n_max) {
        auto c = lookup_claim(id);
        change(c);
        c.id = "NC-" + id;
        out.push_back({c.id, what + ": " + c.statement(), [c, n_max](SeriesCache *cache) { return verify_claim(c, n_max, cache); }});
    };
    mutate("C-16", "vanishing claim at a doubled modulus", [](ClaimSpec &c) { c.modulus = 80; }, 1000);
    mutate("C-02", "scaled-equality claim with the wrong scale", [](ClaimSpec &c) { std::get<EqualsScaled>(c.kind).scale = 3; }, 500);
    mutate("C-03", "characterization with the wrong residue", [](ClaimSpec &c) {
        std::get<Characterization>(c.kind).residue_if_representable = 0;
    }, 2000);
    mutate("C-11", "characterization over the wrong form", [](ClaimSpec &c) {
        std::get<Characterization>(c.kind).form = PentPlusCPent{2};
    }, 2000);
    mutate("C-07d", "constant-value claim with the wrong constant", [](ClaimSpec &c) {
        std::get<ConstantValue>(c.kind).value = 2;
    }, 500);
    mutate("C-05a", "vanishing claim moved to another progression", [](ClaimSpec &c) { c.offset = 0; }, 500);
    {
        const auto &l01 = lookup_identity("L01");
        const auto perturbed = l01.rhs() + SeriesExpr::constant(Integer(1)).shifted(1);
        out.push_back({"NC-L01", "identity with +q added to the right side",
                       [l01, perturbed](SeriesCache *cache) { return verify_expr_equality(l01.lhs, perturbed, 200, cache); }});
    }
    for (const auto &spec : catalog_identities()) {
        if (!spec.misprinted_rhs) continue;
        out.push_back({"NC-" + spec.id + "-misprint", "identity with the misprinted right side",
                       [spec](SeriesCache *cache) { return verify_expr_equality(spec.lhs, *spec.misprinted_rhs, 200, cache); }});
    }
    return out;
}

namespace detail {

inline bool claim_selected(const ClaimSpec &c, const RunConfig &cfg)
{
    if (!cfg.selective()) return true;
    for (const auto &s : cfg.claim_ids) {
        if (c.id == s || c.group == s || c.id.starts_with(s + "[")) return true;
    }
    for (const auto &t : cfg.tags) {
        if (c.has_tag(t)) return true;
    }
    return false;
}

inline bool identity_selected(const IdentitySpec &s, const RunConfig &cfg)
{
    if (!cfg.selective()) return true;
    if (std::find(cfg.identity_ids.begin(), cfg.identity_ids.end(), s.id) != cfg.identity_ids.end()) return true;
    return std::find(cfg.tags.begin(), cfg.tags.end(), "identity") != cfg.tags.end();
}

inline bool section_tag_selected(const RunConfig &cfg, const std::string &tag)
{
    return !cfg.selective() || std::find(cfg.tags.begin(), cfg.tags.end(), tag) != cfg.tags.end();
}

inline void require_known_ids(const RunConfig &cfg, const std::vector<ClaimSpec> &claims)
{
    for (const auto &s : cfg.claim_ids) {
        const bool known = std::any_of(claims.begin(), claims.end(), [&](const ClaimSpec &c) {
            return c.id == s || c.group == s || c.id.starts_with(s + "[");
        });
        if (!known) throw std::out_of_range("unknown claim id '" + s + "'");
    }
    for (const auto &s : cfg.identity_ids) lookup_identity(s);
}

struct Task {
    EntryResult entry;
    std::function<VerificationOutcome()> run;
};

inline void run_tasks(std::vector<Task> &tasks, unsigned jobs)
{
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                tasks[i].entry.outcome = tasks[i].run();
            } catch (const std::exception &e) {
                tasks[i].entry.outcome = VerificationOutcome::with_status(Status::fail, std::string("error: ") + e.what());
            }
        }
    };
    jobs = std::max(1u, jobs);
    if (jobs == 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
}

} // namespace detail

// Runs everything the configuration selects. Unknown ids throw
// std::out_of_range before any work starts.
inline Report verify_all(const RunConfig &cfg)
{
    const auto start = std::chrono::steady_clock::now();
    auto claims = expanded_claims();
    claims.insert(claims.end(), cfg.extra_claims.begin(), cfg.extra_claims.end());
    detail::require_known_ids(cfg, claims);

    SeriesCache cache;
    std::vector<detail::Task> tasks;

    for (const auto &spec : catalog_identities()) {
        if (!detail::identity_selected(spec, cfg)) continue;
        const auto order = cfg.identity_order.value_or(spec.default_order);
        EntryResult e;
        e.section = Section::identity;
        e.id = spec.id;
        e.anchor = spec.anchor;
        e.statement = spec.lhs.to_string() + " = " + spec.rhs().to_string();
        e.tags = {"identity", to_string(spec.check_kind)};
        e.range = order;
        tasks.push_back({e, [&spec, order, &cache] {
                             auto o = verify_identity(spec, order, &cache);
                             if (o.passed() && spec.dissection_modulus > 1) {
                                 auto s = verify_dissection_structure(spec, std::min<std::size_t>(order, 300), &cache);
                                 if (!s.passed()) return s;
                             }
                             return o;
                         }});
    }

    for (const auto &c : claims) {
        if (!detail::claim_selected(c, cfg)) continue;
        EntryResult e;
        e.section = Section::claim;
        e.id = c.id;
        e.anchor = c.anchor;
        e.statement = c.statement();
        e.tags = c.tags;
        e.informational = c.informational;
        const auto n_max = effective_n_max(c, cfg.claim_n_max.value_or(c.range_hint), cfg.order_budget);
        if (!n_max) {
            e.outcome = VerificationOutcome::with_status(Status::skipped, "offset " + std::to_string(c.offset) + " exceeds order budget "
                                                                              + std::to_string(cfg.order_budget));
            tasks.push_back({e, [o = e.outcome] { return o; }});
            continue;
        }
        e.range = *n_max;
        if (!std::holds_alternative<IdentityLink>(c.kind)) {
            cache.reserve(generating_function(c.function), CoefficientDomain::modulo(c.modulus), claim_order(c, *n_max));
        }
        tasks.push_back({e, [c, n = *n_max, &cache] { return verify_claim(c, n, &cache); }});
    }

    if (detail::section_tag_selected(cfg, "oracle")) {
        for (const auto &id : oracle_ids()) {
            EntryResult e;
            e.section = Section::oracle;
            e.id = "oracle:" + id.to_string();
            e.anchor = "generating function against direct enumeration";
            e.statement = "series coefficients of " + id.to_math() + " equal partition counts";
            e.tags = {"oracle"};
            e.range = cfg.oracle_up_to;
            tasks.push_back({e, [id, n = cfg.oracle_up_to] { return cross_validate(id, n); }});
        }
        // Outside the coprime hypothesis the two definitions part ways.
        EntryResult e;
        e.section = Section::oracle;
        const auto id = PartitionFunctionId::regular(3, 2, 6);
        e.id = "oracle:" + id.to_string();
        e.anchor = "non-coprime pair";
        e.statement = "series coefficients of " + id.to_math() + " versus partition counts";
        e.tags = {"oracle"};
        e.informational = true;
        e.range = cfg.oracle_up_to;
        tasks.push_back({e, [id, n = cfg.oracle_up_to] { return cross_validate(id, n); }});
    }

    if (detail::section_tag_selected(cfg, "control")) {
        for (auto &nc : negative_controls()) {
            EntryResult e;
            e.section = Section::control;
            e.id = nc.id;
            e.anchor = "negative control";
            e.statement = nc.description;
            e.tags = {"control"};
            e.range = 50;
            tasks.push_back({e, [run = nc.run, &cache] {
                                 auto o = run(&cache);
                                 if (o.status == Status::fail && o.witness && o.witness->n <= 50) {
                                     auto r = VerificationOutcome::pass_with(o.checked_count);
                                     r.witness = o.witness;
                                     r.reason = "rejected as expected";
                                     return r;
                                 }
                                 auto r = VerificationOutcome::with_status(Status::fail, "falsified statement was not rejected by n = 50");
                                 r.witness = o.witness;
                                 r.checked_count = o.checked_count;
                                 return r;
                             }});
        }
    }

    if (detail::section_tag_selected(cfg, "property")) {
        using Suite = PropertyResult (*)(std::uint64_t, std::uint64_t);
        const std::pair<const char *, Suite> suites[] = {{"ring_axioms", ring_axioms},
                                                         {"inverse_round_trip", inverse_round_trip},
                                                         {"dissection_reassembly", dissection_reassembly},
                                                         {"exact_vs_mod", exact_vs_mod},
                                                         {"sparse_vs_dense", sparse_vs_dense}};
        std::uint64_t offset = 0;
        for (const auto &[name, suite] : suites) {
            EntryResult e;
            e.section = Section::property;
            e.id = std::string("property:") + name;
            e.anchor = "randomised, seed " + std::to_string(cfg.seed + offset);
            e.statement = name;
            e.tags = {"property"};
            e.range = cfg.property_cases;
            tasks.push_back({e, [suite, seed = cfg.seed + offset, n = cfg.property_cases] {
                                 const auto start = std::chrono::steady_clock::now();
                                 auto o = suite(seed, n).outcome;
                                 o.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                                 return o;
                             }});
            ++offset;
        }
    }

    detail::run_tasks(tasks, cfg.jobs);

    Report r;
    r.config = cfg;
    for (auto &t : tasks) r.entries.push_back(std::move(t.entry));
    r.total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (cfg.omit_timing) {
        r.total_ms = 0;
        for (auto &e : r.entries) e.outcome.wall_ms = 0;
    }
    return r;
}

// Structured report. Keys are emitted in a fixed order; timing fields are
// dropped when the configuration asks for it.
inline nlohmann::ordered_json report_to_json(const Report &r)
{
    using nlohmann::ordered_json;
    const auto &c = r.config;
    ordered_json cfg{{"identity_order", c.identity_order ? ordered_json(*c.identity_order) : ordered_json(nullptr)},
                     {"claim_n_max", c.claim_n_max ? ordered_json(*c.claim_n_max) : ordered_json(nullptr)},
                     {"order_budget", c.order_budget},
                     {"oracle_up_to", c.oracle_up_to},
                     {"seed", c.seed},
                     {"property_cases", c.property_cases},
                     {"claim_ids", c.claim_ids},
                     {"identity_ids", c.identity_ids},
                     {"tags", c.tags},
                     {"extra_claims", ordered_json::array()},
                     {"omit_timing", c.omit_timing}};
    for (const auto &x : c.extra_claims) cfg["extra_claims"].push_back(claim_to_json(x));
    ordered_json entries = ordered_json::array();
    for (const auto &e : r.entries) {
        ordered_json j{{"section", to_string(e.section)},
                       {"id", e.id},
                       {"anchor", e.anchor},
                       {"statement", e.statement},
                       {"tags", e.tags},
                       {"informational", e.informational},
                       {"range", e.range},
                       {"status", std::string(to_string(e.outcome.status))},
                       {"checked_count", e.outcome.checked_count}};
        if (e.outcome.witness) {
            j["witness"] = {{"n", e.outcome.witness->n}, {"expected", e.outcome.witness->expected}, {"actual", e.outcome.witness->actual}};
        }
        if (!e.outcome.reason.empty()) j["reason"] = e.outcome.reason;
        if (!c.omit_timing) j["wall_ms"] = e.outcome.wall_ms;
        entries.push_back(std::move(j));
    }
    ordered_json summary{{"pass", r.count(Status::pass, false)},
                         {"fail", r.count(Status::fail, false)},
                         {"not_comparable", r.count(Status::not_comparable, false)},
                         {"skipped", r.count(Status::skipped, false)},
                         {"informational_pass", r.count(Status::pass, true)},
                         {"informational_fail", r.count(Status::fail, true)},
                         {"informational_other", r.count(Status::not_comparable, true) + r.count(Status::skipped, true)},
                         {"all_pass", r.all_pass()}};
    ordered_json doc{{"tool", r.tool}, {"version", r.version}, {"config", cfg}, {"summary", summary}, {"entries", entries}};
    if (!c.omit_timing) doc["total_ms"] = r.total_ms;
    return doc;
}

template <typename Json>
Report report_from_json(const Json &doc)
{
    Report r;
    r.tool = doc.at("tool").template get<std::string>();
    r.version = doc.at("version").template get<std::string>();
    const auto &c = doc.at("config");
    if (!c.at("identity_order").is_null()) r.config.identity_order = c.at("identity_order").template get<std::size_t>();
    if (!c.at("claim_n_max").is_null()) r.config.claim_n_max = c.at("claim_n_max").template get<std::uint64_t>();
    r.config.order_budget = c.at("order_budget").template get<std::size_t>();
    r.config.oracle_up_to = c.at("oracle_up_to").template get<std::uint64_t>();
    r.config.seed = c.at("seed").template get<std::uint64_t>();
    r.config.property_cases = c.at("property_cases").template get<std::uint64_t>();
    r.config.claim_ids = c.at("claim_ids").template get<std::vector<std::string>>();
    r.config.identity_ids = c.at("identity_ids").template get<std::vector<std::string>>();
    r.config.tags = c.at("tags").template get<std::vector<std::string>>();
    for (const auto &x : c.at("extra_claims")) r.config.extra_claims.push_back(claim_from_json(x));
    r.config.omit_timing = c.at("omit_timing").template get<bool>();
    r.total_ms = doc.value("total_ms", 0.0);
    for (const auto &j : doc.at("entries")) {
        EntryResult e;
        e.section = section_from_string(j.at("section").template get<std::string>());
        e.id = j.at("id").template get<std::string>();
        e.anchor = j.at("anchor").template get<std::string>();
        e.statement = j.at("statement").template get<std::string>();
        e.tags = j.at("tags").template get<std::vector<std::string>>();
        e.informational = j.at("informational").template get<bool>();
        e.range = j.at("range").template get<std::uint64_t>();
        e.outcome.status = status_from_string(j.at("status").template get<std::string>());
        e.outcome.checked_count = j.at("checked_count").template get<std::uint64_t>();
        if (j.contains("witness")) {
            const auto &w = j.at("witness");
            e.outcome.witness = Witness{w.at("n").template get<std::uint64_t>(), w.at("expected").template get<std::string>(),
                                        w.at("actual").template get<std::string>()};
        }
        e.outcome.reason = j.value("reason", std::string());
        e.outcome.wall_ms = j.value("wall_ms", 0.0);
        r.entries.push_back(std::move(e));
    }
    return r;
}

// Equality of everything except timing and parallelism.
inline bool same_results(const Report &a, const Report &b)
{
    if (a.tool != b.tool || a.version != b.version || a.entries.size() != b.entries.size()) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        const auto &x = a.entries[i];
        const auto &y = b.entries[i];
        if (x.section != y.section || x.id != y.id || x.anchor != y.anchor || x.statement != y.statement || x.tags != y.tags
            || x.informational != y.informational || x.range != y.range || x.outcome.status != y.outcome.status
            || x.outcome.checked_count != y.outcome.checked_count || x.outcome.witness != y.outcome.witness
            || x.outcome.reason != y.outcome.reason) {
            return false;
        }
    }
    return true;
}

inline std::string report_to_text(const Report &r)
{
    std::string out;
    for (const auto &e : r.entries) {
        std::string line = to_string(e.section) + "  " + e.id + "  " + std::string(to_string(e.outcome.status));
        if (e.informational) line += " (informational)";
        line += "  checked=" + std::to_string(e.outcome.checked_count);
        if (e.outcome.witness) {
            line += "  witness n=" + std::to_string(e.outcome.witness->n) + " expected=" + e.outcome.witness->expected
                    + " actual=" + e.outcome.witness->actual;
        }
        if (!e.outcome.reason.empty()) line += "  [" + e.outcome.reason + "]";
        if (!r.config.omit_timing) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "  %.1fms", e.outcome.wall_ms);
            line += buf;
        }
        out += line + "\n    " + e.statement + "\n";
    }
    out += "summary: pass=" + std::to_string(r.count(Status::pass, false)) + " fail=" + std::to_string(r.count(Status::fail, false))
           + " skipped=" + std::to_string(r.count(Status::skipped, false)) + " not_comparable="
           + std::to_string(r.count(Status::not_comparable, false)) + " informational_fail="
           + std::to_string(r.count(Status::fail, true)) + (r.all_pass() ? "  ALL PASS" : "  FAILURES") + "\n";
    return out;
}

} // namespace qseries
