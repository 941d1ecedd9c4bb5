#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <qseries/qseries.hpp>

namespace {

using nlohmann::ordered_json;
using namespace qseries;

enum Exit { ok = 0, failed = 1, usage = 2 };

struct Options {
    std::optional<std::int64_t> order;
    std::optional<std::uint64_t> mod;
    std::optional<std::uint64_t> n_max;
    unsigned jobs = 1;
    std::string format = "text";
    std::vector<std::string> claims;
    std::vector<std::string> identities;
    std::vector<std::string> tags;
    std::string claims_file;
    std::size_t budget = 200000;
    std::uint64_t seed = default_property_seed;
    bool omit_timing = false;
    std::string eta;
    std::string function;
    std::string what = "all";
};

std::vector<ClaimSpec> load_claims_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open claims file '" + path + "'");
    const auto doc = nlohmann::json::parse(in);
    const auto &arr = doc.is_object() ? doc.at("claims") : doc;
    std::vector<ClaimSpec> out;
    for (const auto &j : arr) out.push_back(claim_from_json(j));
    return out;
}

RunConfig make_config(const Options &o, bool with_filters)
{
    RunConfig c;
    if (o.order) {
        if (*o.order < 0) throw CLI::ValidationError("--order", "must be non-negative");
        c.identity_order = static_cast<std::size_t>(*o.order);
    }
    c.claim_n_max = o.n_max;
    c.order_budget = o.budget;
    c.jobs = o.jobs;
    c.seed = o.seed;
    c.omit_timing = o.omit_timing;
    if (with_filters) {
        c.claim_ids = o.claims;
        c.identity_ids = o.identities;
    }
    c.tags = o.tags;
    if (!o.claims_file.empty()) {
        c.extra_claims = load_claims_file(o.claims_file);
        // Without filters a claims file means "just these".
        if (!c.selective()) {
            for (const auto &x : c.extra_claims) c.claim_ids.push_back(x.id);
        }
    }
    return c;
}

int emit_report(const Report &r, const std::string &format)
{
    if (r.entries.empty()) {
        std::cerr << "selection matched no entries\n";
        return usage;
    }
    if (format == "structured") {
        std::cout << report_to_json(r).dump(2) << "\n";
    } else {
        std::cout << report_to_text(r);
    }
    return r.all_pass() ? ok : failed;
}

int cmd_expand(const Options &o)
{
    if (!o.order) throw CLI::ValidationError("--order", "required");
    if (*o.order < 0) throw CLI::ValidationError("--order", "must be non-negative");
    if (o.eta.empty() == o.function.empty()) throw CLI::ValidationError("expand", "give exactly one of --eta or --function");
    const auto spec = o.eta.empty() ? generating_function(PartitionFunctionId::parse(o.function)) : EtaQuotientSpec::parse(o.eta);
    const auto dom = o.mod ? CoefficientDomain::modulo(*o.mod) : CoefficientDomain::exact();
    const auto order = static_cast<std::size_t>(*o.order);
    const auto s = eta_quotient(spec, order, dom);
    if (o.format == "structured") {
        ordered_json j{{"tool", tool_name},
                       {"version", tool_version},
                       {"source", o.eta.empty() ? "function " + o.function : "eta " + spec.to_string()},
                       {"eta", spec.to_string()},
                       {"domain", dom.to_string()},
                       {"order", order},
                       {"coefficients", ordered_json::array()}};
        for (std::size_t n = 0; n <= order; ++n) j["coefficients"].push_back(s.coefficient(n).get_str());
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "# " << spec.to_math() << "  (" << dom.to_string() << ")\n";
        for (std::size_t n = 0; n <= order; ++n) std::cout << n << "  " << s.coefficient(n).get_str() << "\n";
    }
    return ok;
}

int cmd_oracle(const Options &o)
{
    const auto up_to = o.n_max.value_or(120);
    std::vector<PartitionFunctionId> ids;
    if (!o.function.empty()) {
        ids.push_back(PartitionFunctionId::parse(o.function));
    } else {
        ids = oracle_ids();
    }
    ordered_json entries = ordered_json::array();
    bool all = true;
    for (const auto &id : ids) {
        auto r = cross_validate(id, up_to);
        if (r.status == Status::fail) all = false;
        if (o.format == "structured") {
            ordered_json j{{"id", id.to_string()}, {"status", std::string(to_string(r.status))}, {"checked_count", r.checked_count}};
            if (r.witness) j["witness"] = {{"n", r.witness->n}, {"expected", r.witness->expected}, {"actual", r.witness->actual}};
            if (!o.omit_timing) j["wall_ms"] = r.wall_ms;
            entries.push_back(j);
        } else {
            std::cout << id.to_string() << "  " << to_string(r.status) << "  n<=" << up_to;
            if (r.witness) std::cout << "  witness n=" << r.witness->n << " oracle=" << r.witness->expected << " series=" << r.witness->actual;
            if (!r.reason.empty()) std::cout << "  [" << r.reason << "]";
            std::cout << "\n";
        }
    }
    if (o.format == "structured") {
        std::cout << ordered_json{{"tool", tool_name}, {"version", tool_version}, {"up_to", up_to}, {"entries", entries}}.dump(2) << "\n";
    }
    return all ? ok : failed;
}

int cmd_export(const Options &o)
{
    ordered_json doc{{"tool", tool_name}, {"version", tool_version}};
    if (o.what == "all" || o.what == "identities") {
        ordered_json arr = ordered_json::array();
        for (const auto &s : catalog_identities()) {
            ordered_json j{{"id", s.id},
                           {"anchor", s.anchor},
                           {"check_kind", to_string(s.check_kind)},
                           {"dissection_modulus", s.dissection_modulus},
                           {"default_order", s.default_order},
                           {"lhs_text", s.lhs.to_string()},
                           {"rhs_text", s.rhs().to_string()},
                           {"lhs", s.lhs.to_json()},
                           {"rhs", s.rhs().to_json()}};
            if (s.misprinted_rhs) j["misprinted_rhs_text"] = s.misprinted_rhs->to_string();
            if (!s.parents.empty()) j["parents"] = s.parents;
            arr.push_back(j);
        }
        doc["identities"] = arr;
    }
    if (o.what == "all" || o.what == "claims") {
        ordered_json arr = ordered_json::array();
        for (const auto &c : expanded_claims()) arr.push_back(claim_to_json(c));
        doc["claims"] = arr;
        ordered_json fams = ordered_json::array();
        for (const auto &f : catalog_claims().families) fams.push_back({{"id", f.id}, {"group", f.group}, {"description", f.description}});
        doc["families"] = fams;
    }
    std::cout << doc.dump(2) << "\n";
    return ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact q-series engine and congruence verifier"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App *c) {
        c->add_option("--format", o.format)->check(CLI::IsMember({"text", "structured"}));
        c->add_flag("--omit-timing", o.omit_timing, "Drop timing fields");
    };
    auto add_run = [&](CLI::App *c) {
        add_common(c);
        c->add_option("--order", o.order, "Identity check order");
        c->add_option("--n-max", o.n_max, "Claim range 0..n_max");
        c->add_option("--jobs", o.jobs)->check(CLI::Range(1u, 256u));
        c->add_option("--tag", o.tags);
        c->add_option("--claims-file", o.claims_file, "Extra claims, structured");
        c->add_option("--budget", o.budget, "Series order budget");
        c->add_option("--seed", o.seed, "Property suite seed");
    };

    auto *expand = app.add_subcommand("expand", "Print coefficients of an eta quotient or partition function");
    add_common(expand);
    expand->add_option("--order", o.order)->required();
    expand->add_option("--mod", o.mod);
    expand->add_option("--eta", o.eta, "r:e pairs, e.g. 1:-1");
    expand->add_option("--function", o.function, "b:k:l,m | b:k:l | p");

    auto *verify = app.add_subcommand("verify", "Verify selected identities and claims");
    add_run(verify);
    verify->add_option("--claim", o.claims);
    verify->add_option("--identity", o.identities);

    auto *report = app.add_subcommand("report", "Full-suite structured report");
    add_run(report);

    auto *oracle = app.add_subcommand("oracle-check", "Series against direct enumeration");
    add_common(oracle);
    oracle->add_option("--function", o.function);
    oracle->add_option("--n-max", o.n_max);

    auto *exp = app.add_subcommand("export", "Dump the identity and claim catalogs");
    exp->add_option("--what", o.what)->check(CLI::IsMember({"all", "identities", "claims"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (expand->parsed()) return cmd_expand(o);
        if (oracle->parsed()) return cmd_oracle(o);
        if (exp->parsed()) return cmd_export(o);
        if (report->parsed()) {
            if (report->count("--format") == 0) o.format = "structured";
            return emit_report(verify_all(make_config(o, false)), o.format);
        }
        return emit_report(verify_all(make_config(o, true)), o.format);
    } catch (const CLI::ValidationError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const std::out_of_range &e) {
        std::cerr << e.what() << "\n";
        return usage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return usage;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "invalid claims file: " << e.what() << "\n";
        return usage;
    }
}
