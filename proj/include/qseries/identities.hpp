#pragma once

// Exact q-series identities: 2-, 3- and 5-dissections of eta quotients,
// identities derived by multiplying them, theta-function eta forms and the
// even/odd parts of the b^4_{3,2} generating function.

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <qseries/expr.hpp>
#include <qseries/outcome.hpp>
#include <qseries/series_cache.hpp>

namespace qseries {

enum class CheckKind { exact_equality, corrected_typo };

inline std::string to_string(CheckKind k) { return k == CheckKind::exact_equality ? "exact_equality" : "corrected_typo"; }

// One summand of the right-hand side. `residue` is the exponent class of the
// summand modulo the dissection modulus.
struct DissectionPart {
    std::uint64_t residue;
    SeriesExpr expr;
};

struct IdentitySpec {
    std::string id;
    std::string anchor;
    SeriesExpr lhs;
    std::uint64_t dissection_modulus = 1;
    std::vector<DissectionPart> parts;
    CheckKind check_kind = CheckKind::exact_equality;
    // The right-hand side as commonly printed when it differs from the true one.
    std::optional<SeriesExpr> misprinted_rhs;
    std::vector<std::string> parents;
    std::size_t default_order = 500;

    SeriesExpr rhs() const
    {
        std::vector<SeriesExpr> terms;
        for (const auto &p : parts) terms.push_back(p.expr);
        return terms.size() == 1 ? terms.front() : SeriesExpr::sum(std::move(terms));
    }
};

namespace detail {

inline SeriesExpr E(const char *spec) { return SeriesExpr::eta(EtaQuotientSpec::parse(spec)); }

// c q^k E(spec)
inline SeriesExpr T(long c, std::uint64_t k, const char *spec)
{
    auto e = E(spec);
    if (k > 0) e = e.shifted(k);
    return c == 1 ? e : e.scaled(Integer(c));
}

inline DissectionPart P(std::uint64_t modulus, long c, std::uint64_t k, const char *spec) { return {k % modulus, T(c, k, spec)}; }

inline IdentitySpec dissection(std::string id, std::string anchor, const char *lhs, std::uint64_t modulus,
                               std::vector<std::tuple<long, std::uint64_t, const char *>> terms)
{
    IdentitySpec s;
    s.id = std::move(id);
    s.anchor = std::move(anchor);
    s.lhs = E(lhs);
    s.dissection_modulus = modulus;
    for (const auto &[c, k, spec] : terms) s.parts.push_back(P(modulus, c, k, spec));
    return s;
}

inline SeriesExpr sum_of(std::uint64_t modulus, std::vector<std::tuple<long, std::uint64_t, const char *>> terms)
{
    std::vector<SeriesExpr> out;
    for (const auto &[c, k, spec] : terms) out.push_back(P(modulus, c, k, spec).expr);
    return SeriesExpr::sum(std::move(out));
}

inline std::vector<IdentitySpec> build_catalog()
{
    std::vector<IdentitySpec> c;
    c.push_back(dissection("L01", "2-dissection of f1^2", "1:2", 2,
                           {{1, 0, "2:1,8:5,4:-2,16:-2"}, {-2, 1, "2:1,16:2,8:-1"}}));
    c.push_back(dissection("L02", "2-dissection of 1/f1^2", "1:-2", 2,
                           {{1, 0, "8:5,2:-5,16:-2"}, {2, 1, "4:2,16:2,2:-5,8:-1"}}));
    c.push_back(dissection("L03", "2-dissection of 1/f1^4", "1:-4", 2, {{1, 0, "4:14,2:-14,8:-4"}, {4, 1, "4:2,8:4,2:-10"}}));
    c.push_back(dissection("L04", "2-dissection of f3/f1", "3:1,1:-1", 2,
                           {{1, 0, "4:1,6:1,16:1,24:2,2:-2,8:-1,12:-1,48:-1"}, {1, 1, "6:1,8:2,48:1,2:-2,16:-1,24:-1"}}));
    c.push_back(dissection("L05", "2-dissection of f3^2/f1^2", "3:2,1:-2", 2,
                           {{1, 0, "4:4,6:1,12:2,2:-5,8:-1,24:-1"}, {2, 1, "4:1,6:2,8:1,24:1,2:-4,12:-1"}}));
    {
        auto s = dissection("L06", "2-dissection of f1^2/f3^2", "1:2,3:-2", 2,
                            {{1, 0, "2:1,4:2,12:4,6:-5,8:-1,24:-1"}, {-2, 1, "2:2,8:1,12:1,24:1,4:-1,6:-4"}});
        s.check_kind = CheckKind::corrected_typo;
        s.misprinted_rhs = sum_of(2, {{1, 0, "2:1,4:2,12:4,6:-5,8:-1,24:-1"}, {-2, 1, "2:2,8:1,12:1,24:1,4:-1,6:-1"}});
        c.push_back(std::move(s));
    }
    c.push_back(dissection("L07", "2-dissection of f3^4/f1^4", "3:4,1:-4", 2,
                           {{1, 0, "4:8,6:2,12:4,2:-10,8:-2,24:-2"},
                            {4, 1, "4:5,6:3,12:1,2:-9"},
                            {4, 2, "4:2,6:4,8:2,24:2,2:-8,12:-2"}}));
    c.push_back(dissection("L08", "2-dissection of 1/(f1 f3)", "1:-1,3:-1", 2,
                           {{1, 0, "8:2,12:5,2:-2,4:-1,6:-4,24:-2"}, {1, 1, "4:5,24:2,2:-4,6:-2,8:-2,12:-1"}}));
    c.push_back(dissection("L09", "2-dissection of f3^3/f1", "3:3,1:-1", 2, {{1, 0, "4:3,6:2,2:-2,12:-1"}, {1, 1, "12:3,4:-1"}}));
    c.push_back(dissection("L10", "2-dissection of f3/f1^3", "3:1,1:-3", 2,
                           {{1, 0, "4:6,6:3,2:-9,12:-2"}, {3, 1, "4:2,6:1,12:2,2:-7"}}));
    c.push_back(dissection("L11", "2-dissection of f5/f1", "5:1,1:-1", 2,
                           {{1, 0, "8:1,20:2,2:-2,40:-1"}, {1, 1, "4:3,10:1,40:1,2:-3,8:-1,20:-1"}}));
    {
        auto s = dissection("L12", "2-dissection of f1/f5", "1:1,5:-1", 2,
                            {{1, 0, "2:1,8:1,20:3,4:-1,10:-3,40:-1"}, {-1, 1, "4:2,40:1,8:-1,10:-2"}});
        s.check_kind = CheckKind::corrected_typo;
        s.misprinted_rhs = sum_of(2, {{1, 0, "2:1,8:1,20:3,4:-1,10:-2,40:-1"}, {-1, 1, "4:2,40:1,8:-1,10:-2"}});
        c.push_back(std::move(s));
    }
    {
        auto s = dissection("L13", "3-dissection of f2^3/f1^3", "2:3,1:-3", 3,
                            {{1, 0, "6:1,3:-1"},
                             {3, 1, "6:4,9:5,3:-8,18:-1"},
                             {6, 2, "6:3,9:2,18:2,3:-7"},
                             {12, 3, "6:2,18:5,3:-6,9:-1"}});
        s.check_kind = CheckKind::corrected_typo;
        s.misprinted_rhs = sum_of(3, {{1, 0, "6:1,3:-1"},
                                      {3, 1, "6:4,9:5,3:-8,18:-1"},
                                      {6, 2, "6:2,9:2,18:2,3:-7"},
                                      {12, 3, "6:2,18:5,3:-6,9:-1"}});
        c.push_back(std::move(s));
    }
    c.push_back(dissection("L14", "3-dissection of f1 f2", "1:1,2:1", 3,
                           {{1, 0, "6:1,9:4,3:-1,18:-2"}, {-1, 1, "9:1,18:1"}, {-2, 2, "3:1,18:4,6:-1,9:-2"}}));
    c.push_back(dissection("L15", "3-dissection of f2^2/f1", "2:2,1:-1", 3, {{1, 0, "6:1,9:2,3:-1,18:-1"}, {1, 1, "18:2,9:-1"}}));
    {
        IdentitySpec s;
        s.id = "L16";
        s.anchor = "5-dissection of f1 through the Rogers-Ramanujan quotient";
        s.lhs = E("1:1");
        s.dissection_modulus = 5;
        const auto f25 = E("25:1");
        const auto r5 = SeriesExpr::rogers_ramanujan(5);
        s.parts = {{0, f25 * r5.pow(-1)}, {1, f25.shifted(1).scaled(Integer(-1))}, {2, (f25 * r5).shifted(2).scaled(Integer(-1))}};
        s.default_order = 300;
        c.push_back(std::move(s));
    }
    {
        auto s = dissection("L17", "2-dissection of f3^4/f1^4 from the f3^3/f1 and f3/f1^3 dissections", "3:4,1:-4", 2,
                            {{1, 0, "4:9,6:5,2:-11,12:-3"}, {3, 2, "4:1,6:1,12:5,2:-7"}, {4, 1, "4:5,6:3,12:1,2:-9"}});
        s.parents = {"L09", "L10"};
        s.default_order = 300;
        c.push_back(std::move(s));
    }
    {
        auto s = dissection("L18", "2-dissection of 1/(f1^5 f3) from the 1/f1^4 and 1/(f1 f3) dissections", "1:-5,3:-1", 2,
                            {{1, 0, "4:13,12:5,2:-16,8:-2,6:-4,24:-2"},
                             {1, 1, "4:19,24:2,2:-18,8:-6,6:-2,12:-1"},
                             {4, 1, "4:1,8:6,12:5,2:-12,6:-4,24:-2"},
                             {4, 2, "4:7,8:2,24:2,2:-14,6:-2,12:-1"}});
        s.parents = {"L03", "L08"};
        s.default_order = 300;
        c.push_back(std::move(s));
    }
    {
        auto s = dissection("L19", "2-dissection of f1^2/f5^2, the square of the f1/f5 dissection", "1:2,5:-2", 2,
                            {{1, 0, "2:2,8:2,20:6,4:-2,10:-6,40:-2"}, {1, 2, "4:4,40:2,8:-2,10:-4"}, {-2, 1, "2:1,4:1,20:3,10:-5"}});
        s.check_kind = CheckKind::corrected_typo;
        s.misprinted_rhs = sum_of(2, {{1, 0, "2:2,8:2,20:6,4:-2,10:-4,40:-2"}, {1, 2, "4:4,40:2,8:-2,10:-2"}, {-2, 1, "2:1,4:1,20:3,10:-4"}});
        s.parents = {"L12"};
        s.default_order = 300;
        c.push_back(std::move(s));
    }
    {
        IdentitySpec s;
        s.id = "L20";
        s.anchor = "eta-quotient form of phi(q)";
        s.lhs = SeriesExpr::theta(ThetaSpec::phi());
        s.parts = {{0, E("2:5,1:-2,4:-2")}};
        s.check_kind = CheckKind::corrected_typo;
        s.misprinted_rhs = E("2:1,1:-2,4:-2");
        s.default_order = 300;
        c.push_back(std::move(s));
    }
    {
        const auto gf = SeriesExpr::function(PartitionFunctionId::regular(4, 3, 2));
        IdentitySpec even;
        even.id = "L21";
        even.anchor = "even part of the b^4_{3,2} generating function";
        even.lhs = gf.extracted(2, 0);
        even.parts = {{0, T(1, 0, "2:9,3:1,1:-7,6:-3")}, {0, T(3, 1, "2:1,6:5,1:-3,3:-3")}};
        even.parents = {"L17"};
        even.default_order = 300;
        c.push_back(std::move(even));

        IdentitySpec odd;
        odd.id = "L22";
        odd.anchor = "odd part of the b^4_{3,2} generating function";
        odd.lhs = gf.extracted(2, 1);
        odd.parts = {{0, T(4, 0, "2:5,6:1,1:-5,3:-1")}};
        odd.parents = {"L17"};
        odd.default_order = 300;
        c.push_back(std::move(odd));
    }
    {
        IdentitySpec s;
        s.id = "L23";
        s.anchor = "eta-quotient form of psi(q)";
        s.lhs = SeriesExpr::theta(ThetaSpec::psi());
        s.parts = {{0, E("2:2,1:-1")}};
        s.default_order = 300;
        c.push_back(std::move(s));
    }
    {
        IdentitySpec s;
        s.id = "L24";
        s.anchor = "f(-q) equals f1";
        s.lhs = SeriesExpr::theta(ThetaSpec::f_neg_q());
        s.parts = {{0, E("1:1")}};
        s.default_order = 300;
        c.push_back(std::move(s));
    }
    for (auto &s : c) {
        if (s.id <= "L12") s.default_order = std::max<std::size_t>(s.default_order, 500);
    }
    return c;
}

} // namespace detail

inline const std::vector<IdentitySpec> &catalog_identities()
{
    static const auto catalog = detail::build_catalog();
    return catalog;
}

inline const IdentitySpec &lookup_identity(const std::string &id)
{
    for (const auto &s : catalog_identities()) {
        if (s.id == id) return s;
    }
    throw std::out_of_range("unknown identity id '" + id + "'");
}

namespace detail {

template <typename F>
VerificationOutcome timed(F &&body)
{
    const auto start = std::chrono::steady_clock::now();
    auto out = body();
    out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace detail

// Exact comparison of two expressions through `order`.
inline VerificationOutcome verify_expr_equality(const SeriesExpr &lhs, const SeriesExpr &rhs, std::size_t order,
                                                SeriesCache *cache = nullptr)
{
    return detail::timed([&] {
        const auto a = evaluate_expr(lhs, order, CoefficientDomain::exact(), cache);
        const auto b = evaluate_expr(rhs, order, CoefficientDomain::exact(), cache);
        return equal_to_order(a, b, order);
    });
}

inline VerificationOutcome verify_identity(const IdentitySpec &spec, std::size_t order, SeriesCache *cache = nullptr)
{
    return verify_expr_equality(spec.lhs, spec.rhs(), order, cache);
}

inline VerificationOutcome verify_identity(const std::string &id, std::size_t order, SeriesCache *cache = nullptr)
{
    return verify_identity(lookup_identity(id), order, cache);
}

// Each residue class of the left side must match the summands carrying that
// residue, and every summand must be supported on its own class.
inline VerificationOutcome verify_dissection_structure(const IdentitySpec &spec, std::size_t order, SeriesCache *cache = nullptr)
{
    return detail::timed([&] {
        const auto s = spec.dissection_modulus;
        if (s < 2) return VerificationOutcome::with_status(Status::skipped, "not a dissection");
        const auto dom = CoefficientDomain::exact();
        const auto lhs = evaluate_expr(spec.lhs, order, dom, cache);
        std::map<std::uint64_t, TruncatedSeries> by_residue;
        std::uint64_t checked = 0;
        for (const auto &p : spec.parts) {
            const auto v = evaluate_expr(p.expr, order, dom, cache);
            for (std::uint64_t r = 0; r < s; ++r) {
                if (r == p.residue || r > order) continue;
                const auto off = extract_ap(v, s, r);
                const auto zero = TruncatedSeries::zero(off.order(), dom);
                auto o = equal_to_order(off, zero, off.order());
                if (!o.passed()) {
                    o.witness->n = o.witness->n * s + r;
                    o.reason = "summand has terms outside residue class " + std::to_string(p.residue);
                    return o;
                }
            }
            auto [it, fresh] = by_residue.try_emplace(p.residue, v);
            if (!fresh) it->second = add(it->second, v);
        }
        for (std::uint64_t r = 0; r < s && r <= order; ++r) {
            const auto left = extract_ap(lhs, s, r);
            auto it = by_residue.find(r);
            const auto right = it == by_residue.end() ? TruncatedSeries::zero(left.order(), dom) : extract_ap(it->second, s, r);
            auto o = equal_to_order(left, right, left.order());
            checked += o.checked_count;
            if (!o.passed()) {
                o.witness->n = o.witness->n * s + r;
                o.reason = "residue class " + std::to_string(r) + " differs";
                return o;
            }
        }
        return VerificationOutcome::pass_with(checked);
    });
}

} // namespace qseries
