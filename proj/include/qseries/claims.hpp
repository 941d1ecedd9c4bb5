#pragma once

// Congruence and characterization statements for k-coloured regular
// partition functions, prime and 5-adic families, and the checker that
// evaluates them against truncated expansions.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include <qseries/expr.hpp>
#include <qseries/identities.hpp>
#include <qseries/number_theory.hpp>
#include <qseries/outcome.hpp>
#include <qseries/partition_functions.hpp>
#include <qseries/series_cache.hpp>

namespace qseries {

struct Vanishing {};
// subsequence(n) == scale * target(n)
struct EqualsScaled {
    SeriesExpr target;
    Integer scale = 1;
};
// Residue 0 whenever n has no representation; if residue_if_representable is
// set, that residue exactly when a representation exists.
struct Characterization {
    RepresentationForm form;
    std::optional<std::uint64_t> residue_if_representable;
};
// value at n == at_n, 0 elsewhere
struct ConstantValue {
    Integer value;
    std::uint64_t at_n = 0;
};
struct IdentityLink {
    std::string identity;
};

using ClaimKind = std::variant<Vanishing, EqualsScaled, Characterization, ConstantValue, IdentityLink>;

inline std::string kind_name(const ClaimKind &k)
{
    constexpr const char *names[] = {"vanishing", "equals_scaled", "characterization", "constant_value", "identity_link"};
    return names[k.index()];
}

struct ClaimSpec {
    std::string id;
    std::string group;
    std::string anchor;
    PartitionFunctionId function;
    std::uint64_t step = 1;
    std::uint64_t offset = 0;
    std::uint64_t modulus = 2;
    ClaimKind kind = Vanishing{};
    std::uint64_t range_hint = 500;
    std::vector<std::string> tags;
    bool informational = false;
    std::string note;

    std::string argument() const
    {
        std::string s = step == 1 ? "n" : std::to_string(step) + "n";
        return offset == 0 ? s : s + "+" + std::to_string(offset);
    }

    std::string statement() const
    {
        if (const auto *l = std::get_if<IdentityLink>(&kind)) return "identity " + l->identity + " holds exactly";
        const auto lhs = function.to_math() + "(" + argument() + ")";
        const auto mod = " (mod " + std::to_string(modulus) + ")";
        struct V {
            const std::string &lhs;
            const std::string &mod;
            std::string operator()(const Vanishing &) const { return lhs + " == 0" + mod; }
            std::string operator()(const EqualsScaled &e) const
            {
                const auto t = e.target.kind() == SeriesExpr::Kind::function ? e.target.function_id().to_math() + "(n)"
                                                                              : "[q^n](" + e.target.to_string() + ")";
                return lhs + " == " + (e.scale == 1 ? std::string() : e.scale.get_str() + " ") + t + mod;
            }
            std::string operator()(const Characterization &c) const
            {
                auto s = lhs + " == 0" + mod + " unless n = " + describe(c.form);
                if (c.residue_if_representable) s += ", and == " + std::to_string(*c.residue_if_representable) + " when it is";
                return s;
            }
            std::string operator()(const ConstantValue &c) const
            {
                return lhs + " == " + c.value.get_str() + mod + " at n = " + std::to_string(c.at_n) + ", 0 otherwise";
            }
            std::string operator()(const IdentityLink &) const { return {}; }
        };
        return std::visit(V{lhs, mod}, kind);
    }

    bool has_tag(const std::string &t) const { return std::find(tags.begin(), tags.end(), t) != tags.end(); }
};

using FamilyParams = std::map<std::string, std::int64_t>;

struct FamilySpec {
    std::string id;
    std::string group;
    std::string description;
    // Throws std::invalid_argument with the reason when params are outside the domain.
    std::function<void(const FamilyParams &)> validate;
    std::function<ClaimSpec(const FamilyParams &)> build;
    std::vector<FamilyParams> default_instances;
    // Run and reported, never counted as failures.
    std::vector<FamilyParams> informational_instances;
};

inline std::string params_suffix(const FamilyParams &p, const std::vector<std::string> &order)
{
    std::string s = "[";
    for (const auto &k : order) {
        if (s.size() > 1) s += ",";
        s += k + "=" + std::to_string(p.at(k));
    }
    return s + "]";
}

inline ClaimSpec instantiate_family(const FamilySpec &f, const FamilyParams &params)
{
    f.validate(params);
    return f.build(params);
}

namespace detail {

inline std::int64_t ipow(std::int64_t b, std::int64_t e)
{
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline std::int64_t param(const FamilyParams &p, const std::string &k)
{
    auto it = p.find(k);
    if (it == p.end()) throw std::invalid_argument("missing parameter '" + k + "'");
    return it->second;
}

inline std::uint64_t exact_div(std::int64_t num, std::int64_t den, const std::string &what)
{
    if (num < 0 || num % den != 0) throw std::invalid_argument(what + " is not a non-negative integer");
    return static_cast<std::uint64_t>(num / den);
}

inline void require(bool ok, const std::string &reason)
{
    if (!ok) throw std::invalid_argument(reason);
}

inline void require_prime_nonresidue(const FamilyParams &p, std::int64_t a)
{
    const auto pr = param(p, "p");
    require(pr >= 5 && is_prime(static_cast<std::uint64_t>(pr)), "p must be a prime >= 5");
    require(legendre(a, static_cast<std::uint64_t>(pr)) == -1,
            "legendre(" + std::to_string(a) + "/" + std::to_string(pr) + ") = +1, need -1");
}

inline void require_range(const FamilyParams &p, const std::string &k, std::int64_t lo, std::int64_t hi)
{
    const auto v = param(p, k);
    require(v >= lo && v <= hi, k + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

inline void require_one_of(const FamilyParams &p, const std::string &k, std::initializer_list<std::int64_t> allowed)
{
    const auto v = param(p, k);
    std::string list;
    for (auto a : allowed) {
        if (a == v) return;
        list += (list.empty() ? "" : ", ") + std::to_string(a);
    }
    throw std::invalid_argument(k + " must be one of {" + list + "}");
}

inline ClaimSpec plain(std::string id, std::string group, std::string anchor, PartitionFunctionId f, std::uint64_t a,
                       std::uint64_t b, std::uint64_t m, ClaimKind kind = Vanishing{})
{
    ClaimSpec c;
    c.id = std::move(id);
    c.group = std::move(group);
    c.anchor = std::move(anchor);
    c.function = std::move(f);
    c.step = a;
    c.offset = b;
    c.modulus = m;
    c.kind = std::move(kind);
    return c;
}

inline SeriesExpr fn(const PartitionFunctionId &id) { return SeriesExpr::function(id); }
inline SeriesExpr eta_expr(const char *spec) { return SeriesExpr::eta(EtaQuotientSpec::parse(spec)); }

inline PartitionFunctionId b(std::uint64_t k, std::uint64_t l, std::uint64_t m) { return PartitionFunctionId::regular(k, l, m); }

} // namespace detail

struct ClaimCatalog {
    std::vector<ClaimSpec> claims;
    std::vector<FamilySpec> families;
};

namespace detail {

inline void add_claims(std::vector<ClaimSpec> &c)
{
    using PF = PartitionFunctionId;
    // b^2_{3,2t}(4n+3)
    for (std::uint64_t t : {1, 2, 4, 5, 7, 8, 10, 3, 6, 9}) {
        auto s = plain("C-01[t=" + std::to_string(t) + "]", "C-01", "b^2_{3,2t}(4n+3) vanishes mod 4 for 3 not dividing t",
                       b(2, 3, 2 * t), 4, 3, 4);
        if (t % 3 == 0) {
            s.informational = true;
            s.note = "outside hypothesis: 3 divides t";
        }
        c.push_back(std::move(s));
    }
    c.push_back(plain("C-02", "C-02", "b^2_{3,4}(2n) agrees with b_{3,4}(n) mod 4", b(2, 3, 4), 2, 0, 4,
                      EqualsScaled{fn(b(1, 3, 4)), 1}));
    {
        auto s = plain("C-03", "C-03", "b^2_{3,4}(4n+1) is 2 mod 4 exactly at triangular n", b(2, 3, 4), 4, 1, 4,
                       Characterization{Triangular{}, 2});
        s.range_hint = 2000;
        s.tags = {"characterization"};
        c.push_back(std::move(s));
    }
    c.push_back(plain("C-05a", "C-05", "b^2_{3,4}(6n+4) even", b(2, 3, 4), 6, 4, 2));
    c.push_back(plain("C-05b", "C-05", "b^2_{3,4}(6n+2) has the parity of b^3_3(n)", b(2, 3, 4), 6, 2, 2,
                      EqualsScaled{fn(PF::regular(3, 3)), 1}));
    c.push_back(plain("C-05c", "C-05", "b^2_{3,4}(12n+6) even", b(2, 3, 4), 12, 6, 2));
    c.push_back(plain("C-05d", "C-05", "b^2_{3,4}(12n) has the parity of p(n)", b(2, 3, 4), 12, 0, 2,
                      EqualsScaled{fn(PF::unrestricted()), 1}));
    c.push_back(plain("C-06", "C-06", "b^2_{3,8}(2n+1) agrees with 2 b_{2,3}(n) mod 3", b(2, 3, 8), 2, 1, 3,
                      EqualsScaled{fn(b(1, 2, 3)), 2}));
    for (std::uint64_t t : {1, 2, 4, 5, 7, 8, 3}) {
        for (std::uint64_t off : {15, 11}) {
            auto s = plain("C-07" + std::string(off == 15 ? "a" : "b") + "[t=" + std::to_string(t) + "]", "C-07",
                           "b^4_{3,4t}(16n+" + std::to_string(off) + ") vanishes mod 8 for 3 not dividing t", b(4, 3, 4 * t), 16,
                           off, 8);
            if (t == 3) {
                s.informational = true;
                s.note = "outside hypothesis: 3 divides t";
            }
            c.push_back(std::move(s));
        }
    }
    for (std::uint64_t i : {2, 3, 4, 5}) {
        c.push_back(plain("C-07c[i=" + std::to_string(i) + "]", "C-07", "b^4_{3,4}(48n+8i+7) vanishes mod 8", b(4, 3, 4), 48,
                          8 * i + 7, 8));
    }
    c.push_back(plain("C-07d", "C-07", "b^4_{3,4}(2n+1) is 4 mod 3 at n = 0 and 0 mod 3 otherwise", b(4, 3, 4), 2, 1, 3,
                      ConstantValue{Integer(4), 0}));
    for (std::uint64_t off : {3, 7}) {
        auto s = plain(off == 3 ? "C-08a" : "C-08b", "C-08",
                       "b^4_{3,4}(" + std::string(off == 3 ? "16n+3" : "48n+7") + ") vanishes mod 8 off pent + 2 pent", b(4, 3, 4),
                       off == 3 ? 16 : 48, off, 8, Characterization{PentPlusCPent{2}, std::nullopt});
        s.range_hint = 2000;
        s.tags = {"characterization"};
        c.push_back(std::move(s));
    }
    {
        auto even = plain("C-10a", "C-10", "even part of the b^4_{3,2} generating function", b(4, 3, 2), 1, 0, 2,
                          IdentityLink{"L21"});
        auto odd = plain("C-10b", "C-10", "odd part of the b^4_{3,2} generating function", b(4, 3, 2), 1, 0, 2,
                         IdentityLink{"L22"});
        even.tags = odd.tags = {"identity"};
        c.push_back(std::move(even));
        c.push_back(std::move(odd));
    }
    c.push_back(plain("C-10c", "C-10", "b^4_{3,2}(16n+9) vanishes mod 8", b(4, 3, 2), 16, 9, 8));
    c.push_back(plain("C-10d", "C-10", "b^4_{3,2}(16n+13) vanishes mod 8", b(4, 3, 2), 16, 13, 8));
    c.push_back(plain("C-10e", "C-10", "b^4_{3,2}(8n+5) agrees with 4 f1 f6 mod 8", b(4, 3, 2), 8, 5, 8,
                      EqualsScaled{eta_expr("1:1,6:1"), 4}));
    c.push_back(plain("C-10f", "C-10", "b^4_{3,2}(8n+5) agrees with 4 f2 f12^2/f6^2 mod 8", b(4, 3, 2), 8, 5, 8,
                      EqualsScaled{eta_expr("2:1,12:2,6:-2"), 4}));
    c.back().tags = {"derived"};
    {
        auto s = plain("C-10g", "C-10", "b^4_{3,2}(16n+5) agrees with 4 f1 f6 mod 8", b(4, 3, 2), 16, 5, 8,
                       EqualsScaled{eta_expr("1:1,6:1"), 4});
        s.tags = {"corrected"};
        s.note = "4 f1 f6 is the even part of the 8n+5 generating function, so it describes 16n+5";
        c.push_back(std::move(s));
    }
    {
        auto s = plain("C-11", "C-11", "b^4_{3,2}(16n+5) vanishes mod 8 off pent + 6 pent", b(4, 3, 2), 16, 5, 8,
                       Characterization{PentPlusCPent{6}, std::nullopt});
        s.range_hint = 2000;
        s.tags = {"characterization"};
        c.push_back(std::move(s));
    }
    c.push_back(plain("C-13a", "C-13", "b^4_{2,5}(2n+1) vanishes mod 4", b(4, 2, 5), 2, 1, 4));
    {
        auto s = plain("C-13c", "C-13", "b^4_{2,5}(4n+2) agrees with 2 f1 f2 f10/f5 mod 4", b(4, 2, 5), 4, 2, 4,
                       EqualsScaled{eta_expr("1:1,2:1,10:1,5:-1"), 2});
        s.tags = {"corrected"};
        s.note = "odd part of f1^2/f5^2 is -2q f2 f4 f20^3/f10^5; the extra 1/f5 survives reduction mod 4";
        c.push_back(std::move(s));
    }
    for (std::uint64_t t : {1, 2, 3, 4, 6, 5}) {
        auto s = plain("C-15[t=" + std::to_string(t) + "]", "C-15", "b^2_{5,4t}(4n+3) vanishes mod 10 for 5 not dividing t",
                       b(2, 5, 4 * t), 4, 3, 10);
        if (t == 5) {
            s.informational = true;
            s.note = "outside hypothesis: 5 divides t";
        }
        c.push_back(std::move(s));
    }
    {
        auto s = plain("C-16", "C-16", "b^2_{4,5}(8n+7) vanishes mod 40", b(2, 4, 5), 8, 7, 40);
        s.range_hint = 1000;
        s.tags = {"flagship"};
        c.push_back(std::move(s));
    }
    c.push_back(plain("C-16v", "C-16", "b^2_{4,5}(1) = 2", b(2, 4, 5), 1, 1, 1000, ConstantValue{Integer(2), 0}));
    c.back().range_hint = 0;
    c.back().note = "the value is also quoted under the name b^2_{3,4}(1), which equals 2 as well";
    {
        auto s = plain("C-18", "C-18", "b^2_{4,5}(8n+3) vanishes mod 8 off tri + 10 pent", b(2, 4, 5), 8, 3, 8,
                       Characterization{TriPlusCPent{10}, std::nullopt});
        s.range_hint = 2000;
        s.tags = {"characterization"};
        c.push_back(std::move(s));
    }
    {
        auto s = plain("C-17c", "C-17", "b^2_{4,5}(8n+3) agrees with 2 f4^2 f10/(f1 f2^3 f5) mod 8", b(2, 4, 5), 8, 3, 8,
                       EqualsScaled{eta_expr("4:2,10:1,1:-1,2:-3,5:-1"), 2});
        s.tags = {"corrected"};
        s.note = "from the 4n+3 part 2 f2^17 f20/(f1^12 f4^5 f10) + 8(...)";
        c.push_back(std::move(s));
    }
    c.push_back(plain("C-20", "C-20", "b^2_{8,5}(4n+1) agrees with 2 b^2_{2,5}(n) mod 10", b(2, 8, 5), 4, 1, 10,
                      EqualsScaled{fn(b(2, 2, 5)), 2}));
    {
        auto s = plain("C-20x", "C-20", "b^2_{8,5}(200n+149) agrees with 2 b^2_{2,5}(50n+37) mod 10", b(2, 8, 5), 200, 149, 10,
                       EqualsScaled{fn(b(2, 2, 5)).extracted(50, 37), 2});
        s.tags = {"derived"};
        s.note = "the relation restricted to a progression on which b^2_{2,5} vanishes mod 4";
        c.push_back(std::move(s));
    }
    for (std::uint64_t t : {1, 3, 5, 7, 2}) {
        auto s = plain("C-21[t=" + std::to_string(t) + "]", "C-21", "b^3_{2,3t}(3n+2) vanishes mod 6 for odd t", b(3, 2, 3 * t), 3, 2,
                       6);
        if (t % 2 == 0) {
            s.informational = true;
            s.note = "outside hypothesis: t even, so 2 and 3t are not coprime";
        }
        c.push_back(std::move(s));
    }
    c.push_back(plain("C-22a", "C-22", "b^3_{2,3}(6n+5) vanishes mod 12", b(3, 2, 3), 6, 5, 12));
    c.push_back(plain("C-22b", "C-22", "b^3_{2,3}(6n+2) agrees with 6 b^3_3(n) mod 12", b(3, 2, 3), 6, 2, 12,
                      EqualsScaled{fn(PF::regular(3, 3)), 6}));
    {
        auto s = plain("C-22c", "C-22", "b^3_{2,3}(6n+2) agrees with 6 f3^3/f2 mod 12", b(3, 2, 3), 6, 2, 12,
                       EqualsScaled{eta_expr("3:3,2:-1"), 6});
        s.tags = {"corrected"};
        s.note = "the 3n+2 part is 6 f3^2 f6^2/f1^4, congruent to 6 f6^3/f4 mod 12";
        c.push_back(std::move(s));
    }
}

inline FamilySpec five_adic(std::string id, std::string group, std::string description, PartitionFunctionId f,
                            std::uint64_t modulus, ClaimKind kind, std::vector<std::string> keys,
                            std::function<void(const FamilyParams &)> extra,
                            std::function<std::pair<std::int64_t, std::int64_t>(const FamilyParams &)> progression,
                            std::vector<FamilyParams> defaults)
{
    FamilySpec fam;
    fam.id = id;
    fam.group = group;
    fam.description = description;
    fam.validate = [extra, progression](const FamilyParams &p) {
        require_range(p, "j", 0, 3);
        if (extra) extra(p);
        const auto [a, b] = progression(p);
        require(a > 0 && b >= 0, "progression must have positive step and non-negative offset");
    };
    fam.build = [=](const FamilyParams &p) {
        const auto [a, b] = progression(p);
        auto c = plain(id + params_suffix(p, keys), group, description, f, static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b),
                       modulus, kind);
        c.tags = {"family", "5-adic"};
        return c;
    };
    fam.default_instances = std::move(defaults);
    return fam;
}

inline std::vector<FamilySpec> build_families()
{
    std::vector<FamilySpec> out;
    const auto p2 = static_cast<std::int64_t>(smallest_nonresidue_prime(-2));
    const auto p6 = static_cast<std::int64_t>(smallest_nonresidue_prime(-6));
    const auto p30 = static_cast<std::int64_t>(smallest_nonresidue_prime(-30));

    // b^2_{3,4} over pm+r and 4(pm+r)+1 for 8r+1 a non-residue mod p.
    auto residue_family = [](std::string id, std::string description, std::uint64_t scale, std::uint64_t shift, std::uint64_t modulus,
                             std::vector<std::string> tags, std::string note) {
        FamilySpec f;
        f.id = id;
        f.group = "C-04";
        f.description = description;
        f.validate = [](const FamilyParams &p) {
            const auto pr = param(p, "p");
            require(pr >= 3 && is_prime(static_cast<std::uint64_t>(pr)), "p must be an odd prime");
            require_range(p, "r", 0, pr - 1);
            require(legendre(8 * param(p, "r") + 1, static_cast<std::uint64_t>(pr)) == -1, "8r+1 must be a non-residue mod p");
        };
        f.build = [=](const FamilyParams &p) {
            auto c = plain(id + params_suffix(p, {"p", "r"}), "C-04", description, b(2, 3, 4),
                           scale * static_cast<std::uint64_t>(param(p, "p")), scale * static_cast<std::uint64_t>(param(p, "r")) + shift,
                           modulus);
            c.tags = tags;
            c.note = note;
            return c;
        };
        return f;
    };
    {
        auto printed = residue_family("C-04", "b^2_{3,4}(pm+r) vanishes mod 4 when 8r+1 is a non-residue mod p", 1, 0, 4,
                                      {"family", "prime"}, "");
        auto corrected = residue_family("C-04c", "b^2_{3,4}(4(pm+r)+1) vanishes mod 4 when 8r+1 is a non-residue mod p", 4, 1, 4,
                                        {"family", "prime", "corrected"},
                                        "the triangular characterization concerns the argument 4n+1 with n = pm+r");
        auto strong = residue_family("C-04m8", "b^2_{3,4}(4(pm+r)+1) vanishes mod 8 when 8r+1 is a non-residue mod p", 4, 1, 8,
                                     {"family", "prime"}, "mod 8 strength asserted inside the argument; stated result is mod 4");
        for (std::int64_t pr : {5, 7, 11, 13}) {
            for (std::int64_t r = 0; r < pr; ++r) {
                if (legendre(8 * r + 1, static_cast<std::uint64_t>(pr)) != -1) continue;
                printed.default_instances.push_back({{"p", pr}, {"r", r}});
                corrected.default_instances.push_back({{"p", pr}, {"r", r}});
                if (pr == 5) strong.informational_instances.push_back({{"p", pr}, {"r", r}});
            }
        }
        out.push_back(std::move(printed));
        out.push_back(std::move(corrected));
        out.push_back(std::move(strong));
    }

    // Prime families: m = p n + m0 with p not dividing m.
    auto prime_family = [](std::string id, std::string group, std::string description, PartitionFunctionId fnid, std::int64_t a,
                           std::int64_t step_coef, std::function<std::int64_t(std::int64_t, std::int64_t)> base, std::uint64_t modulus,
                           std::int64_t p, std::vector<std::string> tags, std::string note) {
        FamilySpec f;
        f.id = id;
        f.group = group;
        f.description = description;
        f.validate = [a](const FamilyParams &ps) {
            require_prime_nonresidue(ps, a);
            require_range(ps, "k", 0, 2);
            require_range(ps, "m0", 1, param(ps, "p") - 1);
        };
        f.build = [=](const FamilyParams &ps) {
            const auto pr = param(ps, "p");
            const auto k = param(ps, "k");
            const auto m0 = param(ps, "m0");
            const auto pk = ipow(pr, 2 * k + 1);
            auto c = plain(id + params_suffix(ps, {"p", "k", "m0"}), group, description, fnid,
                           static_cast<std::uint64_t>(step_coef * pk * pr),
                           static_cast<std::uint64_t>(step_coef * pk * m0 + base(pr, k)), modulus);
            c.tags = tags;
            c.note = note;
            return c;
        };
        for (std::int64_t k : {0, 1}) {
            for (std::int64_t m0 = 1; m0 < p; ++m0) f.default_instances.push_back({{"p", p}, {"k", k}, {"m0", m0}});
        }
        return f;
    };
    out.push_back(prime_family("C-09a", "C-09", "b^4_{3,4}(16 p^(2k+1) m + 2 p^(2k+2) + 1) vanishes mod 8 when (-2/p) = -1",
                               b(4, 3, 4), -2, 16, [](std::int64_t p, std::int64_t k) { return 2 * ipow(p, 2 * k + 2) + 1; }, 8, p2,
                               {"family", "prime"}, ""));
    out.push_back(prime_family("C-09b", "C-09", "b^4_{3,4}(48 p^(2k+1) m + 6 p^(2k+2) + 1) vanishes mod 8 when (-2/p) = -1",
                               b(4, 3, 4), -2, 48, [](std::int64_t p, std::int64_t k) { return 6 * ipow(p, 2 * k + 2) + 1; }, 8, p2,
                               {"family", "prime"}, ""));
    out.push_back(prime_family(
        "C-12", "C-12", "b^4_{3,2}(16 p^(2k+1) m + (2 p^(2k+2) + 1)/3) vanishes mod 8 when (-6/p) = -1", b(4, 3, 2), -6, 16,
        [](std::int64_t p, std::int64_t k) { return static_cast<std::int64_t>(exact_div(2 * ipow(p, 2 * k + 2) + 1, 3, "offset")); }, 8,
        p6, {"family", "prime"}, "these arguments are not 5 mod 16, so the pent + 6 pent characterization does not reach them"));
    out.push_back(prime_family(
        "C-12c", "C-12", "b^4_{3,2}(16 p^(2k+1) m + (14 p^(2k+2) + 1)/3) vanishes mod 8 when (-6/p) = -1", b(4, 3, 2), -6, 16,
        [](std::int64_t p, std::int64_t k) { return static_cast<std::int64_t>(exact_div(14 * ipow(p, 2 * k + 2) + 1, 3, "offset")); },
        8, p6, {"family", "prime", "corrected"}, "offset from substituting n = p^(2k+1) m + 7(p^(2k+2) - 1)/24 into 16n+5"));

    const std::vector<FamilyParams> j01 = {{{"j", 0}}, {{"j", 1}}};
    auto p5 = [](std::int64_t e) { return ipow(5, e); };
    out.push_back(five_adic(
        "C-13", "C-13", "b^4_{2,5}(4 5^(2j) n + (13 5^(2j) - 1)/6) agrees with 2 f1 f2 f10 mod 4", b(4, 2, 5), 4,
        EqualsScaled{eta_expr("1:1,2:1,10:1"), 2}, {"j"}, nullptr,
        [p5](const FamilyParams &p) {
            const auto j = param(p, "j");
            return std::pair{4 * p5(2 * j), static_cast<std::int64_t>(exact_div(13 * p5(2 * j) - 1, 6, "offset"))};
        },
        j01));
    {
        std::vector<FamilyParams> d;
        for (std::int64_t j : {0, 1}) {
            for (std::int64_t y : {41, 89}) d.push_back({{"j", j}, {"y", y}});
        }
        out.push_back(five_adic(
            "C-13y", "C-13", "b^4_{2,5}(4 5^(2j+2) n + (y 5^(2j+1) - 1)/6) vanishes mod 4", b(4, 2, 5), 4, Vanishing{}, {"j", "y"},
            [](const FamilyParams &p) { require_one_of(p, "y", {41, 89}); },
            [p5](const FamilyParams &p) {
                const auto j = param(p, "j");
                return std::pair{4 * p5(2 * j + 2), static_cast<std::int64_t>(exact_div(param(p, "y") * p5(2 * j + 1) - 1, 6, "offset"))};
            },
            d));
    }
    out.push_back(five_adic(
        "C-14", "C-14", "b^2_{2,5}(2 5^(2j) n + (2 5^(2j) + 1)/3) agrees with 2 f1 f2 f5 mod 4", b(2, 2, 5), 4,
        EqualsScaled{eta_expr("1:1,2:1,5:1"), 2}, {"j"}, nullptr,
        [p5](const FamilyParams &p) {
            const auto j = param(p, "j");
            return std::pair{2 * p5(2 * j), static_cast<std::int64_t>(exact_div(2 * p5(2 * j) + 1, 3, "offset"))};
        },
        j01));
    {
        std::vector<FamilyParams> d;
        for (std::int64_t j : {0, 1}) {
            for (std::int64_t t : {22, 28}) d.push_back({{"j", j}, {"t", t}});
        }
        out.push_back(five_adic(
            "C-14t", "C-14", "b^2_{2,5}(2 5^(2j+2) n + (t 5^(2j+1) + 1)/3) vanishes mod 4", b(2, 2, 5), 4, Vanishing{}, {"j", "t"},
            [](const FamilyParams &p) { require_one_of(p, "t", {22, 28}); },
            [p5](const FamilyParams &p) {
                const auto j = param(p, "j");
                return std::pair{2 * p5(2 * j + 2), static_cast<std::int64_t>(exact_div(param(p, "t") * p5(2 * j + 1) + 1, 3, "offset"))};
            },
            d));
    }
    out.push_back(five_adic(
        "C-17", "C-17", "b^2_{4,5}(8 5^(2j) n + (13 5^(2j) - 4)/3) agrees with 2 f1^3 f10 mod 8", b(2, 4, 5), 8,
        EqualsScaled{eta_expr("1:3,10:1"), 2}, {"j"}, nullptr,
        [p5](const FamilyParams &p) {
            const auto j = param(p, "j");
            return std::pair{8 * p5(2 * j), static_cast<std::int64_t>(exact_div(13 * p5(2 * j) - 4, 3, "offset"))};
        },
        j01));
    {
        std::vector<FamilyParams> du, dv;
        for (std::int64_t j : {0, 1}) {
            for (std::int64_t u : {61, 109}) du.push_back({{"j", j}, {"u", u}});
            for (std::int64_t v : {41, 89}) dv.push_back({{"j", j}, {"v", v}});
        }
        out.push_back(five_adic(
            "C-17u", "C-17", "b^2_{4,5}(8 5^(2j+1) n + (u 5^(2j) - 4)/3) vanishes mod 20", b(2, 4, 5), 20, Vanishing{}, {"j", "u"},
            [](const FamilyParams &p) { require_one_of(p, "u", {61, 109}); },
            [p5](const FamilyParams &p) {
                const auto j = param(p, "j");
                return std::pair{8 * p5(2 * j + 1), static_cast<std::int64_t>(exact_div(param(p, "u") * p5(2 * j) - 4, 3, "offset"))};
            },
            du));
        out.push_back(five_adic(
            "C-17v", "C-17", "b^2_{4,5}(8 5^(2j+2) n + (v 5^(2j+1) - 4)/3) vanishes mod 20", b(2, 4, 5), 20, Vanishing{}, {"j", "v"},
            [](const FamilyParams &p) { require_one_of(p, "v", {41, 89}); },
            [p5](const FamilyParams &p) {
                const auto j = param(p, "j");
                return std::pair{8 * p5(2 * j + 2), static_cast<std::int64_t>(exact_div(param(p, "v") * p5(2 * j + 1) - 4, 3, "offset"))};
            },
            dv));
    }
    {
        FamilySpec f;
        f.id = "C-19";
        f.group = "C-19";
        f.description = "b^2_{4,5}(8 p^(2j+2) n + ((24i + 13p) p^(2j+1) - 4)/3) vanishes mod 20 when (-30/p) = -1";
        f.validate = [](const FamilyParams &ps) {
            require_prime_nonresidue(ps, -30);
            require_range(ps, "j", 0, 1);
            require_range(ps, "i", 1, param(ps, "p") - 1);
        };
        f.build = [desc = f.description](const FamilyParams &ps) {
            const auto pr = param(ps, "p");
            const auto j = param(ps, "j");
            const auto i = param(ps, "i");
            auto c = plain("C-19" + params_suffix(ps, {"p", "j", "i"}), "C-19", desc, b(2, 4, 5),
                           static_cast<std::uint64_t>(8 * ipow(pr, 2 * j + 2)),
                           exact_div((24 * i + 13 * pr) * ipow(pr, 2 * j + 1) - 4, 3, "offset"), 20);
            c.tags = {"family", "prime"};
            return c;
        };
        for (std::int64_t j : {0, 1}) {
            for (std::int64_t i = 1; i < p30; ++i) f.default_instances.push_back({{"p", p30}, {"j", j}, {"i", i}});
        }
        out.push_back(std::move(f));
    }
    return out;
}

} // namespace detail

inline const ClaimCatalog &catalog_claims()
{
    static const ClaimCatalog catalog = [] {
        ClaimCatalog c;
        detail::add_claims(c.claims);
        c.families = detail::build_families();
        return c;
    }();
    return catalog;
}

// Plain claims followed by every default and informational family instance,
// in catalog order.
inline std::vector<ClaimSpec> expanded_claims(const ClaimCatalog &catalog = catalog_claims())
{
    std::vector<ClaimSpec> out = catalog.claims;
    for (const auto &f : catalog.families) {
        for (const auto &p : f.default_instances) out.push_back(instantiate_family(f, p));
        for (const auto &p : f.informational_instances) {
            auto c = instantiate_family(f, p);
            c.informational = true;
            out.push_back(std::move(c));
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const ClaimSpec &a, const ClaimSpec &b) { return a.group < b.group; });
    return out;
}

inline const FamilySpec &lookup_family(const std::string &id)
{
    for (const auto &f : catalog_claims().families) {
        if (f.id == id) return f;
    }
    throw std::out_of_range("unknown family id '" + id + "'");
}

inline ClaimSpec lookup_claim(const std::string &id)
{
    for (const auto &c : expanded_claims()) {
        if (c.id == id) return c;
    }
    throw std::out_of_range("unknown claim id '" + id + "'");
}

// Series order needed to check n = 0..n_max.
inline std::size_t claim_order(const ClaimSpec &c, std::uint64_t n_max) { return c.step * n_max + c.offset; }

// Largest n_max within the order budget, capped by the claim's range hint;
// nullopt when even n = 0 is out of reach.
inline std::optional<std::uint64_t> effective_n_max(const ClaimSpec &c, std::uint64_t range, std::size_t order_budget)
{
    if (c.offset > order_budget) return std::nullopt;
    return std::min<std::uint64_t>(range, (order_budget - c.offset) / c.step);
}

inline VerificationOutcome verify_claim(const ClaimSpec &c, std::uint64_t n_max, SeriesCache *cache = nullptr)
{
    return detail::timed([&]() -> VerificationOutcome {
        if (const auto *l = std::get_if<IdentityLink>(&c.kind)) {
            const auto &spec = lookup_identity(l->identity);
            return verify_identity(spec, spec.default_order, cache);
        }
        if (c.modulus < 2 || c.modulus > max_modulus) throw std::invalid_argument("claim modulus out of range");
        const auto dom = CoefficientDomain::modulo(c.modulus);
        const auto order = claim_order(c, n_max);
        const auto gf = generating_function(c.function);
        const auto full = cache ? cache->get(gf, order, dom) : std::make_shared<const TruncatedSeries>(eta_quotient(gf, order, dom));
        const auto sub = subsequence(truncate(*full, order), c.step, c.offset);
        const auto m = c.modulus;

        struct V {
            const TruncatedSeries &sub;
            std::uint64_t n_max;
            std::uint64_t m;
            CoefficientDomain dom;
            SeriesCache *cache;

            VerificationOutcome operator()(const Vanishing &) const
            {
                return congruent_to_order(sub, TruncatedSeries::zero(n_max, dom), m, n_max);
            }
            VerificationOutcome operator()(const EqualsScaled &e) const
            {
                const auto target = scale(evaluate_expr(e.target, n_max, dom, cache), e.scale);
                return congruent_to_order(sub, target, m, n_max);
            }
            VerificationOutcome operator()(const Characterization &ch) const
            {
                for (std::uint64_t n = 0; n <= n_max; ++n) {
                    const auto r = sub.residue(n, m);
                    const bool representable = representation_count(n, ch.form) > 0;
                    std::uint64_t expected = 0;
                    if (representable) {
                        if (!ch.residue_if_representable) continue;
                        expected = *ch.residue_if_representable % m;
                    }
                    if (r != expected) return VerificationOutcome::fail_at(n, std::to_string(expected), std::to_string(r), n + 1);
                }
                return VerificationOutcome::pass_with(n_max + 1);
            }
            VerificationOutcome operator()(const ConstantValue &cv) const
            {
                for (std::uint64_t n = 0; n <= n_max; ++n) {
                    const auto expected = n == cv.at_n ? detail::reduce(cv.value, m) : 0;
                    const auto r = sub.residue(n, m);
                    if (r != expected) return VerificationOutcome::fail_at(n, std::to_string(expected), std::to_string(r), n + 1);
                }
                return VerificationOutcome::pass_with(n_max + 1);
            }
            VerificationOutcome operator()(const IdentityLink &) const { return {}; }
        };
        return std::visit(V{sub, n_max, m, dom, cache}, c.kind);
    });
}

// JSON exchange of claims; used for export and for user-supplied claim files.
inline nlohmann::ordered_json form_to_json(const RepresentationForm &form)
{
    using nlohmann::ordered_json;
    if (const auto *f = std::get_if<PentPlusCPent>(&form)) return {{"pent_plus_c_pent", f->c}};
    if (const auto *f = std::get_if<TriPlusCPent>(&form)) return {{"tri_plus_c_pent", f->c}};
    if (std::holds_alternative<Triangular>(form)) return {{"triangular", true}};
    const auto &f = std::get<X2PlusDY2>(form);
    ordered_json j{{"d", f.d}};
    if (f.x_residues_mod6) j["x_mod6"] = *f.x_residues_mod6;
    if (f.y_residues_mod6) j["y_mod6"] = *f.y_residues_mod6;
    return {{"x2_plus_d_y2", j}};
}

template <typename Json>
RepresentationForm form_from_json(const Json &j)
{
    if (j.contains("pent_plus_c_pent")) return PentPlusCPent{j.at("pent_plus_c_pent").template get<std::uint64_t>()};
    if (j.contains("tri_plus_c_pent")) return TriPlusCPent{j.at("tri_plus_c_pent").template get<std::uint64_t>()};
    if (j.contains("triangular")) return Triangular{};
    if (j.contains("x2_plus_d_y2")) {
        const auto &v = j.at("x2_plus_d_y2");
        X2PlusDY2 f{v.at("d").template get<std::uint64_t>(), std::nullopt, std::nullopt};
        if (v.contains("x_mod6")) f.x_residues_mod6 = v.at("x_mod6").template get<std::set<int>>();
        if (v.contains("y_mod6")) f.y_residues_mod6 = v.at("y_mod6").template get<std::set<int>>();
        return f;
    }
    throw std::invalid_argument("unknown representation form");
}

inline nlohmann::ordered_json claim_to_json(const ClaimSpec &c)
{
    using nlohmann::ordered_json;
    ordered_json kind;
    if (std::holds_alternative<Vanishing>(c.kind)) {
        kind = {{"type", "vanishing"}};
    } else if (const auto *e = std::get_if<EqualsScaled>(&c.kind)) {
        kind = {{"type", "equals_scaled"}, {"target", e->target.to_json()}, {"scale", e->scale.get_str()}};
    } else if (const auto *ch = std::get_if<Characterization>(&c.kind)) {
        kind = {{"type", "characterization"}, {"form", form_to_json(ch->form)}};
        if (ch->residue_if_representable) kind["residue_if_representable"] = *ch->residue_if_representable;
    } else if (const auto *cv = std::get_if<ConstantValue>(&c.kind)) {
        kind = {{"type", "constant_value"}, {"value", cv->value.get_str()}, {"at_n", cv->at_n}};
    } else {
        kind = {{"type", "identity_link"}, {"identity", std::get<IdentityLink>(c.kind).identity}};
    }
    ordered_json j{{"id", c.id},       {"group", c.group},    {"anchor", c.anchor},   {"statement", c.statement()},
                   {"function", c.function.to_string()},      {"step", c.step},       {"offset", c.offset},
                   {"modulus", c.modulus}, {"kind", kind},    {"range_hint", c.range_hint}, {"tags", c.tags},
                   {"informational", c.informational}};
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

template <typename Json>
ClaimSpec claim_from_json(const Json &j)
{
    ClaimSpec c;
    c.id = j.at("id").template get<std::string>();
    c.group = j.value("group", c.id);
    c.anchor = j.value("anchor", std::string());
    c.function = PartitionFunctionId::parse(j.at("function").template get<std::string>());
    c.step = j.value("step", std::uint64_t{1});
    c.offset = j.value("offset", std::uint64_t{0});
    c.modulus = j.at("modulus").template get<std::uint64_t>();
    if (c.step == 0) throw std::invalid_argument("claim step must be positive");
    if (c.modulus < 2) throw std::invalid_argument("claim modulus must be at least 2");
    c.range_hint = j.value("range_hint", std::uint64_t{500});
    c.tags = j.value("tags", std::vector<std::string>{});
    c.informational = j.value("informational", false);
    c.note = j.value("note", std::string());
    const auto &k = j.at("kind");
    const auto type = k.at("type").template get<std::string>();
    auto integer = [](const Json &x) {
        return x.is_string() ? Integer(x.template get<std::string>()) : Integer(static_cast<long>(x.template get<std::int64_t>()));
    };
    if (type == "vanishing") {
        c.kind = Vanishing{};
    } else if (type == "equals_scaled") {
        c.kind = EqualsScaled{SeriesExpr::from_json(k.at("target")), k.contains("scale") ? integer(k.at("scale")) : Integer(1)};
    } else if (type == "characterization") {
        Characterization ch{form_from_json(k.at("form")), std::nullopt};
        if (k.contains("residue_if_representable")) ch.residue_if_representable = k.at("residue_if_representable").template get<std::uint64_t>();
        c.kind = ch;
    } else if (type == "constant_value") {
        c.kind = ConstantValue{integer(k.at("value")), k.value("at_n", std::uint64_t{0})};
    } else if (type == "identity_link") {
        c.kind = IdentityLink{k.at("identity").template get<std::string>()};
    } else {
        throw std::invalid_argument("unknown claim kind '" + type + "'");
    }
    return c;
}

} // namespace qseries
