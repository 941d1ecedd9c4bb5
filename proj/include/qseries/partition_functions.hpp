#pragma once

// Generating functions for p(n), b_l, b^k_l, b_{l,m}, b^k_{l,m} and a
// counting oracle that never touches series arithmetic.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <qseries/eta_theta.hpp>
#include <qseries/outcome.hpp>
#include <qseries/series.hpp>

namespace qseries {

struct Unrestricted {
    friend auto operator<=>(const Unrestricted &, const Unrestricted &) = default;
};
struct SingleRegular {
    std::uint64_t l;
    friend auto operator<=>(const SingleRegular &, const SingleRegular &) = default;
};
struct DoubleRegular {
    std::uint64_t l;
    std::uint64_t m;
    friend auto operator<=>(const DoubleRegular &, const DoubleRegular &) = default;
};

using Regularity = std::variant<Unrestricted, SingleRegular, DoubleRegular>;

// Number of k-coloured partitions of n with no part divisible by any of the
// forbidden moduli.
class PartitionFunctionId
{
public:
    PartitionFunctionId() = default;

    static PartitionFunctionId unrestricted(std::uint64_t colors = 1) { return PartitionFunctionId(colors, Unrestricted{}); }

    static PartitionFunctionId regular(std::uint64_t colors, std::uint64_t l)
    {
        if (l < 2) throw std::invalid_argument("regularity modulus must be at least 2");
        return PartitionFunctionId(colors, SingleRegular{l});
    }

    static PartitionFunctionId regular(std::uint64_t colors, std::uint64_t l, std::uint64_t m)
    {
        if (l < 2 || m < 2 || l == m) throw std::invalid_argument("need l, m >= 2 and l != m");
        return PartitionFunctionId(colors, DoubleRegular{l, m});
    }

    std::uint64_t colors() const { return colors_; }
    const Regularity &regularity() const { return regularity_; }

    // The verbal definition and the eta quotient agree only for coprime pairs.
    bool coprime() const
    {
        const auto *d = std::get_if<DoubleRegular>(&regularity_);
        return d == nullptr || std::gcd(d->l, d->m) == 1;
    }

    bool allows_part(std::uint64_t part) const
    {
        if (const auto *s = std::get_if<SingleRegular>(&regularity_)) return part % s->l != 0;
        if (const auto *d = std::get_if<DoubleRegular>(&regularity_)) return part % d->l != 0 && part % d->m != 0;
        return true;
    }

    // "p", "p:k", "b:k:l" or "b:k:l,m".
    std::string to_string() const
    {
        if (std::holds_alternative<Unrestricted>(regularity_)) {
            return colors_ == 1 ? "p" : "p:" + std::to_string(colors_);
        }
        std::string s = "b:" + std::to_string(colors_) + ":";
        if (const auto *r = std::get_if<SingleRegular>(&regularity_)) return s + std::to_string(r->l);
        const auto &d = std::get<DoubleRegular>(regularity_);
        return s + std::to_string(d.l) + "," + std::to_string(d.m);
    }

    std::string to_math() const
    {
        if (std::holds_alternative<Unrestricted>(regularity_)) {
            return colors_ == 1 ? "p" : "p_" + std::to_string(colors_);
        }
        std::string s = "b";
        if (colors_ != 1) s += "^" + std::to_string(colors_);
        if (const auto *r = std::get_if<SingleRegular>(&regularity_)) return s + "_" + std::to_string(r->l);
        const auto &d = std::get<DoubleRegular>(regularity_);
        return s + "_{" + std::to_string(d.l) + "," + std::to_string(d.m) + "}";
    }

    static PartitionFunctionId parse(std::string_view text)
    {
        auto bad = [&] { return std::invalid_argument("malformed partition function id '" + std::string(text) + "'"); };
        auto number = [&](std::string_view v) {
            std::uint64_t x = 0;
            auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
            if (ec != std::errc{} || p != v.data() + v.size() || v.empty()) throw bad();
            return x;
        };
        if (text == "p") return unrestricted();
        if (text.starts_with("p:")) return unrestricted(positive(number(text.substr(2)), bad));
        if (!text.starts_with("b:")) throw bad();
        auto rest = text.substr(2);
        const auto colon = rest.find(':');
        if (colon == std::string_view::npos) throw bad();
        const auto k = positive(number(rest.substr(0, colon)), bad);
        auto mods = rest.substr(colon + 1);
        const auto comma = mods.find(',');
        try {
            if (comma == std::string_view::npos) return regular(k, number(mods));
            return regular(k, number(mods.substr(0, comma)), number(mods.substr(comma + 1)));
        } catch (const std::invalid_argument &) {
            throw bad();
        }
    }

    friend auto operator<=>(const PartitionFunctionId &, const PartitionFunctionId &) = default;
    friend bool operator==(const PartitionFunctionId &, const PartitionFunctionId &) = default;

private:
    PartitionFunctionId(std::uint64_t colors, Regularity r) : colors_(colors), regularity_(r)
    {
        if (colors_ == 0) throw std::invalid_argument("number of colours must be positive");
    }

    template <typename E>
    static std::uint64_t positive(std::uint64_t v, E make_error)
    {
        if (v == 0) throw make_error();
        return v;
    }

    std::uint64_t colors_ = 1;
    Regularity regularity_ = Unrestricted{};
};

inline EtaQuotientSpec generating_function(const PartitionFunctionId &id)
{
    const auto k = static_cast<std::int64_t>(id.colors());
    if (const auto *s = std::get_if<SingleRegular>(&id.regularity())) return {{s->l, k}, {1, -k}};
    if (const auto *d = std::get_if<DoubleRegular>(&id.regularity())) {
        return {{d->l, k}, {d->m, k}, {1, -k}, {d->l * d->m, -k}};
    }
    return {{1, -k}};
}

inline TruncatedSeries series_of(const PartitionFunctionId &id, std::size_t order,
                                 CoefficientDomain domain = CoefficientDomain::exact())
{
    return eta_quotient(generating_function(id), order, domain);
}

// Depth-first count over allowed part sizes in descending order. A part used
// c times in k colours contributes C(c + k - 1, k - 1) colour multisets.
// The memo on (remaining, part index) is shared by all n <= max_n.
class PartitionOracle
{
public:
    PartitionOracle(PartitionFunctionId id, std::uint64_t max_n) : id_(std::move(id)), max_n_(max_n)
    {
        for (std::uint64_t part = max_n; part >= 1; --part) {
            if (id_.allows_part(part)) parts_.push_back(part);
        }
        memo_.assign((max_n + 1) * (parts_.size() + 1), Integer(-1));
        const auto k = id_.colors();
        colour_weight_.resize(max_n + 1);
        for (std::uint64_t c = 0; c <= max_n; ++c) mpz_bin_uiui(colour_weight_[c].get_mpz_t(), c + k - 1, k - 1);
    }

    Integer count(std::uint64_t n)
    {
        if (n > max_n_) throw std::out_of_range("oracle was built for n <= " + std::to_string(max_n_));
        return ways(n, 0);
    }

private:
    Integer &slot(std::uint64_t remaining, std::size_t idx) { return memo_[remaining * (parts_.size() + 1) + idx]; }

    Integer ways(std::uint64_t remaining, std::size_t idx)
    {
        if (remaining == 0) return Integer(1);
        if (idx == parts_.size()) return Integer(0);
        auto &cached = slot(remaining, idx);
        if (cached >= 0) return cached;
        Integer total = 0;
        const auto part = parts_[idx];
        for (std::uint64_t c = 0; c * part <= remaining; ++c) {
            total += colour_weight_[c] * ways(remaining - c * part, idx + 1);
        }
        slot(remaining, idx) = total;
        return total;
    }

    PartitionFunctionId id_;
    std::uint64_t max_n_;
    std::vector<std::uint64_t> parts_;
    std::vector<Integer> memo_;
    std::vector<Integer> colour_weight_;
};

inline Integer oracle_count(const PartitionFunctionId &id, std::uint64_t n)
{
    PartitionOracle oracle(id, n);
    return oracle.count(n);
}

inline VerificationOutcome cross_validate(const PartitionFunctionId &id, std::uint64_t up_to)
{
    const auto start = std::chrono::steady_clock::now();
    VerificationOutcome out;
    if (!id.coprime()) {
        out = VerificationOutcome::with_status(Status::not_comparable,
                                               "non-coprime moduli: eta quotient and part restriction differ");
    } else {
        const auto series = series_of(id, up_to);
        PartitionOracle oracle(id, up_to);
        out = VerificationOutcome::pass_with(up_to + 1);
        for (std::uint64_t n = 0; n <= up_to; ++n) {
            auto expected = oracle.count(n);
            auto actual = series.coefficient(n);
            if (expected != actual) {
                out = VerificationOutcome::fail_at(n, expected.get_str(), actual.get_str(), n + 1);
                break;
            }
        }
    }
    out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace qseries
