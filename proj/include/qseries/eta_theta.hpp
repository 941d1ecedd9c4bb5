#pragma once

// Euler products f_r = (q^r; q^r)_inf, Pochhammer symbols, eta quotients,
// the classical theta functions and the Rogers-Ramanujan quotient R(q).

#include <charconv>
#include <compare>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <qseries/series.hpp>

namespace qseries {

struct EtaFactor {
    std::uint64_t dilation;
    std::int64_t exponent;

    friend auto operator<=>(const EtaFactor &, const EtaFactor &) = default;
};

// prod f_r^{e_r}. Factors are kept sorted by dilation with merged exponents
// and no zero exponents, so equal quotients compare equal.
class EtaQuotientSpec
{
public:
    EtaQuotientSpec() = default;
    EtaQuotientSpec(std::initializer_list<EtaFactor> factors) : EtaQuotientSpec(std::vector<EtaFactor>(factors)) {}

    explicit EtaQuotientSpec(const std::vector<EtaFactor> &factors)
    {
        std::map<std::uint64_t, std::int64_t> merged;
        for (const auto &f : factors) {
            if (f.dilation == 0) throw std::invalid_argument("eta factor dilation must be positive");
            merged[f.dilation] += f.exponent;
        }
        for (const auto &[r, e] : merged) {
            if (e != 0) factors_.push_back({r, e});
        }
    }

    const std::vector<EtaFactor> &factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }

    std::int64_t exponent_of(std::uint64_t r) const
    {
        for (const auto &f : factors_) {
            if (f.dilation == r) return f.exponent;
        }
        return 0;
    }

    // Sum of exponents; twice the modular weight of the quotient.
    std::int64_t weight() const
    {
        std::int64_t w = 0;
        for (const auto &f : factors_) w += f.exponent;
        return w;
    }

    EtaQuotientSpec operator*(const EtaQuotientSpec &o) const
    {
        auto all = factors_;
        all.insert(all.end(), o.factors_.begin(), o.factors_.end());
        return EtaQuotientSpec(all);
    }

    EtaQuotientSpec pow(std::int64_t k) const
    {
        auto all = factors_;
        for (auto &f : all) f.exponent *= k;
        return EtaQuotientSpec(all);
    }

    EtaQuotientSpec dilated(std::uint64_t t) const
    {
        auto all = factors_;
        for (auto &f : all) f.dilation *= t;
        return EtaQuotientSpec(all);
    }

    // Canonical "r:e,r:e" form, as accepted by parse().
    std::string to_string() const
    {
        std::string s;
        for (const auto &f : factors_) {
            if (!s.empty()) s += ',';
            s += std::to_string(f.dilation) + ':' + std::to_string(f.exponent);
        }
        return s;
    }

    // Human-readable product, e.g. "f2^2/f1".
    std::string to_math() const
    {
        std::string num, den;
        std::size_t num_count = 0, den_count = 0;
        for (const auto &f : factors_) {
            auto &dst = f.exponent > 0 ? num : den;
            auto &cnt = f.exponent > 0 ? num_count : den_count;
            const auto e = f.exponent > 0 ? f.exponent : -f.exponent;
            if (!dst.empty()) dst += ' ';
            dst += 'f' + std::to_string(f.dilation);
            if (e != 1) dst += '^' + std::to_string(e);
            ++cnt;
        }
        if (num.empty()) num = "1";
        if (den.empty()) return num;
        return num + "/" + (den_count > 1 ? "(" + den + ")" : den);
    }

    static EtaQuotientSpec parse(std::string_view text)
    {
        std::vector<EtaFactor> out;
        std::size_t pos = 0;
        auto trim = [](std::string_view v) {
            while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
            while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
            return v;
        };
        if (trim(text).empty()) return {};
        while (pos <= text.size()) {
            auto comma = text.find(',', pos);
            if (comma == std::string_view::npos) comma = text.size();
            auto item = trim(text.substr(pos, comma - pos));
            auto colon = item.find(':');
            if (colon == std::string_view::npos) throw std::invalid_argument("malformed eta factor '" + std::string(item) + "'");
            auto rs = trim(item.substr(0, colon));
            auto es = trim(item.substr(colon + 1));
            std::uint64_t r = 0;
            std::int64_t e = 0;
            auto [p1, ec1] = std::from_chars(rs.data(), rs.data() + rs.size(), r);
            auto [p2, ec2] = std::from_chars(es.data(), es.data() + es.size(), e);
            if (ec1 != std::errc{} || p1 != rs.data() + rs.size() || ec2 != std::errc{} || p2 != es.data() + es.size()
                || r == 0) {
                throw std::invalid_argument("malformed eta factor '" + std::string(item) + "'");
            }
            out.push_back({r, e});
            pos = comma + 1;
        }
        return EtaQuotientSpec(out);
    }

    friend auto operator<=>(const EtaQuotientSpec &, const EtaQuotientSpec &) = default;
    friend bool operator==(const EtaQuotientSpec &, const EtaQuotientSpec &) = default;

private:
    std::vector<EtaFactor> factors_;
};

// (q^a; q^b)_inf
struct PochhammerSpec {
    std::uint64_t a;
    std::uint64_t b;

    PochhammerSpec(std::uint64_t a_, std::uint64_t b_) : a(a_), b(b_)
    {
        if (a < 1 || a > b) throw std::invalid_argument("Pochhammer spec needs 1 <= a <= b");
    }
};

// Non-negative exponent written as a fraction; only integral values are admissible.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

// Ramanujan's f(a, b) with a = sign_a q^alpha, b = sign_b q^beta, plus the
// three named specialisations.
class ThetaSpec
{
public:
    enum class Kind { phi, psi, f_neg_q, general };

    static ThetaSpec phi() { return ThetaSpec(Kind::phi, 1, 1, 1, 1); }
    static ThetaSpec psi() { return ThetaSpec(Kind::psi, 1, 1, 1, 3); }
    static ThetaSpec f_neg_q() { return ThetaSpec(Kind::f_neg_q, -1, 1, -1, 2); }

    static ThetaSpec general(int sign_a, Rational alpha, int sign_b, Rational beta)
    {
        if ((sign_a != 1 && sign_a != -1) || (sign_b != 1 && sign_b != -1)) {
            throw std::invalid_argument("theta signs must be +1 or -1");
        }
        // E(n) = alpha n(n+1)/2 + beta n(n-1)/2 gives E(1) = alpha and
        // E(-1) = beta, so integrality for all n forces integral alpha, beta.
        auto integral = [](Rational r) { return r.den != 0 && r.num % r.den == 0; };
        if (!integral(alpha) || !integral(beta)) throw std::invalid_argument("theta exponents are non-integral");
        const auto a = alpha.num / alpha.den;
        const auto b = beta.num / beta.den;
        if (a < 0 || b < 0 || a + b == 0) throw std::invalid_argument("theta exponents must be >= 0 with positive sum");
        return ThetaSpec(Kind::general, sign_a, a, sign_b, b);
    }

    Kind kind() const { return kind_; }
    int sign_a() const { return sign_a_; }
    int sign_b() const { return sign_b_; }
    std::int64_t alpha() const { return alpha_; }
    std::int64_t beta() const { return beta_; }

    std::string to_string() const
    {
        switch (kind_) {
        case Kind::phi: return "phi(q)";
        case Kind::psi: return "psi(q)";
        case Kind::f_neg_q: return "f(-q)";
        case Kind::general: break;
        }
        auto arg = [](int s, std::int64_t e) { return std::string(s < 0 ? "-" : "") + "q^" + std::to_string(e); };
        return "f(" + arg(sign_a_, alpha_) + "," + arg(sign_b_, beta_) + ")";
    }

private:
    ThetaSpec(Kind k, int sa, std::int64_t a, int sb, std::int64_t b) : kind_(k), sign_a_(sa), sign_b_(sb), alpha_(a), beta_(b) {}

    Kind kind_;
    int sign_a_;
    int sign_b_;
    std::int64_t alpha_;
    std::int64_t beta_;
};

// Generalised pentagonal expansion of f_r: sum_k (-1)^k q^{r k(3k-1)/2}.
inline SparseSupportSeries euler_product(std::uint64_t r, std::uint64_t order)
{
    if (r == 0) throw std::invalid_argument("dilation must be positive");
    std::vector<SparseTerm> terms;
    terms.push_back({0, 1});
    for (std::uint64_t k = 1;; ++k) {
        const auto lo = r * (k * (3 * k - 1) / 2);
        const auto hi = r * (k * (3 * k + 1) / 2);
        if (lo > order) break;
        const std::int64_t sign = (k % 2 == 1) ? -1 : 1;
        terms.push_back({lo, sign});
        if (hi <= order) terms.push_back({hi, sign});
    }
    return SparseSupportSeries(std::move(terms), order);
}

inline SparseSupportSeries euler_product(std::uint64_t order) { return euler_product(1, order); }

// prod_{j>=0} (1 - q^{a + j b}), folding in only factors that reach the order.
inline TruncatedSeries pochhammer_series(const PochhammerSpec &spec, std::size_t order,
                                         CoefficientDomain domain = CoefficientDomain::exact())
{
    auto r = TruncatedSeries::one(order, domain);
    for (std::uint64_t e = spec.a; e <= order; e += spec.b) {
        if (domain.is_exact()) {
            auto c = r.mutable_integers();
            for (std::size_t n = order; n >= e; --n) c[n] -= c[n - e];
        } else {
            const auto m = domain.modulus();
            auto c = r.mutable_residues();
            for (std::size_t n = order; n >= e; --n) c[n] = (c[n] + m - c[n - e]) % m;
        }
    }
    return r;
}

inline TruncatedSeries eta_quotient(const EtaQuotientSpec &spec, std::size_t order,
                                    CoefficientDomain domain = CoefficientDomain::exact())
{
    auto r = TruncatedSeries::one(order, domain);
    for (const auto &f : spec.factors()) {
        const auto pent = euler_product(f.dilation, order);
        if (f.exponent > 0) {
            for (std::int64_t i = 0; i < f.exponent; ++i) r = mul_sparse(r, pent);
        } else {
            for (std::int64_t i = 0; i < -f.exponent; ++i) r = div_sparse(r, pent);
        }
    }
    return r;
}

inline TruncatedSeries theta_series(const ThetaSpec &spec, std::size_t order,
                                    CoefficientDomain domain = CoefficientDomain::exact())
{
    std::vector<Integer> c(order + 1, Integer(0));
    const auto a = spec.alpha();
    const auto b = spec.beta();
    auto exponent = [&](std::int64_t n) { return a * (n * (n + 1) / 2) + b * (n * (n - 1) / 2); };
    auto sign = [&](std::int64_t n) {
        int s = 1;
        if (spec.sign_a() < 0 && ((n * (n + 1) / 2) % 2 != 0)) s = -s;
        if (spec.sign_b() < 0 && ((n * (n - 1) / 2) % 2 != 0)) s = -s;
        return s;
    };
    const auto limit = static_cast<std::int64_t>(order);
    // alpha + beta > 0 makes E(n) grow quadratically in |n| on both sides.
    for (std::int64_t n = 0; exponent(n) <= limit; ++n) {
        c[static_cast<std::size_t>(exponent(n))] += sign(n);
    }
    for (std::int64_t n = -1; exponent(n) <= limit; --n) {
        c[static_cast<std::size_t>(exponent(n))] += sign(n);
    }
    return TruncatedSeries::from_integers(std::move(c), domain);
}

// R(q^dilation) = (q;q^5)(q^4;q^5) / ((q^2;q^5)(q^3;q^5)) at q -> q^dilation.
inline TruncatedSeries rogers_ramanujan_series(std::size_t order, CoefficientDomain domain = CoefficientDomain::exact(),
                                               std::uint64_t dilation = 1)
{
    if (dilation == 0) throw std::invalid_argument("dilation must be positive");
    const auto base = order / dilation;
    auto num = mul(pochhammer_series({1, 5}, base, domain), pochhammer_series({4, 5}, base, domain));
    auto den = mul(pochhammer_series({2, 5}, base, domain), pochhammer_series({3, 5}, base, domain));
    auto r = mul(num, invert(den));
    return dilation == 1 ? r : dilate(r, dilation, order);
}

// Eta-quotient forms of the theta functions. phi uses f2^5/(f1^2 f4^2); the
// variant with f2 to the first power disagrees from q^2 on.
inline EtaQuotientSpec theta_eta_form(ThetaSpec::Kind kind)
{
    switch (kind) {
    case ThetaSpec::Kind::phi: return {{2, 5}, {1, -2}, {4, -2}};
    case ThetaSpec::Kind::psi: return {{2, 2}, {1, -1}};
    case ThetaSpec::Kind::f_neg_q: return {{1, 1}};
    case ThetaSpec::Kind::general: break;
    }
    throw std::invalid_argument("general theta functions have no fixed eta-quotient form");
}

} // namespace qseries
