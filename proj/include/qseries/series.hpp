#pragma once

// Truncated formal power series in q with exact integer or residue
// coefficients. Every value carries a validity order N: coefficients of
// q^0..q^N are exact, nothing beyond N is ever read or produced.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <qseries/outcome.hpp>

namespace qseries {

using Integer = mpz_class;

// Residue moduli are capped so that a product of two residues fits in 62 bits.
inline constexpr std::uint64_t max_modulus = std::uint64_t{1} << 31;

class CoefficientDomain
{
public:
    constexpr CoefficientDomain() = default;

    static constexpr CoefficientDomain exact() { return CoefficientDomain{}; }

    static CoefficientDomain modulo(std::uint64_t m)
    {
        if (m < 2 || m > max_modulus) {
            throw std::invalid_argument("modulus must lie in [2, 2^31], got " + std::to_string(m));
        }
        CoefficientDomain d;
        d.modulus_ = m;
        return d;
    }

    constexpr bool is_exact() const { return modulus_ == 0; }
    // 0 in exact mode.
    constexpr std::uint64_t modulus() const { return modulus_; }

    std::string to_string() const { return is_exact() ? "exact" : "mod " + std::to_string(modulus_); }

    friend constexpr auto operator<=>(const CoefficientDomain &, const CoefficientDomain &) = default;

private:
    std::uint64_t modulus_ = 0;
};

namespace detail {

inline std::uint64_t reduce(const Integer &v, std::uint64_t m)
{
    return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(m));
}

inline std::uint64_t reduce(std::int64_t v, std::uint64_t m)
{
    const auto sm = static_cast<std::int64_t>(m);
    auto r = v % sm;
    return static_cast<std::uint64_t>(r < 0 ? r + sm : r);
}

// Inverse of a modulo m, or 0 when gcd(a, m) != 1.
inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m)
{
    std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const auto q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    if (old_r != 1) return 0;
    return reduce(old_s, m);
}

// How many products bounded by `term_bound` an int64 accumulator can absorb
// before it has to be folded back into [0, m).
inline std::size_t flush_interval(std::uint64_t term_bound)
{
    const std::uint64_t budget = std::uint64_t{1} << 62;
    return static_cast<std::size_t>(std::max<std::uint64_t>(1, budget / std::max<std::uint64_t>(term_bound, 1)));
}

} // namespace detail

class TruncatedSeries
{
public:
    TruncatedSeries() : exact_(1) {}

    static TruncatedSeries zero(std::size_t order, CoefficientDomain domain)
    {
        TruncatedSeries s;
        s.domain_ = domain;
        if (domain.is_exact()) {
            s.exact_.assign(order + 1, Integer(0));
        } else {
            s.exact_.clear();
            s.residues_.assign(order + 1, 0);
        }
        return s;
    }

    static TruncatedSeries one(std::size_t order, CoefficientDomain domain)
    {
        auto s = zero(order, domain);
        s.set(0, Integer(1));
        return s;
    }

    // Takes ownership of exact coefficients; reduces them when the domain is residual.
    static TruncatedSeries from_integers(std::vector<Integer> coeffs, CoefficientDomain domain)
    {
        if (coeffs.empty()) throw std::invalid_argument("a series needs at least one coefficient");
        TruncatedSeries s;
        s.domain_ = domain;
        if (domain.is_exact()) {
            s.exact_ = std::move(coeffs);
        } else {
            s.exact_.clear();
            s.residues_.resize(coeffs.size());
            for (std::size_t i = 0; i < coeffs.size(); ++i) s.residues_[i] = detail::reduce(coeffs[i], domain.modulus());
        }
        return s;
    }

    // Residues must already lie in [0, m).
    static TruncatedSeries from_residues(std::vector<std::uint64_t> residues, std::uint64_t m)
    {
        if (residues.empty()) throw std::invalid_argument("a series needs at least one coefficient");
        TruncatedSeries s;
        s.domain_ = CoefficientDomain::modulo(m);
        s.exact_.clear();
        s.residues_ = std::move(residues);
        for (auto r : s.residues_) {
            if (r >= m) throw std::invalid_argument("residue out of range");
        }
        return s;
    }

    std::size_t order() const { return (domain_.is_exact() ? exact_.size() : residues_.size()) - 1; }
    const CoefficientDomain &domain() const { return domain_; }

    // Exact value, or the residue in [0, M) for a residual series.
    Integer coefficient(std::size_t n) const
    {
        check_index(n);
        return domain_.is_exact() ? exact_[n] : Integer(static_cast<unsigned long>(residues_[n]));
    }

    std::uint64_t residue(std::size_t n, std::uint64_t m) const
    {
        check_index(n);
        if (domain_.is_exact()) return detail::reduce(exact_[n], m);
        if (domain_.modulus() % m != 0) {
            throw std::invalid_argument("cannot reduce a " + domain_.to_string() + " series modulo "
                                        + std::to_string(m));
        }
        return residues_[n] % m;
    }

    std::span<const Integer> integers() const
    {
        if (!domain_.is_exact()) throw std::logic_error("series is residual; no exact coefficients");
        return exact_;
    }

    std::span<const std::uint64_t> residues() const
    {
        if (domain_.is_exact()) throw std::logic_error("series is exact; no residue storage");
        return residues_;
    }

    std::span<Integer> mutable_integers() { return exact_; }
    std::span<std::uint64_t> mutable_residues() { return residues_; }

    void set(std::size_t n, const Integer &v)
    {
        check_index(n);
        if (domain_.is_exact()) {
            exact_[n] = v;
        } else {
            residues_[n] = detail::reduce(v, domain_.modulus());
        }
    }

    bool is_zero_at(std::size_t n) const
    {
        check_index(n);
        return domain_.is_exact() ? sgn(exact_[n]) == 0 : residues_[n] == 0;
    }

    friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        return a.domain_ == b.domain_ && a.exact_ == b.exact_ && a.residues_ == b.residues_;
    }

private:
    void check_index(std::size_t n) const
    {
        if (n > order()) {
            throw std::out_of_range("coefficient " + std::to_string(n) + " beyond validity order "
                                    + std::to_string(order()));
        }
    }

    CoefficientDomain domain_;
    std::vector<Integer> exact_;
    std::vector<std::uint64_t> residues_;
};

struct SparseTerm {
    std::uint64_t exponent;
    std::int64_t coefficient;

    friend bool operator==(const SparseTerm &, const SparseTerm &) = default;
};

// A short list of monomials with small coefficients, e.g. the pentagonal
// expansion of an Euler product. Only ever used as a multiplication operand.
class SparseSupportSeries
{
public:
    SparseSupportSeries(std::vector<SparseTerm> terms, std::uint64_t order) : terms_(std::move(terms)), order_(order)
    {
        std::erase_if(terms_, [](const SparseTerm &t) { return t.coefficient == 0; });
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i].exponent > order_) throw std::invalid_argument("sparse term exceeds declared order");
            if (i > 0 && terms_[i].exponent <= terms_[i - 1].exponent) {
                throw std::invalid_argument("sparse exponents must be strictly increasing");
            }
        }
    }

    const std::vector<SparseTerm> &terms() const { return terms_; }
    std::uint64_t order() const { return order_; }

    std::int64_t constant_term() const
    {
        return (!terms_.empty() && terms_.front().exponent == 0) ? terms_.front().coefficient : 0;
    }

    TruncatedSeries densify(CoefficientDomain domain) const
    {
        auto s = TruncatedSeries::zero(order_, domain);
        for (const auto &t : terms_) s.set(t.exponent, Integer(static_cast<long>(t.coefficient)));
        return s;
    }

    friend bool operator==(const SparseSupportSeries &, const SparseSupportSeries &) = default;

private:
    std::vector<SparseTerm> terms_;
    std::uint64_t order_;
};

namespace detail {

inline void require_same_domain(const TruncatedSeries &a, const TruncatedSeries &b)
{
    if (a.domain() != b.domain()) {
        throw std::invalid_argument("domain mismatch: " + a.domain().to_string() + " vs " + b.domain().to_string());
    }
}

} // namespace detail

inline TruncatedSeries make_series(const std::vector<Integer> &coeffs, std::int64_t order, CoefficientDomain domain)
{
    if (order < 0) throw std::invalid_argument("series order must be non-negative");
    const auto n = static_cast<std::size_t>(order);
    std::vector<Integer> c(n + 1, Integer(0));
    for (std::size_t i = 0; i <= n && i < coeffs.size(); ++i) c[i] = coeffs[i];
    return TruncatedSeries::from_integers(std::move(c), domain);
}

inline TruncatedSeries make_series(std::initializer_list<long> coeffs, std::int64_t order, CoefficientDomain domain)
{
    std::vector<Integer> c;
    for (auto v : coeffs) c.emplace_back(v);
    return make_series(c, order, domain);
}

inline TruncatedSeries truncate(const TruncatedSeries &a, std::size_t order)
{
    if (order > a.order()) throw std::out_of_range("cannot extend a series by truncation");
    auto r = TruncatedSeries::zero(order, a.domain());
    if (a.domain().is_exact()) {
        std::copy_n(a.integers().begin(), order + 1, r.mutable_integers().begin());
    } else {
        std::copy_n(a.residues().begin(), order + 1, r.mutable_residues().begin());
    }
    return r;
}

// Maps an exact series (or a residual one whose modulus m divides) into mod m.
inline TruncatedSeries reduce(const TruncatedSeries &a, std::uint64_t m)
{
    std::vector<std::uint64_t> r(a.order() + 1);
    for (std::size_t n = 0; n <= a.order(); ++n) r[n] = a.residue(n, m);
    return TruncatedSeries::from_residues(std::move(r), m);
}

namespace detail {

template <typename Op>
TruncatedSeries combine(const TruncatedSeries &a, const TruncatedSeries &b, Op op_exact, bool subtract)
{
    require_same_domain(a, b);
    const auto order = std::min(a.order(), b.order());
    auto r = TruncatedSeries::zero(order, a.domain());
    if (a.domain().is_exact()) {
        auto out = r.mutable_integers();
        auto x = a.integers();
        auto y = b.integers();
        for (std::size_t n = 0; n <= order; ++n) op_exact(out[n], x[n], y[n]);
    } else {
        const auto m = a.domain().modulus();
        auto out = r.mutable_residues();
        auto x = a.residues();
        auto y = b.residues();
        for (std::size_t n = 0; n <= order; ++n) out[n] = subtract ? (x[n] + m - y[n]) % m : (x[n] + y[n]) % m;
    }
    return r;
}

} // namespace detail

inline TruncatedSeries add(const TruncatedSeries &a, const TruncatedSeries &b)
{
    return detail::combine(
        a, b, [](Integer &o, const Integer &x, const Integer &y) { o = x + y; }, false);
}

inline TruncatedSeries sub(const TruncatedSeries &a, const TruncatedSeries &b)
{
    return detail::combine(
        a, b, [](Integer &o, const Integer &x, const Integer &y) { o = x - y; }, true);
}

inline TruncatedSeries scale(const TruncatedSeries &a, const Integer &c)
{
    auto r = TruncatedSeries::zero(a.order(), a.domain());
    if (a.domain().is_exact()) {
        auto out = r.mutable_integers();
        auto x = a.integers();
        for (std::size_t n = 0; n <= a.order(); ++n) out[n] = c * x[n];
    } else {
        const auto m = a.domain().modulus();
        const auto cm = detail::reduce(c, m);
        auto out = r.mutable_residues();
        auto x = a.residues();
        for (std::size_t n = 0; n <= a.order(); ++n) out[n] = (cm * x[n]) % m;
    }
    return r;
}

inline TruncatedSeries negate(const TruncatedSeries &a) { return scale(a, Integer(-1)); }

// q^k * a. The product is known exactly up to a.order() + k.
inline TruncatedSeries shift(const TruncatedSeries &a, std::size_t k)
{
    auto r = TruncatedSeries::zero(a.order() + k, a.domain());
    if (a.domain().is_exact()) {
        std::copy(a.integers().begin(), a.integers().end(), r.mutable_integers().begin() + static_cast<std::ptrdiff_t>(k));
    } else {
        std::copy(a.residues().begin(), a.residues().end(), r.mutable_residues().begin() + static_cast<std::ptrdiff_t>(k));
    }
    return r;
}

inline TruncatedSeries mul(const TruncatedSeries &a, const TruncatedSeries &b)
{
    detail::require_same_domain(a, b);
    const auto order = std::min(a.order(), b.order());
    auto r = TruncatedSeries::zero(order, a.domain());
    if (a.domain().is_exact()) {
        auto out = r.mutable_integers();
        auto x = a.integers();
        auto y = b.integers();
        for (std::size_t i = 0; i <= order; ++i) {
            if (sgn(x[i]) == 0) continue;
            for (std::size_t j = 0; i + j <= order; ++j) {
                mpz_addmul(out[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
            }
        }
    } else {
        const auto m = a.domain().modulus();
        auto out = r.mutable_residues();
        auto x = a.residues();
        auto y = b.residues();
        for (std::size_t n = 0; n <= order; ++n) {
            unsigned __int128 acc = 0;
            for (std::size_t i = 0; i <= n; ++i) acc += static_cast<unsigned __int128>(x[i] * y[n - i]);
            out[n] = static_cast<std::uint64_t>(acc % m);
        }
    }
    return r;
}

// Dense product with a sparse operand; cost is order * #terms.
inline TruncatedSeries mul_sparse(const TruncatedSeries &a, const SparseSupportSeries &s)
{
    const auto order = std::min<std::uint64_t>(a.order(), s.order());
    auto r = TruncatedSeries::zero(order, a.domain());
    if (a.domain().is_exact()) {
        auto out = r.mutable_integers();
        auto x = a.integers();
        for (const auto &t : s.terms()) {
            if (t.exponent > order) break;
            const Integer c(static_cast<long>(t.coefficient));
            for (std::size_t n = t.exponent; n <= order; ++n) {
                if (t.coefficient == 1) {
                    out[n] += x[n - t.exponent];
                } else if (t.coefficient == -1) {
                    out[n] -= x[n - t.exponent];
                } else {
                    mpz_addmul(out[n].get_mpz_t(), c.get_mpz_t(), x[n - t.exponent].get_mpz_t());
                }
            }
        }
    } else {
        const auto m = a.domain().modulus();
        const auto sm = static_cast<std::int64_t>(m);
        auto x = a.residues();
        std::vector<std::int64_t> acc(order + 1, 0);
        const auto flush_every = detail::flush_interval((m / 2 + 1) * m);
        std::size_t pending = 0;
        for (const auto &t : s.terms()) {
            if (t.exponent > order) break;
            // Symmetric representative keeps accumulators small.
            auto c = static_cast<std::int64_t>(detail::reduce(t.coefficient, m));
            if (c > sm / 2) c -= sm;
            for (std::size_t n = t.exponent; n <= order; ++n) acc[n] += c * static_cast<std::int64_t>(x[n - t.exponent]);
            if (++pending == flush_every) {
                for (auto &v : acc) v %= sm;
                pending = 0;
            }
        }
        auto out = r.mutable_residues();
        for (std::size_t n = 0; n <= order; ++n) out[n] = detail::reduce(acc[n], m);
    }
    return r;
}

// a / s for a sparse s with unit constant term; the sparse analogue of invert.
inline TruncatedSeries div_sparse(const TruncatedSeries &a, const SparseSupportSeries &s)
{
    const auto order = std::min<std::uint64_t>(a.order(), s.order());
    const auto c0 = s.constant_term();
    const auto &terms = s.terms();
    if (a.domain().is_exact()) {
        if (c0 != 1 && c0 != -1) throw std::domain_error("sparse divisor has a non-unit constant term");
        auto r = truncate(a, order);
        auto out = r.mutable_integers();
        for (std::size_t n = 0; n <= order; ++n) {
            Integer v = out[n];
            for (std::size_t k = 1; k < terms.size() && terms[k].exponent <= n; ++k) {
                const auto &t = terms[k];
                if (t.coefficient == 1) {
                    v -= out[n - t.exponent];
                } else if (t.coefficient == -1) {
                    v += out[n - t.exponent];
                } else {
                    const Integer c(static_cast<long>(t.coefficient));
                    mpz_submul(v.get_mpz_t(), c.get_mpz_t(), out[n - t.exponent].get_mpz_t());
                }
            }
            out[n] = c0 == 1 ? v : Integer(-v);
        }
        return r;
    }
    const auto m = a.domain().modulus();
    const auto sm = static_cast<std::int64_t>(m);
    const auto inv0 = detail::inverse_mod(detail::reduce(c0, m), m);
    if (inv0 == 0) throw std::domain_error("sparse divisor constant term is not a unit modulo " + std::to_string(m));
    std::vector<std::int64_t> coeff(terms.size());
    for (std::size_t k = 0; k < terms.size(); ++k) {
        auto c = static_cast<std::int64_t>(detail::reduce(terms[k].coefficient, m));
        coeff[k] = c > sm / 2 ? c - sm : c;
    }
    const auto flush_every = detail::flush_interval((m / 2 + 1) * m);
    auto r = truncate(a, order);
    auto out = r.mutable_residues();
    for (std::size_t n = 0; n <= order; ++n) {
        std::int64_t v = static_cast<std::int64_t>(out[n]);
        std::size_t pending = 0;
        for (std::size_t k = 1; k < terms.size() && terms[k].exponent <= n; ++k) {
            v -= coeff[k] * static_cast<std::int64_t>(out[n - terms[k].exponent]);
            if (++pending == flush_every) {
                v %= sm;
                pending = 0;
            }
        }
        const auto red = detail::reduce(v, m);
        out[n] = inv0 == 1 ? red : static_cast<std::uint64_t>((static_cast<unsigned __int128>(red) * inv0) % m);
    }
    return r;
}

// Reciprocal via c(n) = -a(0)^{-1} * sum_{j=1..n} a(j) c(n-j).
inline TruncatedSeries invert(const TruncatedSeries &a)
{
    const auto order = a.order();
    auto r = TruncatedSeries::zero(order, a.domain());
    if (a.domain().is_exact()) {
        auto x = a.integers();
        if (x[0] != 1 && x[0] != -1) throw std::domain_error("constant term is not a unit in the integers");
        std::vector<std::size_t> support;
        for (std::size_t j = 1; j <= order; ++j) {
            if (sgn(x[j]) != 0) support.push_back(j);
        }
        auto out = r.mutable_integers();
        out[0] = x[0];
        Integer acc;
        for (std::size_t n = 1; n <= order; ++n) {
            acc = 0;
            for (auto j : support) {
                if (j > n) break;
                mpz_addmul(acc.get_mpz_t(), x[j].get_mpz_t(), out[n - j].get_mpz_t());
            }
            out[n] = x[0] == 1 ? Integer(-acc) : acc;
        }
        return r;
    }
    const auto m = a.domain().modulus();
    auto x = a.residues();
    const auto inv0 = detail::inverse_mod(x[0], m);
    if (inv0 == 0) throw std::domain_error("constant term is not a unit modulo " + std::to_string(m));
    auto out = r.mutable_residues();
    out[0] = inv0;
    for (std::size_t n = 1; n <= order; ++n) {
        unsigned __int128 acc = 0;
        for (std::size_t j = 1; j <= n; ++j) acc += static_cast<unsigned __int128>(x[j] * out[n - j]);
        const auto s = static_cast<std::uint64_t>(acc % m);
        out[n] = static_cast<std::uint64_t>((static_cast<unsigned __int128>((m - s) % m) * inv0) % m);
    }
    return r;
}

inline TruncatedSeries pow(const TruncatedSeries &a, std::int64_t e)
{
    if (e < 0) return pow(invert(a), -e);
    auto result = TruncatedSeries::one(a.order(), a.domain());
    auto base = a;
    bool first = true;
    while (e > 0) {
        if (e & 1) {
            result = first ? base : mul(result, base);
            first = false;
        }
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return result;
}

// Substitutes q -> q^t, keeping a.order() as the validity order.
inline TruncatedSeries dilate(const TruncatedSeries &a, std::uint64_t t)
{
    if (t == 0) throw std::invalid_argument("dilation factor must be positive");
    auto r = TruncatedSeries::zero(a.order(), a.domain());
    for (std::size_t n = 0; n * t <= a.order(); ++n) {
        if (a.domain().is_exact()) {
            r.mutable_integers()[n * t] = a.integers()[n];
        } else {
            r.mutable_residues()[n * t] = a.residues()[n];
        }
    }
    return r;
}

// Substitutes q -> q^t and reports the result to `order`, which may reach
// t * a.order() + t - 1 because the gaps are known zeros.
inline TruncatedSeries dilate(const TruncatedSeries &a, std::uint64_t t, std::size_t order)
{
    if (t == 0) throw std::invalid_argument("dilation factor must be positive");
    if (order > t * a.order() + t - 1) throw std::out_of_range("dilated order exceeds what the operand determines");
    auto r = TruncatedSeries::zero(order, a.domain());
    for (std::size_t n = 0; n * t <= order; ++n) {
        if (a.domain().is_exact()) {
            r.mutable_integers()[n * t] = a.integers()[n];
        } else {
            r.mutable_residues()[n * t] = a.residues()[n];
        }
    }
    return r;
}

// c'(n) = a(step * n + offset). offset may exceed step.
inline TruncatedSeries subsequence(const TruncatedSeries &a, std::uint64_t step, std::uint64_t offset)
{
    if (step == 0) throw std::invalid_argument("step must be positive");
    if (offset > a.order()) {
        throw std::out_of_range("offset " + std::to_string(offset) + " beyond validity order " + std::to_string(a.order()));
    }
    const auto order = (a.order() - offset) / step;
    auto r = TruncatedSeries::zero(order, a.domain());
    for (std::size_t n = 0; n <= order; ++n) {
        if (a.domain().is_exact()) {
            r.mutable_integers()[n] = a.integers()[step * n + offset];
        } else {
            r.mutable_residues()[n] = a.residues()[step * n + offset];
        }
    }
    return r;
}

inline TruncatedSeries extract_ap(const TruncatedSeries &a, std::uint64_t step, std::uint64_t residue)
{
    if (step == 0 || residue >= step) throw std::invalid_argument("residue must lie in [0, step)");
    return subsequence(a, step, residue);
}

// Pass, or the first n <= up_to where a(n) and b(n) differ mod m (witness
// expected = b's residue, actual = a's residue).
inline VerificationOutcome congruent_to_order(const TruncatedSeries &a, const TruncatedSeries &b, std::uint64_t m,
                                              std::size_t up_to)
{
    if (m < 2) throw std::invalid_argument("modulus must be at least 2");
    if (up_to > std::min(a.order(), b.order())) {
        throw std::out_of_range("comparison order " + std::to_string(up_to) + " exceeds validity order "
                                + std::to_string(std::min(a.order(), b.order())));
    }
    for (std::size_t n = 0; n <= up_to; ++n) {
        const auto x = a.residue(n, m);
        const auto y = b.residue(n, m);
        if (x != y) return VerificationOutcome::fail_at(n, std::to_string(y), std::to_string(x), n + 1);
    }
    return VerificationOutcome::pass_with(up_to + 1);
}

// Exact coefficient-wise equality up to `up_to`.
inline VerificationOutcome equal_to_order(const TruncatedSeries &a, const TruncatedSeries &b, std::size_t up_to)
{
    detail::require_same_domain(a, b);
    if (up_to > std::min(a.order(), b.order())) {
        throw std::out_of_range("comparison order " + std::to_string(up_to) + " exceeds validity order "
                                + std::to_string(std::min(a.order(), b.order())));
    }
    for (std::size_t n = 0; n <= up_to; ++n) {
        auto x = a.coefficient(n);
        auto y = b.coefficient(n);
        if (x != y) return VerificationOutcome::fail_at(n, y.get_str(), x.get_str(), n + 1);
    }
    return VerificationOutcome::pass_with(up_to + 1);
}

} // namespace qseries
