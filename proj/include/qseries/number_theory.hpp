#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>

namespace qseries {

inline bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m)
{
    unsigned __int128 result = 1 % m, b = base % m;
    while (e > 0) {
        if (e & 1) result = (result * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(result);
}

// Legendre symbol (a/p) by Euler's criterion.
inline int legendre(std::int64_t a, std::uint64_t p)
{
    if (p < 3 || !is_prime(p)) throw std::invalid_argument("legendre symbol needs an odd prime, got " + std::to_string(p));
    const auto sp = static_cast<std::int64_t>(p);
    const auto r = static_cast<std::uint64_t>(((a % sp) + sp) % sp);
    if (r == 0) return 0;
    return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Smallest prime p >= from with (a/p) == -1.
inline std::uint64_t smallest_nonresidue_prime(std::int64_t a, std::uint64_t from = 5)
{
    for (std::uint64_t p = std::max<std::uint64_t>(from, 3);; ++p) {
        if (is_prime(p) && legendre(a, p) == -1) return p;
    }
}

inline unsigned nu_p(std::uint64_t n, std::uint64_t p)
{
    if (n == 0) throw std::invalid_argument("p-adic valuation of 0 is undefined");
    if (p < 2) throw std::invalid_argument("valuation base must be at least 2");
    unsigned e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

inline std::uint64_t isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline std::int64_t triangular(std::int64_t m) { return m * (m + 1) / 2; }
inline std::int64_t gen_pentagonal(std::int64_t k) { return k * (3 * k - 1) / 2; }

// n = m(m+1)/2  <=>  8n + 1 is a perfect square.
inline bool is_triangular(std::uint64_t n)
{
    const auto s = isqrt(8 * n + 1);
    return s * s == 8 * n + 1;
}

// n = k(3k-1)/2 for some integer k  <=>  24n + 1 = (6k-1)^2. Every odd square
// root of a number that is 1 mod 24 is +-1 mod 6, so a square test suffices.
inline bool is_gen_pentagonal(std::uint64_t n)
{
    const auto s = isqrt(24 * n + 1);
    return s * s == 24 * n + 1;
}

// Pentagonal indices k with k(3k-1)/2 <= n all lie in [-K, K].
inline std::int64_t pentagonal_index_bound(std::uint64_t n)
{
    return static_cast<std::int64_t>(std::ceil(std::sqrt(2.0 * static_cast<double>(n) / 3.0))) + 2;
}

struct PentPlusCPent {
    std::uint64_t c;
};
// l ranges over l >= 0 (each triangular number once), k over all integers.
struct TriPlusCPent {
    std::uint64_t c;
};
// x, y over all integers; optional residue filters modulo 6.
struct X2PlusDY2 {
    std::uint64_t d;
    std::optional<std::set<int>> x_residues_mod6;
    std::optional<std::set<int>> y_residues_mod6;
};
struct Triangular {};

using RepresentationForm = std::variant<PentPlusCPent, TriPlusCPent, X2PlusDY2, Triangular>;

inline std::string describe(const RepresentationForm &form)
{
    struct V {
        std::string operator()(const PentPlusCPent &f) const { return "pent+" + std::to_string(f.c) + "*pent"; }
        std::string operator()(const TriPlusCPent &f) const { return "tri+" + std::to_string(f.c) + "*pent"; }
        std::string operator()(const X2PlusDY2 &f) const { return "x^2+" + std::to_string(f.d) + "*y^2"; }
        std::string operator()(const Triangular &) const { return "tri"; }
    };
    return std::visit(V{}, form);
}

namespace detail {

inline void validate(const RepresentationForm &form)
{
    if (const auto *p = std::get_if<PentPlusCPent>(&form); p && p->c == 0) throw std::invalid_argument("c must be >= 1");
    if (const auto *p = std::get_if<TriPlusCPent>(&form); p && p->c == 0) throw std::invalid_argument("c must be >= 1");
    if (const auto *p = std::get_if<X2PlusDY2>(&form); p && p->d == 0) throw std::invalid_argument("D must be >= 1");
}

inline int mod6(std::int64_t v) { return static_cast<int>(((v % 6) + 6) % 6); }

// Visits every representation together with its sign (-1)^{k+l} where it
// applies, or +1 for forms without a natural character.
template <typename F>
void for_each_representation(std::uint64_t n, const RepresentationForm &form, F &&visit)
{
    validate(form);
    const auto sn = static_cast<std::int64_t>(n);
    if (const auto *f = std::get_if<PentPlusCPent>(&form)) {
        const auto c = static_cast<std::int64_t>(f->c);
        const auto lb = pentagonal_index_bound(n / f->c);
        for (std::int64_t l = -lb; l <= lb; ++l) {
            const auto rest = sn - c * gen_pentagonal(l);
            if (rest < 0) continue;
            // The unique k with k(3k-1)/2 = rest comes from 24 rest + 1 = (6k-1)^2.
            const auto target = 24 * static_cast<std::uint64_t>(rest) + 1;
            const auto root = static_cast<std::int64_t>(isqrt(target));
            if (static_cast<std::uint64_t>(root * root) != target) continue;
            const auto k = root % 6 == 5 ? (root + 1) / 6 : (1 - root) / 6;
            visit(((k + l) % 2 == 0) ? 1 : -1);
        }
    } else if (const auto *f = std::get_if<TriPlusCPent>(&form)) {
        const auto c = static_cast<std::int64_t>(f->c);
        const auto kb = pentagonal_index_bound(n / f->c);
        for (std::int64_t k = -kb; k <= kb; ++k) {
            const auto rest = sn - c * gen_pentagonal(k);
            if (rest < 0) continue;
            if (is_triangular(static_cast<std::uint64_t>(rest))) visit((k % 2 == 0) ? 1 : -1);
        }
    } else if (const auto *f = std::get_if<X2PlusDY2>(&form)) {
        const auto d = static_cast<std::int64_t>(f->d);
        const auto yb = static_cast<std::int64_t>(isqrt(n / f->d));
        for (std::int64_t y = -yb; y <= yb; ++y) {
            const auto rest = sn - d * y * y;
            if (rest < 0) continue;
            const auto x0 = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(rest)));
            if (x0 * x0 != rest) continue;
            if (f->y_residues_mod6 && !f->y_residues_mod6->contains(mod6(y))) continue;
            const int signs = x0 == 0 ? 1 : 2;
            for (int i = 0; i < signs; ++i) {
                const auto x = i == 0 ? x0 : -x0;
                if (f->x_residues_mod6 && !f->x_residues_mod6->contains(mod6(x))) continue;
                visit(1);
            }
        }
    } else {
        if (is_triangular(n)) visit(1);
    }
}

} // namespace detail

// Number of representations of n by the form (unsigned count).
inline std::uint64_t representation_count(std::uint64_t n, const RepresentationForm &form)
{
    std::uint64_t count = 0;
    detail::for_each_representation(n, form, [&](int) { ++count; });
    return count;
}

// Sum of (-1)^{k+l} over representations; this is the q^n coefficient of the
// corresponding product of theta series (f1 * f_c, psi * f_c, ...).
inline std::int64_t signed_representation_sum(std::uint64_t n, const RepresentationForm &form)
{
    std::int64_t sum = 0;
    detail::for_each_representation(n, form, [&](int s) { sum += s; });
    return sum;
}

} // namespace qseries
