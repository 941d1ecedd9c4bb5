#pragma once

// Closed expression trees over series builders. Identity sides and claim
// targets are written in this form so they can be evaluated at any order,
// printed, and exchanged as JSON.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include <qseries/eta_theta.hpp>
#include <qseries/partition_functions.hpp>
#include <qseries/series.hpp>
#include <qseries/series_cache.hpp>

namespace qseries {

class SeriesExpr
{
public:
    enum class Kind { eta, function, theta, rogers_ramanujan, constant, sum, product, scale, shift, dilate, extract, power };

    SeriesExpr() : SeriesExpr(constant(Integer(1))) {}

    static SeriesExpr eta(EtaQuotientSpec spec)
    {
        auto n = make(Kind::eta);
        n->eta = std::move(spec);
        return SeriesExpr(std::move(n));
    }

    static SeriesExpr function(PartitionFunctionId id)
    {
        auto n = make(Kind::function);
        n->function = std::move(id);
        return SeriesExpr(std::move(n));
    }

    static SeriesExpr theta(ThetaSpec spec)
    {
        auto n = make(Kind::theta);
        n->theta = spec;
        return SeriesExpr(std::move(n));
    }

    // R(q^dilation)
    static SeriesExpr rogers_ramanujan(std::uint64_t dilation = 1)
    {
        if (dilation == 0) throw std::invalid_argument("dilation must be positive");
        auto n = make(Kind::rogers_ramanujan);
        n->a = dilation;
        return SeriesExpr(std::move(n));
    }

    static SeriesExpr constant(Integer c)
    {
        auto n = make(Kind::constant);
        n->scalar = std::move(c);
        return SeriesExpr(std::move(n));
    }

    static SeriesExpr sum(std::vector<SeriesExpr> terms) { return nary(Kind::sum, std::move(terms)); }
    static SeriesExpr product(std::vector<SeriesExpr> factors) { return nary(Kind::product, std::move(factors)); }

    SeriesExpr scaled(Integer c) const
    {
        auto n = make(Kind::scale);
        n->scalar = std::move(c);
        n->children = {*this};
        return SeriesExpr(std::move(n));
    }

    // q^k * this
    SeriesExpr shifted(std::uint64_t k) const { return unary(Kind::shift, k, 0); }
    // q -> q^t
    SeriesExpr dilated(std::uint64_t t) const
    {
        if (t == 0) throw std::invalid_argument("dilation must be positive");
        return unary(Kind::dilate, t, 0);
    }
    // sum_n c(step n + residue) q^n
    SeriesExpr extracted(std::uint64_t step, std::uint64_t residue) const
    {
        if (step == 0 || residue >= step) throw std::invalid_argument("residue must lie in [0, step)");
        return unary(Kind::extract, step, residue);
    }
    SeriesExpr pow(std::int64_t e) const
    {
        auto n = make(Kind::power);
        n->exponent = e;
        n->children = {*this};
        return SeriesExpr(std::move(n));
    }

    friend SeriesExpr operator+(const SeriesExpr &a, const SeriesExpr &b) { return sum({a, b}); }
    friend SeriesExpr operator-(const SeriesExpr &a, const SeriesExpr &b) { return sum({a, b.scaled(Integer(-1))}); }
    friend SeriesExpr operator*(const SeriesExpr &a, const SeriesExpr &b) { return product({a, b}); }
    friend SeriesExpr operator*(long c, const SeriesExpr &e) { return e.scaled(Integer(c)); }

    Kind kind() const { return node_->kind; }
    const std::vector<SeriesExpr> &children() const { return node_->children; }
    const EtaQuotientSpec &eta_spec() const { return node_->eta; }
    const PartitionFunctionId &function_id() const { return node_->function; }
    const ThetaSpec &theta_spec() const { return *node_->theta; }
    const Integer &scalar() const { return node_->scalar; }
    std::uint64_t param_a() const { return node_->a; }
    std::uint64_t param_b() const { return node_->b; }
    std::int64_t exponent() const { return node_->exponent; }

    std::string to_string() const
    {
        const auto &n = *node_;
        switch (n.kind) {
        case Kind::eta: return n.eta.to_math();
        case Kind::function: return "GF[" + n.function.to_math() + "]";
        case Kind::theta: return n.theta->to_string();
        case Kind::rogers_ramanujan: return n.a == 1 ? "R(q)" : "R(q^" + std::to_string(n.a) + ")";
        case Kind::constant: return n.scalar.get_str();
        case Kind::sum: {
            std::string s;
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                auto t = n.children[i].to_string();
                if (i == 0) {
                    s = t;
                } else if (!t.empty() && t.front() == '-') {
                    s += " - " + t.substr(1);
                } else {
                    s += " + " + t;
                }
            }
            return s;
        }
        case Kind::product: {
            std::string s;
            for (const auto &c : n.children) {
                if (!s.empty()) s += " * ";
                s += c.kind() == Kind::sum ? "(" + c.to_string() + ")" : c.to_string();
            }
            return s;
        }
        case Kind::scale: {
            auto inner = n.children[0].kind() == Kind::sum ? "(" + n.children[0].to_string() + ")" : n.children[0].to_string();
            if (n.scalar == -1) return "-" + inner;
            return n.scalar.get_str() + " " + inner;
        }
        case Kind::shift: {
            const auto q = n.a == 1 ? std::string("q") : "q^" + std::to_string(n.a);
            const auto &c = n.children[0];
            if (c.kind() == Kind::constant && c.scalar() == 1) return q;
            return q + " " + (c.kind() == Kind::sum ? "(" + c.to_string() + ")" : c.to_string());
        }
        case Kind::dilate: return "(" + n.children[0].to_string() + ")[q->q^" + std::to_string(n.a) + "]";
        case Kind::extract:
            return "[q^(" + std::to_string(n.a) + "n+" + std::to_string(n.b) + ")](" + n.children[0].to_string() + ")";
        case Kind::power: return "(" + n.children[0].to_string() + ")^" + std::to_string(n.exponent);
        }
        return "?";
    }

    nlohmann::ordered_json to_json() const
    {
        using nlohmann::ordered_json;
        const auto &n = *node_;
        auto kids = [&] {
            ordered_json arr = ordered_json::array();
            for (const auto &c : n.children) arr.push_back(c.to_json());
            return arr;
        };
        switch (n.kind) {
        case Kind::eta: return {{"eta", n.eta.to_string()}};
        case Kind::function: return {{"function", n.function.to_string()}};
        case Kind::theta: {
            const auto &t = *n.theta;
            switch (t.kind()) {
            case ThetaSpec::Kind::phi: return {{"theta", "phi"}};
            case ThetaSpec::Kind::psi: return {{"theta", "psi"}};
            case ThetaSpec::Kind::f_neg_q: return {{"theta", "f_neg_q"}};
            case ThetaSpec::Kind::general: break;
            }
            return {{"theta", {{"sign_a", t.sign_a()}, {"alpha", t.alpha()}, {"sign_b", t.sign_b()}, {"beta", t.beta()}}}};
        }
        case Kind::rogers_ramanujan: return {{"rr", n.a}};
        case Kind::constant: return {{"const", n.scalar.get_str()}};
        case Kind::sum: return {{"sum", kids()}};
        case Kind::product: return {{"product", kids()}};
        case Kind::scale: return {{"scale", ordered_json::array({n.scalar.get_str(), n.children[0].to_json()})}};
        case Kind::shift: return {{"shift", ordered_json::array({n.a, n.children[0].to_json()})}};
        case Kind::dilate: return {{"dilate", ordered_json::array({n.a, n.children[0].to_json()})}};
        case Kind::extract: return {{"extract", ordered_json::array({n.a, n.b, n.children[0].to_json()})}};
        case Kind::power: return {{"pow", ordered_json::array({n.exponent, n.children[0].to_json()})}};
        }
        return {};
    }

    template <typename Json>
    static SeriesExpr from_json(const Json &j)
    {
        if (!j.is_object() || j.size() != 1) throw std::invalid_argument("expression must be a one-key object");
        const auto &[tag, v] = *j.items().begin();
        auto child = [](const Json &x) { return from_json(x); };
        auto integer = [](const Json &x) {
            if (x.is_string()) return Integer(x.template get<std::string>());
            return Integer(static_cast<long>(x.template get<std::int64_t>()));
        };
        if (tag == "eta") return eta(EtaQuotientSpec::parse(v.template get<std::string>()));
        if (tag == "function") return function(PartitionFunctionId::parse(v.template get<std::string>()));
        if (tag == "theta") {
            if (v.is_string()) {
                const auto s = v.template get<std::string>();
                if (s == "phi") return theta(ThetaSpec::phi());
                if (s == "psi") return theta(ThetaSpec::psi());
                if (s == "f_neg_q") return theta(ThetaSpec::f_neg_q());
                throw std::invalid_argument("unknown theta function '" + s + "'");
            }
            return theta(ThetaSpec::general(v.at("sign_a").template get<int>(), {v.at("alpha").template get<std::int64_t>(), 1},
                                            v.at("sign_b").template get<int>(), {v.at("beta").template get<std::int64_t>(), 1}));
        }
        if (tag == "rr") return rogers_ramanujan(v.template get<std::uint64_t>());
        if (tag == "const") return constant(integer(v));
        if (tag == "sum" || tag == "product") {
            std::vector<SeriesExpr> parts;
            for (const auto &x : v) parts.push_back(child(x));
            return tag == "sum" ? sum(std::move(parts)) : product(std::move(parts));
        }
        if (tag == "scale") return child(v.at(1)).scaled(integer(v.at(0)));
        if (tag == "shift") return child(v.at(1)).shifted(v.at(0).template get<std::uint64_t>());
        if (tag == "dilate") return child(v.at(1)).dilated(v.at(0).template get<std::uint64_t>());
        if (tag == "extract") {
            return child(v.at(2)).extracted(v.at(0).template get<std::uint64_t>(), v.at(1).template get<std::uint64_t>());
        }
        if (tag == "pow") return child(v.at(1)).pow(v.at(0).template get<std::int64_t>());
        throw std::invalid_argument("unknown expression tag '" + tag + "'");
    }

private:
    struct Node {
        Kind kind;
        EtaQuotientSpec eta;
        PartitionFunctionId function;
        std::optional<ThetaSpec> theta;
        Integer scalar;
        std::uint64_t a = 0;
        std::uint64_t b = 0;
        std::int64_t exponent = 0;
        std::vector<SeriesExpr> children;
    };

    explicit SeriesExpr(std::shared_ptr<Node> n) : node_(std::move(n)) {}

    static std::shared_ptr<Node> make(Kind k)
    {
        auto n = std::make_shared<Node>();
        n->kind = k;
        return n;
    }

    static SeriesExpr nary(Kind k, std::vector<SeriesExpr> items)
    {
        if (items.empty()) throw std::invalid_argument("empty sum or product");
        auto n = make(k);
        for (auto &e : items) {
            // Flatten nested nodes of the same kind.
            if (e.kind() == k) {
                for (const auto &c : e.children()) n->children.push_back(c);
            } else {
                n->children.push_back(std::move(e));
            }
        }
        return SeriesExpr(std::move(n));
    }

    SeriesExpr unary(Kind k, std::uint64_t a, std::uint64_t b) const
    {
        auto n = make(k);
        n->a = a;
        n->b = b;
        n->children = {*this};
        return SeriesExpr(std::move(n));
    }

    std::shared_ptr<const Node> node_;
};

// Shorthand used by the catalogs: eta("2:1,8:5"), q-shifted terms, and so on.
inline SeriesExpr eta(std::initializer_list<EtaFactor> factors) { return SeriesExpr::eta(EtaQuotientSpec(factors)); }

inline SeriesExpr qterm(long coefficient, std::uint64_t power, std::initializer_list<EtaFactor> factors)
{
    auto e = eta(factors);
    if (power > 0) e = e.shifted(power);
    return coefficient == 1 ? e : e.scaled(Integer(coefficient));
}

// Bottom-up evaluation; every node is produced at exactly `order`.
inline TruncatedSeries evaluate_expr(const SeriesExpr &e, std::size_t order,
                                     CoefficientDomain domain = CoefficientDomain::exact(), SeriesCache *cache = nullptr)
{
    using K = SeriesExpr::Kind;
    auto eta_at = [&](const EtaQuotientSpec &spec) {
        if (cache == nullptr) return eta_quotient(spec, order, domain);
        return truncate(*cache->get(spec, order, domain), order);
    };
    switch (e.kind()) {
    case K::eta: return eta_at(e.eta_spec());
    case K::function: return eta_at(generating_function(e.function_id()));
    case K::theta: return theta_series(e.theta_spec(), order, domain);
    case K::rogers_ramanujan: return rogers_ramanujan_series(order, domain, e.param_a());
    case K::constant: return scale(TruncatedSeries::one(order, domain), e.scalar());
    case K::sum: {
        auto acc = evaluate_expr(e.children()[0], order, domain, cache);
        for (std::size_t i = 1; i < e.children().size(); ++i) acc = add(acc, evaluate_expr(e.children()[i], order, domain, cache));
        return acc;
    }
    case K::product: {
        auto acc = evaluate_expr(e.children()[0], order, domain, cache);
        for (std::size_t i = 1; i < e.children().size(); ++i) acc = mul(acc, evaluate_expr(e.children()[i], order, domain, cache));
        return acc;
    }
    case K::scale: return scale(evaluate_expr(e.children()[0], order, domain, cache), e.scalar());
    case K::shift: {
        const auto k = e.param_a();
        if (k > order) return TruncatedSeries::zero(order, domain);
        return shift(evaluate_expr(e.children()[0], order - k, domain, cache), k);
    }
    case K::dilate: {
        const auto t = e.param_a();
        return dilate(evaluate_expr(e.children()[0], order / t, domain, cache), t, order);
    }
    case K::extract: {
        const auto step = e.param_a();
        const auto res = e.param_b();
        return extract_ap(evaluate_expr(e.children()[0], step * order + res, domain, cache), step, res);
    }
    case K::power: return pow(evaluate_expr(e.children()[0], order, domain, cache), e.exponent());
    }
    throw std::logic_error("unhandled expression kind");
}

} // namespace qseries
