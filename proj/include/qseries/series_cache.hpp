#pragma once

#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include <qseries/eta_theta.hpp>
#include <qseries/series.hpp>

namespace qseries {

// Memo of eta-quotient expansions keyed by (quotient, domain). A request is
// served by any stored expansion of at least the requested order; concurrent
// requests for the same key wait on a single computation.
class SeriesCache
{
public:
    using Handle = std::shared_ptr<const TruncatedSeries>;

    // Announces an upcoming need so the first computation is large enough for all of them.
    void reserve(const EtaQuotientSpec &spec, CoefficientDomain domain, std::size_t order)
    {
        std::lock_guard lock(mu_);
        auto &r = reserved_[key(spec, domain)];
        r = std::max(r, order);
    }

    // Expansion valid to at least `order`.
    Handle get(const EtaQuotientSpec &spec, std::size_t order, CoefficientDomain domain)
    {
        std::shared_future<Handle> pending;
        std::promise<Handle> promise;
        std::size_t target = order;
        {
            std::lock_guard lock(mu_);
            auto k = key(spec, domain);
            auto &slots = entries_[k];
            for (const auto &e : slots) {
                if (e.order >= order) {
                    ++hits_;
                    pending = e.value;
                    break;
                }
            }
            if (!pending.valid()) {
                ++misses_;
                if (auto it = reserved_.find(k); it != reserved_.end()) target = std::max(target, it->second);
                slots.push_back({target, promise.get_future().share()});
            }
        }
        if (pending.valid()) return pending.get();
        try {
            auto value = std::make_shared<const TruncatedSeries>(eta_quotient(spec, target, domain));
            promise.set_value(value);
            return value;
        } catch (...) {
            promise.set_exception(std::current_exception());
            throw;
        }
    }

    std::uint64_t hits() const
    {
        std::lock_guard lock(mu_);
        return hits_;
    }

    std::uint64_t misses() const
    {
        std::lock_guard lock(mu_);
        return misses_;
    }

private:
    using Key = std::tuple<std::string, std::uint64_t>;

    static Key key(const EtaQuotientSpec &spec, CoefficientDomain domain) { return {spec.to_string(), domain.modulus()}; }

    struct Entry {
        std::size_t order;
        std::shared_future<Handle> value;
    };

    mutable std::mutex mu_;
    std::map<Key, std::vector<Entry>> entries_;
    std::map<Key, std::size_t> reserved_;
    std::uint64_t hits_ = 0;
    std::uint64_t misses_ = 0;
};

} // namespace qseries
