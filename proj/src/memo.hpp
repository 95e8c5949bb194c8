#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

namespace hopfpath::detail {

// Thread-safe memo table keyed by canonical code. References into std::map stay valid, and the
// value is computed outside the lock so recursive lookups cannot deadlock.
template <class Value>
class Memo {
public:
    template <class Compute>
    const Value& get(const std::string& key, Compute&& compute) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = table_.find(key); it != table_.end()) return it->second;
        }
        Value v = compute();
        std::unique_lock lock(mutex_);
        return table_.try_emplace(key, std::move(v)).first->second;
    }

private:
    std::shared_mutex mutex_;
    std::map<std::string, Value> table_;
};

}  // namespace hopfpath::detail
