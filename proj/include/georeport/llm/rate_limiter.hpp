#pragma once

#include <chrono>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace georeport::llm {

using SteadyTime = std::chrono::steady_clock::time_point;

// Sliding-window limiter: at most `limit` acquisitions in any `window`.
class RateLimiter {
  public:
    explicit RateLimiter(int limit, std::chrono::milliseconds window = std::chrono::minutes(1))
        : limit_(limit), window_(window) {}

    // Takes a slot and returns zero, or returns how long to wait before retrying.
    std::chrono::milliseconds try_acquire(SteadyTime now) {
        std::lock_guard lock(mu_);
        while (!stamps_.empty() && now - stamps_.front() >= window_) stamps_.pop_front();
        if (static_cast<int>(stamps_.size()) < limit_) {
            stamps_.push_back(now);
            return std::chrono::milliseconds(0);
        }
        auto wait = std::chrono::ceil<std::chrono::milliseconds>(stamps_.front() + window_ - now);
        return std::max(wait, std::chrono::milliseconds(1));
    }

    void set_limit(int limit) {
        std::lock_guard lock(mu_);
        limit_ = limit;
    }

  private:
    std::mutex mu_;
    int limit_;
    std::chrono::milliseconds window_;
    std::deque<SteadyTime> stamps_;
};

// Process-wide limiter for a provider id; later calls update the limit.
inline std::shared_ptr<RateLimiter> shared_rate_limiter(const std::string &provider_id, int per_min) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<RateLimiter>> registry;
    std::lock_guard lock(mu);
    auto &slot = registry[provider_id];
    if (!slot)
        slot = std::make_shared<RateLimiter>(per_min);
    else
        slot->set_limit(per_min);
    return slot;
}

} // namespace georeport::llm
