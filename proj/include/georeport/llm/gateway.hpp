#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <memory>
#include <thread>

#include "georeport/core/log.hpp"
#include "georeport/llm/http_providers.hpp"
#include "georeport/llm/image_prep.hpp"
#include "georeport/llm/mock.hpp"
#include "georeport/llm/rate_limiter.hpp"

namespace georeport::llm {

struct Clock {
    std::function<SteadyTime()> now = [] { return std::chrono::steady_clock::now(); };
    std::function<void(std::chrono::milliseconds)> sleep = [](std::chrono::milliseconds d) {
        std::this_thread::sleep_for(d);
    };
};

inline std::shared_ptr<Provider> make_provider(const ProviderConfig &cfg) {
    switch (cfg.kind) {
    case ProviderKind::mock: return std::make_shared<MockProvider>(cfg);
    case ProviderKind::gemini: return std::make_shared<GeminiProvider>(cfg);
    case ProviderKind::openai_compatible: return std::make_shared<OpenAiCompatibleProvider>(cfg);
    }
    throw GatewayError(GatewayErrorCode::invalid_request, "unknown provider kind");
}

// Reads the key named by the config. Missing or empty is an auth error.
inline std::string resolve_api_key(const ProviderConfig &cfg) {
    if (cfg.api_key_env_var.empty())
        throw GatewayError(GatewayErrorCode::auth, "provider " + cfg.provider_id + " has no api_key_env_var");
    const char *v = std::getenv(cfg.api_key_env_var.c_str());
    if (!v || !*v) throw GatewayError(GatewayErrorCode::auth, "environment variable " + cfg.api_key_env_var + " is not set");
    return v;
}

// Thread-safe: a Gateway holds no per-call state.
class Gateway {
  public:
    explicit Gateway(ProviderConfig cfg, Clock clock = {}, std::shared_ptr<Provider> provider = nullptr,
                     std::shared_ptr<RateLimiter> limiter = nullptr)
        : cfg_(std::move(cfg)),
          clock_(std::move(clock)),
          provider_(provider ? std::move(provider) : make_provider(cfg_)),
          limiter_(limiter ? std::move(limiter) : shared_rate_limiter(cfg_.provider_id, cfg_.rate_limit_per_min)) {}

    const ProviderConfig &config() const { return cfg_; }

    GenerationResponse generate(const GenerationRequest &request) const {
        validate(request);
        const std::string key = provider_->needs_api_key() ? resolve_api_key(cfg_) : std::string{};
        GenerationRequest req = request;
        if (cfg_.kind != ProviderKind::mock)
            for (auto &img : req.images) img = prepare_image(img, cfg_.image_max_edge_px);

        const auto timeout = std::chrono::milliseconds(static_cast<long long>(cfg_.request_timeout_s * 1000));
        const auto start = clock_.now();
        std::chrono::milliseconds delay(0);
        for (int attempt = 1;; ++attempt) {
            acquire_slot(timeout);
            try {
                auto reply = provider_->call(req, key, timeout);
                GenerationResponse r;
                r.text = std::move(reply.text);
                r.truncated = reply.truncated;
                r.provider_id = cfg_.provider_id;
                r.attempts = attempt;
                r.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock_.now() - start).count();
                log().info("llm provider={} attempts={} latency_ms={} truncated={}", cfg_.provider_id, attempt,
                           r.latency_ms, r.truncated);
                return r;
            } catch (const GatewayError &e) {
                const auto code = to_string(e.code());
                if (!e.retryable() || attempt > cfg_.max_retries) {
                    log().warn("llm provider={} attempt={} failed code={} (giving up)", cfg_.provider_id, attempt, code);
                    throw;
                }
                delay = next_delay(delay, attempt, e.retry_after());
                log().warn("llm provider={} attempt={} failed code={} retry_in_ms={}", cfg_.provider_id, attempt, code,
                           delay.count());
                clock_.sleep(delay);
            }
        }
    }

    // Exponential backoff (initial * 2^(attempt-1), capped), never shorter than
    // the previous delay or a provider Retry-After.
    std::chrono::milliseconds next_delay(std::chrono::milliseconds previous, int attempt,
                                         std::optional<std::chrono::milliseconds> retry_after) const {
        long long d = cfg_.backoff_initial_ms;
        for (int i = 1; i < attempt && d < cfg_.backoff_max_ms; ++i) d *= 2;
        d = std::min<long long>(d, cfg_.backoff_max_ms);
        auto out = std::chrono::milliseconds(d);
        if (retry_after) out = std::max(out, *retry_after);
        return std::max(out, previous);
    }

  private:
    void validate(const GenerationRequest &r) const {
        if (r.prompt.find_first_not_of(" \t\r\n") == std::string::npos)
            throw GatewayError(GatewayErrorCode::invalid_request, "prompt is empty");
        if (static_cast<int>(r.images.size()) > cfg_.max_images)
            throw GatewayError(GatewayErrorCode::invalid_request,
                               "too many images: " + std::to_string(r.images.size()) + " > " + std::to_string(cfg_.max_images));
        if (r.temperature < 0) throw GatewayError(GatewayErrorCode::invalid_request, "temperature must be >= 0");
        if (r.max_output_tokens <= 0) throw GatewayError(GatewayErrorCode::invalid_request, "max_output_tokens must be positive");
    }

    // Waits for a limiter slot for at most one request timeout.
    void acquire_slot(std::chrono::milliseconds budget) const {
        const auto deadline = clock_.now() + budget;
        while (true) {
            auto wait = limiter_->try_acquire(clock_.now());
            if (wait.count() == 0) return;
            if (clock_.now() + wait > deadline)
                throw GatewayError(GatewayErrorCode::rate_limited,
                                   "local rate limit for " + cfg_.provider_id + " exhausted", std::nullopt, wait);
            clock_.sleep(wait);
        }
    }

    ProviderConfig cfg_;
    Clock clock_;
    std::shared_ptr<Provider> provider_;
    std::shared_ptr<RateLimiter> limiter_;
};

} // namespace georeport::llm
