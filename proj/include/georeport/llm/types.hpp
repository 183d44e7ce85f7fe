#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "georeport/core/enum_names.hpp"
#include "georeport/core/json_io.hpp"
#include "georeport/error.hpp"

namespace georeport::llm {

struct ImagePayload {
    std::string media_type;
    std::string bytes;
};

struct GenerationRequest {
    std::string prompt;
    std::vector<ImagePayload> images;
    int max_output_tokens = 1024;
    double temperature = 0.0;
};

struct GenerationResponse {
    std::string text;
    std::string provider_id;
    std::int64_t latency_ms = 0;
    bool truncated = false;
    int attempts = 1;
};

enum class ProviderKind { mock, gemini, openai_compatible };

struct ProviderConfig {
    std::string provider_id = "mock";
    ProviderKind kind = ProviderKind::mock;
    std::string endpoint_url;    // scheme://host[:port][/prefix]
    std::string model;
    std::string api_key_env_var; // the key itself is never stored
    double request_timeout_s = 60;
    int max_retries = 3;
    int rate_limit_per_min = 60;
    int max_images = 4;
    int image_max_edge_px = 2048;
    int backoff_initial_ms = 500;
    int backoff_max_ms = 8000;
    std::string canned_dir;        // mock only: <digest>.txt overrides
    std::vector<std::string> mock_script; // mock only: error codes raised on successive attempts
};

enum class GatewayErrorCode { invalid_request, auth, rate_limited, timeout, upstream, malformed_payload };

class GatewayError : public Error {
  public:
    GatewayError(GatewayErrorCode code, const std::string &what, std::optional<int> http_status = std::nullopt,
                 std::optional<std::chrono::milliseconds> retry_after = std::nullopt)
        : Error(what), code_(code), http_status_(http_status), retry_after_(retry_after) {}

    GatewayErrorCode code() const noexcept { return code_; }
    std::optional<int> http_status() const noexcept { return http_status_; }
    std::optional<std::chrono::milliseconds> retry_after() const noexcept { return retry_after_; }

    // Transient failures worth another attempt.
    bool retryable() const noexcept {
        return code_ == GatewayErrorCode::rate_limited || code_ == GatewayErrorCode::timeout ||
               code_ == GatewayErrorCode::upstream;
    }

  private:
    GatewayErrorCode code_;
    std::optional<int> http_status_;
    std::optional<std::chrono::milliseconds> retry_after_;
};

} // namespace georeport::llm

namespace georeport {

template <> struct EnumNames<llm::ProviderKind> {
    static constexpr std::array<std::pair<llm::ProviderKind, std::string_view>, 3> names{{
        {llm::ProviderKind::mock, "mock"},
        {llm::ProviderKind::gemini, "gemini"},
        {llm::ProviderKind::openai_compatible, "openai_compatible"},
    }};
};

template <> struct EnumNames<llm::GatewayErrorCode> {
    static constexpr std::array<std::pair<llm::GatewayErrorCode, std::string_view>, 6> names{{
        {llm::GatewayErrorCode::invalid_request, "invalid_request"},
        {llm::GatewayErrorCode::auth, "auth"},
        {llm::GatewayErrorCode::rate_limited, "rate_limited"},
        {llm::GatewayErrorCode::timeout, "timeout"},
        {llm::GatewayErrorCode::upstream, "upstream"},
        {llm::GatewayErrorCode::malformed_payload, "malformed_payload"},
    }};
};

namespace llm {

inline ProviderConfig parse_provider_config(const Json &j, const std::string &path = "$") {
    using namespace json_io;
    ProviderConfig c;
    c.provider_id = get_string(j, "provider_id", path);
    c.kind = get_enum<ProviderKind>(j, "kind", path);
    c.endpoint_url = get_string_or(j, "endpoint_url", path);
    c.model = get_string_or(j, "model", path);
    c.api_key_env_var = get_string_or(j, "api_key_env_var", path);
    if (optional(j, "request_timeout_s")) c.request_timeout_s = get_number(j, "request_timeout_s", path);
    if (optional(j, "max_retries")) c.max_retries = static_cast<int>(get_integer(j, "max_retries", path));
    if (optional(j, "rate_limit_per_min")) c.rate_limit_per_min = static_cast<int>(get_integer(j, "rate_limit_per_min", path));
    if (optional(j, "max_images")) c.max_images = static_cast<int>(get_integer(j, "max_images", path));
    if (optional(j, "image_max_edge_px")) c.image_max_edge_px = static_cast<int>(get_integer(j, "image_max_edge_px", path));
    if (optional(j, "backoff_initial_ms")) c.backoff_initial_ms = static_cast<int>(get_integer(j, "backoff_initial_ms", path));
    if (optional(j, "backoff_max_ms")) c.backoff_max_ms = static_cast<int>(get_integer(j, "backoff_max_ms", path));
    c.canned_dir = get_string_or(j, "canned_dir", path);
    if (optional(j, "mock_script"))
        for (const auto &s : get_array(j, "mock_script", path)) c.mock_script.push_back(as_string(s, path + ".mock_script"));
    if (j.contains("api_key")) throw ParseError(path + ".api_key", "keys are read from api_key_env_var only");
    if (c.kind != ProviderKind::mock && c.endpoint_url.empty()) throw ParseError(path + ".endpoint_url", "required for remote providers");
    if (c.request_timeout_s <= 0) throw ParseError(path + ".request_timeout_s", "must be positive");
    if (c.max_retries < 0) throw ParseError(path + ".max_retries", "must be >= 0");
    if (c.rate_limit_per_min <= 0) throw ParseError(path + ".rate_limit_per_min", "must be positive");
    return c;
}

inline Json write(const ProviderConfig &c) {
    Json j;
    j["provider_id"] = c.provider_id;
    j["kind"] = to_string(c.kind);
    j["endpoint_url"] = c.endpoint_url;
    j["model"] = c.model;
    j["api_key_env_var"] = c.api_key_env_var;
    j["request_timeout_s"] = c.request_timeout_s;
    j["max_retries"] = c.max_retries;
    j["rate_limit_per_min"] = c.rate_limit_per_min;
    j["max_images"] = c.max_images;
    j["image_max_edge_px"] = c.image_max_edge_px;
    return j;
}

} // namespace llm
} // namespace georeport
