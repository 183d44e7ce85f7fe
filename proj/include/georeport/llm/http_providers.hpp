#pragma once

#include <chrono>
#include <string>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "georeport/core/digest.hpp"
#include "georeport/llm/provider.hpp"

namespace georeport::llm {

namespace http_detail {

struct Endpoint {
    std::string base;   // scheme://host[:port]
    std::string prefix; // path prefix without trailing slash
};

inline Endpoint split_endpoint(const std::string &url) {
    auto scheme = url.find("://");
    if (scheme == std::string::npos) throw GatewayError(GatewayErrorCode::invalid_request, "endpoint_url needs a scheme");
    auto slash = url.find('/', scheme + 3);
    Endpoint e{url.substr(0, slash), slash == std::string::npos ? "" : url.substr(slash)};
    while (!e.prefix.empty() && e.prefix.back() == '/') e.prefix.pop_back();
    return e;
}

inline std::optional<std::chrono::milliseconds> retry_after(const httplib::Result &res) {
    if (!res->has_header("Retry-After")) return std::nullopt;
    try {
        return std::chrono::milliseconds(static_cast<long long>(std::stod(res->get_header_value("Retry-After")) * 1000));
    } catch (...) {
        return std::nullopt;
    }
}

// POSTs JSON and returns the parsed body of a 2xx reply; everything else becomes
// a GatewayError with a code the caller can act on.
inline nlohmann::json post_json(const std::string &endpoint_url, const std::string &path, httplib::Headers headers,
                                const nlohmann::json &body, std::chrono::milliseconds timeout) {
    auto ep = split_endpoint(endpoint_url);
    httplib::Client cli(ep.base);
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
    auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
    cli.set_connection_timeout(secs.count(), usecs.count());
    cli.set_read_timeout(secs.count(), usecs.count());
    cli.set_write_timeout(secs.count(), usecs.count());
    auto res = cli.Post(ep.prefix + path, headers, body.dump(), "application/json");
    if (!res) {
        auto err = res.error();
        const auto what = "transport error: " + httplib::to_string(err);
        if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read || err == httplib::Error::Write)
            throw GatewayError(GatewayErrorCode::timeout, what);
        throw GatewayError(GatewayErrorCode::upstream, what);
    }
    const int status = res->status;
    if (status == 401 || status == 403) throw GatewayError(GatewayErrorCode::auth, "provider rejected credentials", status);
    if (status == 429) throw GatewayError(GatewayErrorCode::rate_limited, "provider rate limit", status, retry_after(res));
    if (status == 408 || status == 504) throw GatewayError(GatewayErrorCode::timeout, "provider timed out", status);
    if (status >= 500) throw GatewayError(GatewayErrorCode::upstream, "provider error " + std::to_string(status), status);
    if (status < 200 || status >= 300)
        throw GatewayError(GatewayErrorCode::invalid_request, "provider refused request: " + std::to_string(status), status);
    try {
        return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error &) {
        throw GatewayError(GatewayErrorCode::malformed_payload, "provider reply is not JSON", status);
    }
}

[[noreturn]] inline void malformed(const std::string &what) {
    throw GatewayError(GatewayErrorCode::malformed_payload, what);
}

} // namespace http_detail

// Gemini generateContent (v1beta). Key travels in the x-goog-api-key header.
class GeminiProvider : public Provider {
  public:
    explicit GeminiProvider(ProviderConfig cfg) : cfg_(std::move(cfg)) {}

    static nlohmann::json request_body(const GenerationRequest &req) {
        nlohmann::json parts = nlohmann::json::array();
        parts.push_back({{"text", req.prompt}});
        for (const auto &img : req.images)
            parts.push_back({{"inline_data", {{"mime_type", img.media_type}, {"data", base64_encode(img.bytes)}}}});
        return {{"contents", {{{"role", "user"}, {"parts", parts}}}},
                {"generationConfig", {{"temperature", req.temperature}, {"maxOutputTokens", req.max_output_tokens}}}};
    }

    static ProviderReply parse_reply(const nlohmann::json &j) {
        if (!j.is_object() || !j.contains("candidates") || !j["candidates"].is_array() || j["candidates"].empty())
            http_detail::malformed("gemini reply has no candidates");
        const auto &c = j["candidates"][0];
        if (!c.contains("content") || !c["content"].contains("parts") || !c["content"]["parts"].is_array())
            http_detail::malformed("gemini candidate has no content parts");
        ProviderReply r;
        for (const auto &part : c["content"]["parts"])
            if (part.contains("text") && part["text"].is_string()) r.text += part["text"].get<std::string>();
        if (r.text.empty()) http_detail::malformed("gemini candidate has no text");
        r.truncated = c.value("finishReason", "") == "MAX_TOKENS";
        return r;
    }

    ProviderReply call(const GenerationRequest &req, const std::string &api_key, std::chrono::milliseconds timeout) override {
        const std::string path = "/v1beta/models/" + cfg_.model + ":generateContent";
        return parse_reply(http_detail::post_json(cfg_.endpoint_url, path, {{"x-goog-api-key", api_key}},
                                                  request_body(req), timeout));
    }

  private:
    ProviderConfig cfg_;
};

// OpenAI-style /v1/chat/completions with images as data URIs.
class OpenAiCompatibleProvider : public Provider {
  public:
    explicit OpenAiCompatibleProvider(ProviderConfig cfg) : cfg_(std::move(cfg)) {}

    nlohmann::json request_body(const GenerationRequest &req) const {
        nlohmann::json content = nlohmann::json::array();
        content.push_back({{"type", "text"}, {"text", req.prompt}});
        for (const auto &img : req.images)
            content.push_back({{"type", "image_url"},
                               {"image_url", {{"url", "data:" + img.media_type + ";base64," + base64_encode(img.bytes)}}}});
        return {{"model", cfg_.model},
                {"messages", {{{"role", "user"}, {"content", content}}}},
                {"temperature", req.temperature},
                {"max_tokens", req.max_output_tokens}};
    }

    static ProviderReply parse_reply(const nlohmann::json &j) {
        if (!j.is_object() || !j.contains("choices") || !j["choices"].is_array() || j["choices"].empty())
            http_detail::malformed("chat reply has no choices");
        const auto &c = j["choices"][0];
        if (!c.contains("message") || !c["message"].contains("content") || !c["message"]["content"].is_string())
            http_detail::malformed("chat choice has no message content");
        ProviderReply r{c["message"]["content"].get<std::string>(), false};
        r.truncated = c.contains("finish_reason") && c["finish_reason"] == "length";
        return r;
    }

    ProviderReply call(const GenerationRequest &req, const std::string &api_key, std::chrono::milliseconds timeout) override {
        return parse_reply(http_detail::post_json(cfg_.endpoint_url, "/v1/chat/completions",
                                                  {{"Authorization", "Bearer " + api_key}}, request_body(req), timeout));
    }

  private:
    ProviderConfig cfg_;
};

} // namespace georeport::llm
