#pragma once

#include <chrono>
#include <string>

#include "georeport/core/digest.hpp"
#include "georeport/llm/types.hpp"

namespace georeport::llm {

struct ProviderReply {
    std::string text;
    bool truncated = false;
};

// One attempt against one backend. Failures are thrown as GatewayError.
class Provider {
  public:
    virtual ~Provider() = default;
    virtual ProviderReply call(const GenerationRequest &req, const std::string &api_key,
                               std::chrono::milliseconds timeout) = 0;
    virtual bool needs_api_key() const { return true; }
};

// Stable digest of the prompt and the image contents.
inline std::string request_digest(const GenerationRequest &req) {
    Sha256 h;
    h.update(req.prompt).update(std::string_view("\0", 1));
    for (const auto &img : req.images) {
        h.update(img.media_type).update(std::string_view("\0", 1));
        h.update(sha256_hex(img.bytes)).update(std::string_view("\0", 1));
    }
    return h.hex();
}

} // namespace georeport::llm
