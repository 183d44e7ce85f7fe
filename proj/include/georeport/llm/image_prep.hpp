#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "georeport/llm/types.hpp"

namespace georeport::llm {

// Downscales so the longer edge is at most `max_edge` px. Images already within
// bounds and in JPEG/PNG pass through untouched; others are re-encoded as JPEG.
inline ImagePayload prepare_image(const ImagePayload &in, int max_edge) {
    std::vector<uchar> buf(in.bytes.begin(), in.bytes.end());
    cv::Mat img = cv::imdecode(buf, cv::IMREAD_COLOR);
    if (img.empty()) throw GatewayError(GatewayErrorCode::invalid_request, "image could not be decoded (" + in.media_type + ")");
    const int edge = std::max(img.cols, img.rows);
    const bool passthrough_type = in.media_type == "image/jpeg" || in.media_type == "image/png";
    if (edge <= max_edge && passthrough_type) return in;
    if (edge > max_edge) {
        const double scale = static_cast<double>(max_edge) / edge;
        cv::Mat resized;
        cv::resize(img, resized,
                   cv::Size(std::max(1, static_cast<int>(img.cols * scale + 0.5)),
                            std::max(1, static_cast<int>(img.rows * scale + 0.5))),
                   0, 0, cv::INTER_AREA);
        img = resized;
    }
    std::vector<uchar> out;
    cv::imencode(".jpg", img, out, {cv::IMWRITE_JPEG_QUALITY, 90});
    return {"image/jpeg", std::string(out.begin(), out.end())};
}

// (width, height) of an encoded image, or nullopt when it cannot be decoded.
inline std::optional<std::pair<int, int>> image_size(const std::string &bytes) {
    std::vector<uchar> buf(bytes.begin(), bytes.end());
    cv::Mat img = cv::imdecode(buf, cv::IMREAD_UNCHANGED);
    if (img.empty()) return std::nullopt;
    return std::pair{img.cols, img.rows};
}

} // namespace georeport::llm
