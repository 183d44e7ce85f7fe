#pragma once

#include <chrono>
#include <ctime>
#include <functional>
#include <memory>
#include <string>

#include <httplib.h>

#include "georeport/eval/pairs_io.hpp"
#include "georeport/llm/gateway.hpp"
#include "georeport/llm/image_prep.hpp"
#include "georeport/prompt/catalog.hpp"
#include "georeport/report/export.hpp"
#include "georeport/report/generate.hpp"
#include "georeport/service/api_json.hpp"
#include "georeport/service/schema.hpp"
#include "georeport/store/project_store.hpp"

namespace georeport::service {

inline std::string utc_now_iso() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct ServiceOptions {
    std::string data_dir;  // rating_tables.json, prompts/, openapi.json
    std::string store_dir; // project documents and image blobs
    llm::ProviderConfig provider;
    std::function<std::string()> now = utc_now_iso; // report created_at
};

// HTTP error body: {"error", "message", ...}.
struct ApiError {
    int status = 500;
    Json body;
};

inline ApiError validation_error(std::vector<Violation> violations, std::string message = "validation failed") {
    Json v = Json::array();
    for (const auto &x : violations) v.push_back(Json{{"path", x.path}, {"message", x.message}});
    return {400, Json{{"error", "validation"}, {"message", std::move(message)}, {"violations", std::move(v)}}};
}

// Maps library exceptions to HTTP status and a machine-readable body.
inline ApiError map_exception(std::exception_ptr ep) {
    auto simple = [](int status, const char *error, const std::string &msg) {
        return ApiError{status, Json{{"error", error}, {"message", msg}}};
    };
    try {
        std::rethrow_exception(ep);
    } catch (const ValidationError &e) {
        return validation_error({{e.field(), e.what()}}, e.what());
    } catch (const ParseError &e) {
        return validation_error({{e.path(), e.what()}}, e.what());
    } catch (const AssemblyError &e) {
        std::vector<Violation> v;
        for (const auto &g : e.gaps()) v.push_back({"$.sections", "missing " + g});
        return validation_error(std::move(v), e.what());
    } catch (const NotFoundError &e) {
        return simple(404, "not_found", e.what());
    } catch (const llm::GatewayError &e) {
        if (e.code() == llm::GatewayErrorCode::rate_limited) {
            auto err = simple(429, "rate_limited", e.what());
            err.body["provider_code"] = to_string(e.code());
            if (e.retry_after()) err.body["retry_after_ms"] = e.retry_after()->count();
            return err;
        }
        auto err = simple(502, "provider", e.what());
        err.body["provider_code"] = to_string(e.code());
        if (e.http_status()) err.body["http_status"] = *e.http_status();
        return err;
    } catch (const FormatError &e) {
        auto err = simple(502, "provider", e.what());
        err.body["provider_code"] = to_string(llm::GatewayErrorCode::malformed_payload);
        return err;
    } catch (const Error &e) {
        // Dependency, slot, sequencing, insufficient-data and integrity errors are request problems.
        return validation_error({{"$", e.what()}}, e.what());
    } catch (const std::exception &e) {
        return simple(500, "internal", e.what());
    }
    return simple(500, "internal", "unknown error");
}

class Server {
  public:
    explicit Server(ServiceOptions opts)
        : opts_(std::move(opts)),
          tables_(geomech::load_rating_tables(opts_.data_dir + "/rating_tables.json")),
          catalog_(prompt::load_catalog(opts_.data_dir + "/prompts")),
          schemas_(SchemaSet::load(opts_.data_dir + "/openapi.json")),
          store_(opts_.store_dir),
          gateway_(opts_.provider) {
        routes();
    }

    httplib::Server &http() { return http_; }
    const SchemaSet &schemas() const { return schemas_; }
    store::ProjectStore &store() { return store_; }

    int bind_to_any_port(const std::string &host = "127.0.0.1") { return http_.bind_to_any_port(host); }
    bool listen_after_bind() { return http_.listen_after_bind(); }
    bool listen(const std::string &host, int port) { return http_.listen(host, port); }
    void stop() { http_.stop(); }
    void wait_until_ready() { http_.wait_until_ready(); }

  private:
    using Handler = std::function<void(const httplib::Request &, httplib::Response &)>;

    static void send_json(httplib::Response &res, int status, const Json &body) {
        res.status = status;
        res.set_content(body.dump(2) + "\n", "application/json");
    }

    Handler guarded(Handler h) {
        return [h = std::move(h)](const httplib::Request &req, httplib::Response &res) {
            try {
                h(req, res);
            } catch (...) {
                auto err = map_exception(std::current_exception());
                log().warn("http {} {} -> {}: {}", req.method, req.path, err.status, err.body.value("message", ""));
                send_json(res, err.status, err.body);
            }
        };
    }

    // Parses the body and checks it against the named schema.
    Json body_as(const httplib::Request &req, const std::string &schema) const {
        Json j;
        try {
            j = Json::parse(req.body);
        } catch (const Json::parse_error &e) {
            throw ParseError("$", std::string("request body is not JSON: ") + e.what());
        }
        auto v = schemas_.validate(j, schema);
        if (!v.empty()) throw RequestInvalid(std::move(v));
        return j;
    }

    struct RequestInvalid : Error {
        explicit RequestInvalid(std::vector<Violation> v) : Error("request does not match schema"), violations(std::move(v)) {}
        std::vector<Violation> violations;
    };

    static void require_valid(const Project &p) {
        auto v = validate_project(p, ValidationMode::draft);
        if (!v.empty()) throw RequestInvalid(std::move(v));
    }

    static int int_param(const std::string &text, const char *name) {
        try {
            std::size_t used = 0;
            int v = std::stoi(text, &used);
            if (used == text.size()) return v;
        } catch (const std::exception &) {
        }
        throw ValidationError(name, std::string(name) + " must be an integer");
    }

    Json envelope(const std::string &id, const Project &p) const { return Json{{"id", id}, {"project", write(p)}}; }

    void routes() {
        auto wrap = [this](Handler h) {
            return guarded([h = std::move(h)](const httplib::Request &req, httplib::Response &res) {
                try {
                    h(req, res);
                } catch (const RequestInvalid &e) {
                    auto err = validation_error(e.violations, e.what());
                    send_json(res, err.status, err.body);
                }
            });
        };

        http_.Get("/healthz", wrap([](const auto &, auto &res) { send_json(res, 200, Json{{"status", "ok"}}); }));

        http_.Post("/projects", wrap([this](const httplib::Request &req, httplib::Response &res) {
            auto p = parse_as<Project>(body_as(req, "Project"));
            require_valid(p);
            auto id = store_.create(p);
            send_json(res, 201, envelope(id, p));
        }));

        http_.Get("/projects/:id", wrap([this](const httplib::Request &req, httplib::Response &res) {
            const auto &id = req.path_params.at("id");
            send_json(res, 200, envelope(id, store_.load(id)));
        }));

        http_.Put("/projects/:id", wrap([this](const httplib::Request &req, httplib::Response &res) {
            const auto &id = req.path_params.at("id");
            auto p = parse_as<Project>(body_as(req, "Project"));
            require_valid(p);
            auto saved = store_.update(id, [&](Project &current) { current = p; });
            send_json(res, 200, envelope(id, saved));
        }));

        http_.Post("/projects/:id/outcrops", wrap([this](const httplib::Request &req, httplib::Response &res) {
            const auto &id = req.path_params.at("id");
            auto o = parse_as<Outcrop>(body_as(req, "Outcrop"));
            auto saved = store_.update(id, [&](Project &p) {
                if (p.find_outcrop(o.id)) throw ValidationError("$.id", "outcrop " + std::to_string(o.id) + " already exists");
                p.outcrops.push_back(o);
                require_valid(p);
            });
            send_json(res, 201, envelope(id, saved));
        }));

        http_.Put("/projects/:id/outcrops/:oid", wrap([this](const httplib::Request &req, httplib::Response &res) {
            const auto &id = req.path_params.at("id");
            int oid = int_param(req.path_params.at("oid"), "oid");
            auto o = parse_as<Outcrop>(body_as(req, "Outcrop"));
            if (o.id != oid) throw ValidationError("$.id", "body id does not match the URL");
            auto saved = store_.update(id, [&](Project &p) {
                auto *existing = p.find_outcrop(oid);
                if (!existing) throw NotFoundError("outcrop " + std::to_string(oid));
                *existing = o;
                require_valid(p);
            });
            send_json(res, 200, envelope(id, saved));
        }));

        http_.Post("/outcrops/:oid/images", wrap([this](const httplib::Request &req, httplib::Response &res) { upload_image(req, res); }));

        http_.Post("/generate/:section", wrap([this](const httplib::Request &req, httplib::Response &res) { generate(req, res); }));

        http_.Post("/geomech/rmr", wrap([this](const httplib::Request &req, httplib::Response &res) {
            auto in = parse_as<geomech::RmrInput>(body_as(req, "RmrInput"));
            send_json(res, 200, write(geomech::compute_rmr(in, tables_)));
        }));
        http_.Post("/geomech/smr", wrap([this](const httplib::Request &req, httplib::Response &res) {
            auto in = parse_as<geomech::SmrInput>(body_as(req, "SmrInput"));
            send_json(res, 200, write(geomech::compute_smr(in, tables_)));
        }));
        http_.Post("/geomech/schmidt", wrap([this](const httplib::Request &req, httplib::Response &res) {
            auto in = parse_as<geomech::SchmidtTest>(body_as(req, "SchmidtTest"));
            send_json(res, 200, write(geomech::schmidt_summary(in, tables_.schmidt)));
        }));
        http_.Post("/geomech/stereonet", wrap([this](const httplib::Request &req, httplib::Response &res) {
            auto j = body_as(req, "StereonetRequest");
            if (j.contains("joint_sets")) {
                Json points = Json::array();
                for (const auto &s : j.at("joint_sets"))
                    points.push_back(write(geomech::project_pole(s.at("dip_direction").get<double>(), s.at("dip").get<double>()),
                                           s.at("set_label").get<std::string>()));
                send_json(res, 200, Json{{"points", std::move(points)}});
            } else if (j.contains("trend")) {
                send_json(res, 200, write(geomech::equal_area_project(j.at("trend").get<double>(), j.at("plunge").get<double>())));
            } else {
                send_json(res, 200, write(geomech::project_pole(j.at("dip_direction").get<double>(), j.at("dip").get<double>())));
            }
        }));

        http_.Post("/evaluate", wrap([this](const httplib::Request &req, httplib::Response &res) {
            auto pairs = eval::parse_pairs_json(body_as(req, "EvaluateRequest"));
            send_json(res, 200, eval::write(eval::evaluate_corpus(pairs)));
        }));

        http_.Get("/projects/:id/report", wrap([this](const httplib::Request &req, httplib::Response &res) {
            const auto &id = req.path_params.at("id");
            std::string format = req.has_param("format") ? req.get_param_value("format") : "json";
            auto f = enum_from_string<report::ExportFormat>(format);
            if (!f) throw ValidationError("format", "unknown export format '" + format + "'");
            auto doc = report::assemble_report(store_.load(id), tables_, opts_.now(), id);
            auto bytes = report::export_document(doc, *f, [this](const report::Figure &fig) {
                return store_.get_blob(fig.image_key);
            });
            res.status = 200;
            switch (*f) {
            case report::ExportFormat::json: res.set_content(bytes, "application/json"); break;
            case report::ExportFormat::html: res.set_content(bytes, "text/html; charset=utf-8"); break;
            case report::ExportFormat::markdown: res.set_content(bytes, "text/markdown; charset=utf-8"); break;
            }
        }));
    }

    void upload_image(const httplib::Request &req, httplib::Response &res) {
        int oid = int_param(req.path_params.at("oid"), "oid");
        if (!req.has_param("project")) throw ValidationError("project", "query parameter 'project' is required");
        if (!req.has_param("role")) throw ValidationError("role", "query parameter 'role' is required");
        const auto project_id = req.get_param_value("project");
        auto role = enum_from_string<ImageRole>(req.get_param_value("role"));
        if (!role) throw ValidationError("role", "role must be outcrop or hand_sample");
        if (!req.is_multipart_form_data() || !req.has_file("file"))
            throw ValidationError("file", "multipart field 'file' is required");
        const auto file = req.get_file_value("file");
        if (!detail::is_raster_media_type(file.content_type))
            throw ValidationError("file", "unsupported media type '" + file.content_type + "'");
        if (!llm::image_size(file.content)) throw ValidationError("file", "file is not a decodable image");
        if (!store_.exists(project_id)) throw NotFoundError("project " + project_id);

        auto blob = store_.put_blob(file.content);
        ImageRef ref{"img-" + std::to_string(oid) + "-" + std::string(to_string(*role)) + "-" + blob.key.substr(0, 12),
                     *role, file.content_type, blob.byte_length, blob.key};
        store_.update(project_id, [&](Project &p) {
            auto *o = p.find_outcrop(oid);
            if (!o) throw NotFoundError("outcrop " + std::to_string(oid));
            std::erase_if(o->images, [&](const ImageRef &i) { return i.role == *role; }); // one image per role slot
            o->images.push_back(ref);
        });
        send_json(res, 201, write(ref));
    }

    void generate(const httplib::Request &req, httplib::Response &res) {
        auto kind = enum_from_string<SectionKind>(req.path_params.at("section"));
        if (!kind || *kind == SectionKind::preliminary)
            throw NotFoundError("section " + req.path_params.at("section"));
        if (!req.has_param("project")) throw ValidationError("project", "query parameter 'project' is required");
        const auto project_id = req.get_param_value("project");
        std::optional<int> outcrop;
        if (req.has_param("outcrop")) outcrop = int_param(req.get_param_value("outcrop"), "outcrop");

        auto project = store_.load(project_id);
        report::GenerationContext ctx{catalog_, tables_, gateway_, [this](const ImageRef &ref) {
                                          auto bytes = store_.get_blob(ref.storage_key);
                                          if (!bytes) throw DependencyError("image " + ref.id + " has no stored bytes");
                                          return llm::ImagePayload{ref.media_type, std::move(*bytes)};
                                      }};
        auto out = report::generate_section(ctx, project, *kind, outcrop);
        store_.update(project_id, [&](Project &p) { report::store_text(p, out.kind, out.outcrop_id, out.text); });

        Json body{{"kind", to_string(out.kind)}};
        if (out.outcrop_id) body["outcrop_id"] = *out.outcrop_id;
        body["text"] = out.text;
        body["section"] = report::write(out.section);
        body["provider_id"] = out.response.provider_id;
        body["attempts"] = out.response.attempts;
        body["latency_ms"] = out.response.latency_ms;
        body["truncated"] = out.response.truncated;
        send_json(res, 200, body);
    }

    ServiceOptions opts_;
    geomech::RatingTables tables_;
    prompt::PromptCatalog catalog_;
    SchemaSet schemas_;
    store::ProjectStore store_;
    llm::Gateway gateway_;
    httplib::Server http_;
};

} // namespace georeport::service
