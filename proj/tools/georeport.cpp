// georeport command-line front end.
//
// Exit codes: 0 ok, 1 usage or unreadable input, 2 validation, 3 provider.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "georeport/eval/pairs_io.hpp"
#include "georeport/service/server.hpp"
#include "georeport/store/dataset.hpp"

#ifndef GEOREPORT_DATA_DIR
#define GEOREPORT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace georeport;

namespace {

enum Exit { ok = 0, usage = 1, validation = 2, provider = 3 };

std::string read_file(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw NotFoundError("cannot open " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path &p, std::string_view bytes) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw NotFoundError("cannot write " + p.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

llm::ProviderConfig provider_config(const std::string &path) {
    if (path.empty()) {
        llm::ProviderConfig mock;
        mock.rate_limit_per_min = 100000;
        return mock;
    }
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const Json::parse_error &e) {
        throw ParseError(path, e.what());
    }
    return llm::parse_provider_config(j, path + "#$");
}

int report_error(std::exception_ptr ep) {
    try {
        std::rethrow_exception(ep);
    } catch (const llm::GatewayError &e) {
        std::cerr << "provider error (" << to_string(e.code()) << "): " << e.what() << "\n";
        return provider;
    } catch (const FormatError &e) {
        std::cerr << "provider error (malformed_payload): " << e.what() << "\n";
        return provider;
    } catch (const NotFoundError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const AssemblyError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return validation;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return validation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
}

struct ServeArgs {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string store_dir = "georeport-store";
    std::string provider_config;
    std::string data_dir = GEOREPORT_DATA_DIR;
};

int serve(const ServeArgs &a) {
    service::ServiceOptions opts{a.data_dir, a.store_dir, provider_config(a.provider_config)};
    service::Server server(std::move(opts));

    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);
    std::thread stopper([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        server.stop();
    });

    int port = a.port;
    if (port == 0) {
        port = server.bind_to_any_port(a.host);
    } else if (!server.http().bind_to_port(a.host, port)) {
        port = -1;
    }
    if (port < 0) {
        std::cerr << "error: cannot bind " << a.host << ":" << a.port << "\n";
        pthread_kill(stopper.native_handle(), SIGTERM);
        stopper.join();
        return usage;
    }
    std::cout << "listening on http://" << a.host << ":" << port << std::endl;
    server.listen_after_bind();
    stopper.join();
    return ok;
}

struct GenerateArgs {
    std::string project;
    std::string out;
    std::string format = "html";
    std::string images;
    std::string provider_config;
    std::string created_at;
    std::string data_dir = GEOREPORT_DATA_DIR;
};

// Image bytes live as files named by storage_key in the images directory.
int generate(const GenerateArgs &a) {
    auto format = enum_from_string<report::ExportFormat>(a.format);
    if (!format) {
        std::cerr << "error: unknown format '" << a.format << "' (json, html, markdown)\n";
        return usage;
    }
    const fs::path images = a.images.empty() ? fs::path(a.project).parent_path() : fs::path(a.images);
    auto project = parse_text_as<Project>(read_file(a.project), a.project + "#$");

    auto tables = geomech::load_rating_tables(a.data_dir + "/rating_tables.json");
    auto catalog = prompt::load_catalog(a.data_dir + "/prompts");
    llm::Gateway gateway(provider_config(a.provider_config));
    report::GenerationContext ctx{catalog, tables, gateway, [&](const ImageRef &ref) {
                                      auto path = images / ref.storage_key;
                                      if (!fs::exists(path))
                                          throw DependencyError("image " + ref.id + " not found at " + path.string());
                                      return llm::ImagePayload{ref.media_type, read_file(path)};
                                  }};
    report::generate_all(ctx, project);

    const std::string created_at = a.created_at.empty() ? project.date + "T00:00:00Z" : a.created_at;
    auto doc = report::assemble_report(project, tables, created_at, fs::path(a.project).stem().string());
    auto bytes = report::export_document(doc, *format, [&](const report::Figure &f) -> std::optional<std::string> {
        auto path = images / f.image_key;
        if (f.image_key.empty() || !fs::exists(path)) return std::nullopt;
        return read_file(path);
    });

    const fs::path out(a.out);
    const char *ext = *format == report::ExportFormat::html ? "html" : *format == report::ExportFormat::json ? "json" : "md";
    write_file(out / (std::string("report.") + ext), bytes);
    write_file(out / "project.generated.json", write(project).dump(2) + "\n");
    std::cout << (out / (std::string("report.") + ext)).string() << "\n";
    return ok;
}

int evaluate(const std::string &pairs_path, const std::string &out) {
    auto stats = eval::evaluate_corpus(eval::load_pairs(pairs_path));
    auto text = eval::write(stats).dump(2) + "\n";
    if (out.empty() || out == "-")
        std::cout << text;
    else
        write_file(out, text);
    return ok;
}

int demo_dataset(const std::string &csv, bool spanish_header) {
    store::DatasetColumns cols;
    if (spanish_header)
        cols = {"ID", "Tipo de roca", "Geología", "Color predominante", "Estructuras principales",
                "Calidad del macizo rocoso", "Descripción de juntas"};
    auto rows = store::load_dataset(csv, cols);
    Json classes = Json::object();
    for (const auto &[type, n] : store::class_counts(rows)) classes[std::string(to_string(type))] = n;
    std::cout << Json{{"rows", rows.size()}, {"classes", classes}}.dump(2) << "\n";
    return ok;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Geological field report generator"};
    app.require_subcommand(1);

    ServeArgs serve_args;
    auto *serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
    serve_cmd->add_option("--host", serve_args.host, "Bind address")->capture_default_str();
    serve_cmd->add_option("--port", serve_args.port, "Port (0 picks a free one)")->capture_default_str();
    serve_cmd->add_option("--store-dir", serve_args.store_dir, "Project and image store")->capture_default_str();
    serve_cmd->add_option("--provider-config", serve_args.provider_config, "Provider config JSON (default: mock)");
    serve_cmd->add_option("--data-dir", serve_args.data_dir, "Rating tables, prompts and schemas")->capture_default_str();

    GenerateArgs gen_args;
    auto *gen_cmd = app.add_subcommand("generate", "Generate a full report from a project file");
    gen_cmd->add_option("--project", gen_args.project, "Project JSON")->required()->check(CLI::ExistingFile);
    gen_cmd->add_option("--out", gen_args.out, "Output directory")->required();
    gen_cmd->add_option("--format", gen_args.format, "json, html or markdown")->capture_default_str();
    gen_cmd->add_option("--images", gen_args.images, "Directory of image files named by storage_key");
    gen_cmd->add_option("--provider-config", gen_args.provider_config, "Provider config JSON (default: mock)");
    gen_cmd->add_option("--created-at", gen_args.created_at, "Report timestamp (default: project date)");
    gen_cmd->add_option("--data-dir", gen_args.data_dir, "Rating tables, prompts and schemas")->capture_default_str();

    std::string pairs, stats_out;
    auto *eval_cmd = app.add_subcommand("evaluate", "Score candidate/reference pairs");
    eval_cmd->add_option("--pairs", pairs, "Pairs file (CSV or JSON)")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--out", stats_out, "Output stats JSON (default: stdout)");

    std::string dataset_csv;
    bool spanish_header = false;
    auto *ds_cmd = app.add_subcommand("demo-dataset", "Load and summarize the rock description dataset");
    ds_cmd->add_option("--csv", dataset_csv, "Dataset CSV")->required()->check(CLI::ExistingFile);
    ds_cmd->add_flag("--spanish-header", spanish_header, "Columns use the Spanish header names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (*serve_cmd) return serve(serve_args);
        if (*gen_cmd) return generate(gen_args);
        if (*eval_cmd) return evaluate(pairs, stats_out);
        if (*ds_cmd) return demo_dataset(dataset_csv, spanish_header);
    } catch (...) {
        return report_error(std::current_exception());
    }
    return usage;
}
