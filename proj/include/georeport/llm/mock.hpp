#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "georeport/llm/provider.hpp"

namespace georeport::llm {

namespace mock_detail {

inline constexpr std::array<std::string_view, 18> sentences{
    "El macizo rocoso presenta un fracturamiento moderado con bloques de tamaño decimétrico.",
    "Las discontinuidades principales muestran continuidad media y aberturas milimétricas.",
    "La meteorización superficial es leve y no modifica de forma apreciable la resistencia de la matriz.",
    "La roca intacta exhibe una textura compacta con escasa porosidad visible.",
    "El patrón estructural sugiere un control tectónico sobre la orientación de las juntas.",
    "La estabilidad del talud depende de la relación entre la orientación de las familias y la cara expuesta.",
    "Se observan zonas con relleno arcilloso que reducen la resistencia al corte de las juntas.",
    "La calidad geomecánica del conjunto puede considerarse media a buena.",
    "La presencia de agua es limitada y se restringe a humedad en las superficies de fractura.",
    "Los bloques delimitados por la intersección de juntas podrían desprenderse en sectores aislados.",
    "La heterogeneidad del material se manifiesta en variaciones locales de color y tamaño de grano.",
    "Los valores de rebote del esclerómetro indican una resistencia a compresión de rango medio.",
    "Se recomienda complementar la caracterización con ensayos de laboratorio sobre muestras representativas.",
    "Las diferencias entre afloramientos responden principalmente a la litología y al grado de fracturamiento.",
    "El índice RMR obtenido es coherente con las observaciones de campo.",
    "El análisis SMR identifica a la familia de juntas más desfavorable respecto al talud.",
    "La rugosidad de las superficies de discontinuidad favorece la trabazón entre bloques.",
    "La deformabilidad estimada del macizo es compatible con obras civiles de mediana envergadura.",
};

inline constexpr std::array<std::string_view, 6> objective_verbs{
    "Caracterizar", "Evaluar", "Determinar", "Analizar", "Estimar", "Describir",
};

inline constexpr std::array<std::string_view, 6> objective_targets{
    "las propiedades geotécnicas de los macizos rocosos del área de estudio",
    "la calidad geomecánica de los afloramientos mediante los índices RMR y SMR",
    "la resistencia a compresión simple de la roca a partir de ensayos con esclerómetro",
    "la orientación y el espaciamiento de las familias de discontinuidades",
    "las condiciones de estabilidad de los taludes expuestos",
    "las características litológicas y estructurales de cada afloramiento",
};

inline std::uint64_t seed_from_digest(const std::string &hex) {
    return std::stoull(hex.substr(0, 16), nullptr, 16);
}

inline std::string paragraph(std::mt19937_64 &rng, int n_sentences) {
    std::string out;
    std::vector<std::size_t> idx(sentences.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    // Fisher-Yates on raw engine output keeps the sequence identical across standard libraries.
    for (std::size_t i = idx.size() - 1; i > 0; --i) std::swap(idx[i], idx[rng() % (i + 1)]);
    for (int i = 0; i < n_sentences; ++i) {
        if (i) out += ' ';
        out += sentences[idx[i]];
    }
    return out;
}

inline std::string synthesize(const GenerationRequest &req, const std::string &digest) {
    std::mt19937_64 rng(seed_from_digest(digest));
    const auto &p = req.prompt;
    if (p.find("objetivo general") != std::string::npos) {
        std::string out;
        std::size_t first = rng() % objective_targets.size();
        for (std::size_t i = 0; i < 3; ++i) {
            if (i) out += '\n';
            out += std::string(objective_verbs[(first + i) % objective_verbs.size()]) + " " +
                   std::string(objective_targets[(first + i) % objective_targets.size()]) + ".";
        }
        return out;
    }
    if (p.find("conclusiones numeradas") != std::string::npos) {
        const int n = 4 + static_cast<int>(rng() % 3);
        std::string out;
        for (int i = 1; i <= n; ++i) {
            if (i > 1) out += '\n';
            out += std::to_string(i) + ". " + paragraph(rng, 2);
        }
        return out;
    }
    int paragraphs = 1;
    if (p.find("3-4 párrafos") != std::string::npos)
        paragraphs = 3;
    else if (p.find("párrafos") != std::string::npos || p.find("introducción") != std::string::npos)
        paragraphs = 2;
    std::string out;
    for (int i = 0; i < paragraphs; ++i) {
        if (i) out += "\n\n";
        out += paragraph(rng, 4 + static_cast<int>(rng() % 2));
    }
    return out;
}

} // namespace mock_detail

// Offline provider. Output is a pure function of the request digest: a canned
// file <canned_dir>/<digest>.txt when present, synthesized Spanish text
// otherwise. `mock_script` injects failures on successive attempts.
class MockProvider : public Provider {
  public:
    explicit MockProvider(const ProviderConfig &cfg) : canned_dir_(cfg.canned_dir), script_(cfg.mock_script) {}

    bool needs_api_key() const override { return false; }

    ProviderReply call(const GenerationRequest &req, const std::string &, std::chrono::milliseconds) override {
        {
            std::lock_guard lock(mu_);
            if (next_ < script_.size()) {
                const auto &step = script_[next_++];
                if (step != "ok") {
                    auto code = enum_from_string<GatewayErrorCode>(step);
                    throw GatewayError(code.value_or(GatewayErrorCode::upstream), "scripted mock failure: " + step);
                }
            }
        }
        const auto digest = request_digest(req);
        if (!canned_dir_.empty()) {
            std::ifstream in(std::filesystem::path(canned_dir_) / (digest + ".txt"), std::ios::binary);
            if (in) {
                std::ostringstream ss;
                ss << in.rdbuf();
                return {ss.str(), false};
            }
        }
        return {mock_detail::synthesize(req, digest), false};
    }

  private:
    std::mutex mu_;
    std::string canned_dir_;
    std::vector<std::string> script_;
    std::size_t next_ = 0;
};

} // namespace georeport::llm
