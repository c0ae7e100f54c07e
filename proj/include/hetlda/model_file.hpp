#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "hetlda/multiclass.hpp"

namespace hetlda {

inline constexpr int kModelFormatVersion = 1;

/// Saved one-vs-one model. Doubles are written in shortest round-trip form,
/// so a loaded model makes bit-identical decisions.
struct ModelFile {
    std::string method;
    OvoModel model;
    nlohmann::json training = nlohmann::json::object();  // dataset hash, config, seed
};

nlohmann::json to_json(const ModelFile& file);

/// Throws VersionMismatch on an unknown format version and ParseError on
/// malformed or inconsistent content.
ModelFile model_from_json(const nlohmann::json& j);

void save_model(const ModelFile& file, const std::filesystem::path& path);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace hetlda
