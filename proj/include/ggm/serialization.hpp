#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ggm/model.hpp"

namespace ggm {

/// Model description: potential, period q, tree degree d and, optionally,
/// a boundary law (explicit values or a branch label to select).
struct ModelConfig {
    TransferOperator op = TransferOperator::sos(1.0);
    int q = 2;
    int d = 2;
    std::optional<std::vector<double>> boundary_law;
    std::optional<std::string> branch;
};

/// Throws Error(config) naming the offending field.
ModelConfig parse_model(const nlohmann::json& doc);
/// Parses JSON text; syntax errors carry line and column.
ModelConfig parse_model_text(const std::string& text, const std::string& source = "<model>");
ModelConfig load_model(const std::string& path);

nlohmann::json to_json(const TransferOperator& op);
nlohmann::json to_json(const ModelConfig& config);

} // namespace ggm
