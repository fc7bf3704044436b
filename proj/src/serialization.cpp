#include "ggm/serialization.hpp"

#include <fstream>
#include <sstream>

#include "ggm/transfer.hpp"

namespace ggm {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& path, const std::string& what)
{
    throw Error(ErrorKind::config, "'" + path + "': " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& path)
{
    if (!obj.contains(key)) {
        config_error(path + "." + key, "missing");
    }
    return obj.at(key);
}

double number(const json& j, const std::string& path)
{
    if (!j.is_number()) {
        config_error(path, "expected a number, got " + std::string(j.type_name()));
    }
    return j.get<double>();
}

int integer(const json& j, const std::string& path)
{
    if (!j.is_number_integer()) {
        config_error(path, "expected an integer, got " + std::string(j.type_name()));
    }
    return j.get<int>();
}

TransferOperator parse_potential(const json& p)
{
    const std::string path = "potential";
    if (!p.is_object()) {
        config_error(path, "expected an object");
    }
    const json& kind_j = field(p, "kind", path);
    if (!kind_j.is_string()) {
        config_error(path + ".kind", "expected a string");
    }
    std::string kind = kind_j.get<std::string>();
    try {
        if (kind == "sos") {
            return TransferOperator::sos(number(field(p, "beta", path), path + ".beta"));
        }
        if (kind == "discrete_gaussian") {
            return TransferOperator::discrete_gaussian(number(field(p, "beta", path), path + ".beta"));
        }
        if (kind == "table") {
            const json& w = field(p, "weights", path);
            if (!w.is_object()) {
                config_error(path + ".weights", "expected an object mapping increments to weights");
            }
            std::map<long, double> weights;
            for (const auto& [key, value] : w.items()) {
                long m = 0;
                try {
                    std::size_t used = 0;
                    m = std::stol(key, &used);
                    if (used != key.size()) {
                        throw std::invalid_argument(key);
                    }
                } catch (const std::exception&) {
                    config_error(path + ".weights", "key '" + key + "' is not an integer");
                }
                weights[m] = number(value, path + ".weights." + key);
            }
            std::optional<double> tail;
            if (p.contains("tail") && !p.at("tail").is_null()) {
                tail = number(p.at("tail"), path + ".tail");
            }
            return TransferOperator::table(std::move(weights), tail);
        }
        if (kind == "lifted_potts") {
            int q = integer(field(p, "q", path), path + ".q");
            double bt = number(field(p, "beta_tilde", path), path + ".beta_tilde");
            if (p.contains("tail_beta") && !p.at("tail_beta").is_null()) {
                return lift_potts_positive(q, bt, number(p.at("tail_beta"), path + ".tail_beta"));
            }
            return lift_potts(q, bt);
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::config) {
            throw;
        }
        config_error(path, e.what());
    }
    config_error(path + ".kind", "unknown kind '" + kind + "' (expected sos, discrete_gaussian, table, lifted_potts)");
}

} // namespace

ModelConfig parse_model(const json& doc)
{
    if (!doc.is_object()) {
        config_error("$", "model must be a JSON object");
    }
    ModelConfig cfg;
    cfg.op = parse_potential(field(doc, "potential", "$"));
    if (cfg.op.kind() == PotentialKind::lifted_potts || cfg.op.kind() == PotentialKind::lifted_potts_positive) {
        cfg.q = cfg.op.potts_q();
    }
    if (doc.contains("q")) {
        cfg.q = integer(doc.at("q"), "q");
    }
    if (doc.contains("d")) {
        cfg.d = integer(doc.at("d"), "d");
    }
    if (cfg.q < 1) {
        config_error("q", "must be at least 1");
    }
    if (cfg.d < 1) {
        config_error("d", "must be at least 1");
    }
    if (doc.contains("boundary_law")) {
        const json& bl = doc.at("boundary_law");
        if (!bl.is_array() || static_cast<int>(bl.size()) != cfg.q) {
            config_error("boundary_law", "expected an array of q = " + std::to_string(cfg.q) + " numbers");
        }
        std::vector<double> a;
        for (std::size_t i = 0; i < bl.size(); ++i) {
            double v = number(bl[i], "boundary_law[" + std::to_string(i) + "]");
            if (!(v > 0.0)) {
                config_error("boundary_law[" + std::to_string(i) + "]", "must be positive");
            }
            a.push_back(v);
        }
        cfg.boundary_law = std::move(a);
    }
    if (doc.contains("branch")) {
        const json& b = doc.at("branch");
        if (!b.is_string()) {
            config_error("branch", "expected a string");
        }
        std::string s = b.get<std::string>();
        if (s != "trivial" && s != "upper" && s != "lower" && s != "other") {
            config_error("branch", "unknown branch '" + s + "' (expected trivial, upper, lower, other)");
        }
        cfg.branch = s;
    }
    return cfg;
}

ModelConfig parse_model_text(const std::string& text, const std::string& source)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::config, source + ": " + e.what());
    }
    return parse_model(doc);
}

ModelConfig load_model(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::config, "cannot open model file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_model_text(buf.str(), path);
}

json to_json(const TransferOperator& op)
{
    switch (op.kind()) {
    case PotentialKind::sos: return {{"kind", "sos"}, {"beta", op.beta()}};
    case PotentialKind::discrete_gaussian: return {{"kind", "discrete_gaussian"}, {"beta", op.beta()}};
    case PotentialKind::table: {
        json w = json::object();
        auto central = op.central();
        for (std::size_t m = 0; m < central.size(); ++m) {
            w[std::to_string(m)] = central[m];
        }
        json out{{"kind", "table"}, {"weights", w}};
        if (auto rate = op.table_tail_rate()) {
            out["tail"] = *rate;
        }
        return out;
    }
    case PotentialKind::lifted_potts:
        return {{"kind", "lifted_potts"}, {"q", op.potts_q()}, {"beta_tilde", op.beta_tilde()}};
    case PotentialKind::lifted_potts_positive:
        return {{"kind", "lifted_potts"},
                {"q", op.potts_q()},
                {"beta_tilde", op.beta_tilde()},
                {"tail_beta", op.tail_beta()}};
    }
    return {};
}

json to_json(const ModelConfig& config)
{
    json out{{"potential", to_json(config.op)}, {"q", config.q}, {"d", config.d}};
    if (config.boundary_law) {
        out["boundary_law"] = *config.boundary_law;
    }
    if (config.branch) {
        out["branch"] = *config.branch;
    }
    return out;
}

} // namespace ggm
