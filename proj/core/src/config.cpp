#include "aoib/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace aoib {

using nlohmann::json;

ProblemInstance InstanceSpec::build() const {
  try {
    if (mu.has_value()) {
      return validate_instance(M, N, *mu);
    }
    if (!mu1.has_value() || !delta.has_value()) {
      throw ConfigError("instance needs either mu or (mu1, delta)");
    }
    return validate_instance(M, N, equidistant_mu(*mu1, *delta, N));
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("invalid instance: ") + e.what());
  }
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const char* where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError(std::string("unknown key \"") + item.key() + "\" in " + where);
    }
  }
}

InstanceSpec parse_instance(const json& obj) {
  if (!obj.is_object()) throw ConfigError("\"instance\" must be an object");
  reject_unknown_keys(obj, {"M", "N", "mu", "mu1", "delta"}, "instance");
  InstanceSpec spec;
  if (!obj.contains("M") || !obj.contains("N")) {
    throw ConfigError("instance needs M and N");
  }
  spec.M = obj.at("M").get<int>();
  spec.N = obj.at("N").get<int>();
  if (obj.contains("mu")) {
    if (obj.contains("mu1") || obj.contains("delta")) {
      throw ConfigError("instance: give either mu or (mu1, delta), not both");
    }
    spec.mu = obj.at("mu").get<std::vector<double>>();
  } else {
    if (!obj.contains("mu1") || !obj.contains("delta")) {
      throw ConfigError("instance needs either mu or (mu1, delta)");
    }
    spec.mu1 = obj.at("mu1").get<double>();
    spec.delta = obj.at("delta").get<double>();
  }
  return spec;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown_keys(doc,
                      {"instance", "T", "iterations", "policies", "master_seed",
                       "hybrid_mn_interpretation", "output_dir"},
                      "config");

  ExperimentConfig config;
  try {
    if (!doc.contains("instance")) throw ConfigError("config needs \"instance\"");
    config.instance = parse_instance(doc.at("instance"));

    if (!doc.contains("T")) throw ConfigError("config needs \"T\"");
    config.T = doc.at("T").get<std::int64_t>();
    if (config.T < 1) throw ConfigError("T must be >= 1");

    if (!doc.contains("iterations")) throw ConfigError("config needs \"iterations\"");
    config.iterations = doc.at("iterations").get<std::int64_t>();
    if (config.iterations < 1) throw ConfigError("iterations must be >= 1");

    if (!doc.contains("policies")) throw ConfigError("config needs \"policies\"");
    for (const auto& name : doc.at("policies")) {
      auto kind = parse_policy_kind(name.get<std::string>());
      if (!kind) {
        throw ConfigError("unknown policy \"" + name.get<std::string>() + "\"");
      }
      config.policies.push_back(*kind);
    }
    if (config.policies.empty()) throw ConfigError("policies must be non-empty");

    if (doc.contains("master_seed")) {
      config.master_seed = doc.at("master_seed").get<std::uint64_t>();
    }
    if (doc.contains("hybrid_mn_interpretation")) {
      std::string rule = doc.at("hybrid_mn_interpretation").get<std::string>();
      if (rule == "product_MN") {
        config.hybrid_mn = HybridMnRule::ProductMN;
      } else if (rule == "source_m_times_N") {
        config.hybrid_mn = HybridMnRule::SourceTimesN;
      } else {
        throw ConfigError("hybrid_mn_interpretation must be product_MN or source_m_times_N");
      }
    }
    if (doc.contains("output_dir")) {
      config.output_dir = doc.at("output_dir").get<std::string>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }

  // Fail fast on an unbuildable instance.
  (void)config.instance.build();
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace aoib
