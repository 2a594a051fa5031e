#include "fptk/run_manifest.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "fptk/errors.hpp"

namespace fptk::cli {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string to_json_string(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : m.parameters) params[key] = value;
  j["parameters"] = params;
  j["seed"] = m.seed;
  j["toolkit_version"] = m.toolkit_version;
  j["argv"] = m.argv;
  return j.dump();
}

RunManifest parse_manifest_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("manifest: invalid JSON: ") + e.what());
  }
  RunManifest m;
  try {
    m.command = j.at("command").get<std::string>();
    for (const auto& [key, value] : j.at("parameters").items()) {
      m.parameters.emplace_back(key, value.get<std::string>());
    }
    m.seed = j.at("seed").get<std::uint64_t>();
    m.toolkit_version = j.at("toolkit_version").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("manifest: missing field: ") + e.what());
  }
  return m;
}

RunManifest manifest_from_artifact(const std::string& file_contents) {
  const std::string trimmed =
      file_contents.substr(file_contents.find_first_not_of(" \t\r\n"));
  if (!trimmed.empty() && trimmed.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(trimmed);
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("artifact: invalid JSON: ") + e.what());
    }
    if (!j.contains("manifest")) {
      throw DomainError("artifact: JSON document has no manifest field");
    }
    return parse_manifest_json(j["manifest"].dump());
  }
  std::istringstream in(file_contents);
  std::string line;
  const std::string prefix = "# manifest: ";
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) {
      return parse_manifest_json(line.substr(prefix.size()));
    }
  }
  throw DomainError("artifact: no manifest header found");
}

}  // namespace fptk::cli
