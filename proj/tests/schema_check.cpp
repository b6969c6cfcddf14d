#include "schema_check.hpp"

#include <fstream>
#include <stdexcept>

namespace eup::testing {

namespace {

using nlohmann::json;

bool has_type(const json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  if (type == "integer") return v.is_number_integer() || (v.is_number_float() && v.get<double>() == static_cast<long long>(v.get<double>()));
  if (type == "number") return v.is_number();
  throw std::runtime_error("schema uses unsupported type " + type);
}

const json& resolve(const json& root, const json& schema) {
  if (!schema.is_object() || !schema.contains("$ref")) return schema;
  const std::string ref = schema["$ref"];
  const std::string prefix = "#/definitions/";
  if (ref.rfind(prefix, 0) != 0) throw std::runtime_error("unsupported $ref " + ref);
  return root.at("definitions").at(ref.substr(prefix.size()));
}

void check(const json& root, const json& raw, const json& v, const std::string& path, std::vector<std::string>& errs) {
  const json& s = resolve(root, raw);
  if (s.is_boolean()) {
    if (!s.get<bool>()) errs.push_back(path + ": not allowed");
    return;
  }
  if (s.contains("type")) {
    bool ok = false;
    if (s["type"].is_string()) {
      ok = has_type(v, s["type"]);
    } else {
      for (const auto& t : s["type"]) ok = ok || has_type(v, t);
    }
    if (!ok) errs.push_back(path + ": wrong type");
  }
  if (s.contains("enum")) {
    bool ok = false;
    for (const auto& e : s["enum"]) ok = ok || e == v;
    if (!ok) errs.push_back(path + ": value not in enum");
  }
  if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>()) {
    errs.push_back(path + ": below minimum");
  }
  if (v.is_object()) {
    if (s.contains("required")) {
      for (const auto& key : s["required"]) {
        if (!v.contains(key.get<std::string>())) errs.push_back(path + ": missing " + key.get<std::string>());
      }
    }
    for (const auto& [key, value] : v.items()) {
      const std::string sub = path + "/" + key;
      if (s.contains("properties") && s["properties"].contains(key)) {
        check(root, s["properties"][key], value, sub, errs);
      } else if (s.contains("additionalProperties")) {
        check(root, s["additionalProperties"], value, sub, errs);
      }
    }
  }
  if (s.contains("oneOf")) {
    int matches = 0;
    for (const auto& alt : s["oneOf"]) {
      std::vector<std::string> alt_errs;
      check(root, alt, v, path, alt_errs);
      if (alt_errs.empty()) ++matches;
    }
    if (matches != 1) errs.push_back(path + ": matches " + std::to_string(matches) + " oneOf branches");
  }
}

}  // namespace

std::vector<std::string> validate_schema(const json& schema, const json& instance) {
  std::vector<std::string> errs;
  check(schema, schema, instance, "", errs);
  return errs;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

}  // namespace eup::testing
