#include "shtarkov/envelope_json.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "shtarkov/errors.hpp"

namespace shtarkov {

namespace {

using nlohmann::json;

void require_fields(const json& obj, const std::set<std::string>& allowed,
                    const std::set<std::string>& required,
                    const char* where) {
  if (!obj.is_object())
    throw ParseError(std::string(where) + ": expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.contains(key))
      throw ParseError(std::string(where) + ": unknown field \"" + key + "\"");
  }
  for (const auto& key : required)
    if (!obj.contains(key))
      throw ParseError(std::string(where) + ": missing field \"" + key + "\"");
}

double number_field(const json& obj, const char* key, const char* where) {
  const json& v = obj.at(key);
  if (!v.is_number())
    throw ParseError(std::string(where) + ": field \"" + key +
                     "\" must be a number");
  return v.get<double>();
}

EnvelopeTail parse_tail(const json& obj) {
  if (!obj.is_object() || !obj.contains("kind") || !obj.at("kind").is_string())
    throw ParseError("tail: expected an object with a string \"kind\"");
  std::string kind = obj.at("kind").get<std::string>();
  if (kind == "zero") {
    require_fields(obj, {"kind"}, {"kind"}, "tail");
    return EnvelopeTail{EnvelopeTail::Kind::Zero, 0.0, 0.0};
  }
  require_fields(obj, {"kind", "c", "alpha"}, {"kind", "c", "alpha"}, "tail");
  double c = number_field(obj, "c", "tail");
  double alpha = number_field(obj, "alpha", "tail");
  if (kind == "geometric")
    return EnvelopeTail{EnvelopeTail::Kind::Geometric, c, alpha};
  if (kind == "power") return EnvelopeTail{EnvelopeTail::Kind::Power, c, alpha};
  throw ParseError("tail: unknown kind \"" + kind + "\"");
}

}  // namespace

Envelope parse_envelope_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("envelope spec: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string())
    throw ParseError("envelope spec: expected an object with a string \"kind\"");
  std::string kind = doc.at("kind").get<std::string>();
  try {
    if (kind == "power_law" || kind == "exponential") {
      require_fields(doc, {"kind", "c", "alpha"}, {"kind", "c", "alpha"},
                     "envelope spec");
      double c = number_field(doc, "c", "envelope spec");
      double alpha = number_field(doc, "alpha", "envelope spec");
      return kind == "power_law" ? Envelope::power_law(c, alpha)
                                 : Envelope::exponential(c, alpha);
    }
    if (kind == "table") {
      require_fields(doc, {"kind", "values", "tail"},
                     {"kind", "values", "tail"}, "envelope spec");
      const json& vals = doc.at("values");
      if (!vals.is_array())
        throw ParseError("envelope spec: \"values\" must be an array");
      std::vector<double> values;
      values.reserve(vals.size());
      for (const json& v : vals) {
        if (!v.is_number())
          throw ParseError("envelope spec: \"values\" entries must be numbers");
        values.push_back(v.get<double>());
      }
      return Envelope::table(std::move(values), parse_tail(doc.at("tail")));
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("envelope spec: ") + e.what());
  }
  throw ParseError("envelope spec: unknown kind \"" + kind + "\"");
}

Envelope load_envelope_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("envelope spec: cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_envelope_spec(buf.str());
}

}  // namespace shtarkov
