#include "polrig/manifest.hpp"

#include "polrig/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace polrig::io {

using nlohmann::json;

namespace {

int read_int(const json& entry, const std::string& field) {
  if (!entry.contains(field)) throw ManifestError("missing field '" + field + "'");
  const json& v = entry.at(field);
  if (!v.is_number_integer()) throw ManifestError("field '" + field + "' must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw ManifestError("field '" + field + "' is out of range");
  }
  return static_cast<int>(x);
}

std::vector<int> read_int_array(const json& entry, const std::string& field) {
  if (!entry.contains(field)) throw ManifestError("missing field '" + field + "'");
  const json& v = entry.at(field);
  if (!v.is_array()) throw ManifestError("field '" + field + "' must be an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) {
      throw ManifestError(field + "[" + std::to_string(i) + "] must be an integer");
    }
    const auto x = v[i].get<std::int64_t>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
      throw ManifestError(field + "[" + std::to_string(i) + "] is out of range");
    }
    out.push_back(static_cast<int>(x));
  }
  return out;
}

void reject_unknown_fields(const json& entry, std::string_view family, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : entry.items()) {
    if (key != "family" && !allowed.contains(key)) {
      throw ManifestError("unexpected field '" + key + "' for family " + std::string(family));
    }
  }
}

PolarizedPair build(const json& entry) {
  if (!entry.is_object()) throw ManifestError("manifest entry must be a JSON object");
  if (!entry.contains("family")) throw ManifestError("missing field 'family'");
  if (!entry["family"].is_string()) throw ManifestError("field 'family' must be a string");
  const std::string name = entry["family"].get<std::string>();
  const auto family = parse_family(name);
  if (!family) {
    throw ManifestError("unknown family '" + name +
                        "' (expected projective_space, hypersurface, complete_intersection, scroll or product)");
  }

  switch (*family) {
    case Family::projective_space:
      reject_unknown_fields(entry, name, {"n", "twist"});
      return PolarizedPair::projective_space(read_int(entry, "n"),
                                             entry.contains("twist") ? read_int(entry, "twist") : 1);
    case Family::hypersurface:
      reject_unknown_fields(entry, name, {"n", "degree"});
      return PolarizedPair::hypersurface(read_int(entry, "n"), read_int(entry, "degree"));
    case Family::complete_intersection:
      reject_unknown_fields(entry, name, {"n", "degrees"});
      return PolarizedPair::complete_intersection(read_int(entry, "n"), read_int_array(entry, "degrees"));
    case Family::scroll: {
      reject_unknown_fields(entry, name, {"n", "a"});
      auto pair = PolarizedPair::scroll(read_int_array(entry, "a"));
      if (entry.contains("n") && read_int(entry, "n") != pair.dimension()) {
        throw ManifestError("n must equal the number of entries in a");
      }
      return pair;
    }
    case Family::product: {
      reject_unknown_fields(entry, name, {"n", "factors", "multidegree"});
      auto pair = PolarizedPair::product(read_int_array(entry, "factors"), read_int_array(entry, "multidegree"));
      if (entry.contains("n") && read_int(entry, "n") != pair.dimension()) {
        throw ManifestError("n must equal the sum of factors");
      }
      return pair;
    }
  }
  throw ManifestError("unhandled family");
}

}  // namespace

PolarizedPair parse_pair(const json& entry) {
  try {
    return build(entry);
  } catch (const InvalidPair& e) {
    throw ManifestError(e.what());
  }
}

std::vector<PolarizedPair> parse_manifest(const json& doc) {
  std::vector<PolarizedPair> out;
  if (doc.is_array()) {
    if (doc.empty()) throw ManifestError("manifest array is empty");
    for (std::size_t i = 0; i < doc.size(); ++i) {
      try {
        out.push_back(parse_pair(doc[i]));
      } catch (const ManifestError& e) {
        throw ManifestError("entry " + std::to_string(i) + ": " + e.what());
      }
    }
  } else {
    out.push_back(parse_pair(doc));
  }
  return out;
}

std::vector<PolarizedPair> parse_manifest_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ManifestError(std::string("malformed JSON: ") + e.what());
  }
  return parse_manifest(doc);
}

std::vector<PolarizedPair> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError("cannot read manifest " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest_text(buf.str());
}

json to_manifest(const PolarizedPair& pair) {
  json j;
  j["family"] = std::string(family_name(pair.family()));
  std::visit(
      [&j](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ProjectiveSpaceParams>) {
          j["n"] = p.n;
          j["twist"] = p.twist;
        } else if constexpr (std::is_same_v<T, HypersurfaceParams>) {
          j["n"] = p.n;
          j["degree"] = p.degree;
        } else if constexpr (std::is_same_v<T, CompleteIntersectionParams>) {
          j["n"] = p.n;
          j["degrees"] = p.degrees;
        } else if constexpr (std::is_same_v<T, ScrollParams>) {
          j["a"] = p.a;
        } else {
          j["factors"] = p.factors;
          j["multidegree"] = p.multidegree;
        }
      },
      pair.params());
  return j;
}

}  // namespace polrig::io
