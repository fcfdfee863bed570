#pragma once

// JSON manifests: one object or an array of objects, each naming a family
// and its integer parameters, e.g.
//   {"family": "scroll", "a": [1, 2]}
//   {"family": "product", "factors": [1, 1], "multidegree": [1, 1]}

#include "polrig/catalog.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace polrig::io {

/// Unreadable file, malformed JSON, or an entry that does not map to a valid pair.
class ManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PolarizedPair parse_pair(const nlohmann::json& entry);
std::vector<PolarizedPair> parse_manifest(const nlohmann::json& doc);
std::vector<PolarizedPair> parse_manifest_text(const std::string& text);
std::vector<PolarizedPair> read_manifest(const std::filesystem::path& path);

/// Canonical manifest entry; parse_pair(to_manifest(p)) == p.
nlohmann::json to_manifest(const PolarizedPair& pair);

}  // namespace polrig::io
