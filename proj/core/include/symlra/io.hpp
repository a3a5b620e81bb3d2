#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "symlra/decomposition.hpp"

namespace symlra::io {

/// Malformed or inconsistent JSON input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

/// {"n", "m", "format": "compact", "entries": [{"alpha", "re", "im"}, ...]};
/// with full = true, {"index": [1-based], "re", "im"} over every nonzero tuple.
nlohmann::json tensor_to_json(const SymTensor& f, bool full = false);
/// Omitted entries are zero; unknown top-level keys are ignored.
SymTensor tensor_from_json(const nlohmann::json& j);

/// {"n", "m", "rank", "vectors": [[{"re", "im"}, ...], ...]}
nlohmann::json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
SymTensor read_tensor_file(const std::filesystem::path& path);

}  // namespace symlra::io
