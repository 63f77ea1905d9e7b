#pragma once

#include "bekk/model.hpp"
#include "bekk/simulate.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace bekk {

inline constexpr const char* kToolVersion = "0.1.0";

/// Model spec file:
///   {"d": int, "l": int, "A": [[[...rows...]], ...], "C": [[...]], "A0": [[...]] | null}
/// Malformed JSON reports line/column; schema errors report the JSON pointer.
/// The result is validated.
[[nodiscard]] ModelSpec parse_spec(std::string_view text);
[[nodiscard]] ModelSpec load_spec(const std::filesystem::path& file);

[[nodiscard]] nlohmann::json spec_to_json(const ModelSpec& spec);
[[nodiscard]] nlohmann::json matrix_to_json(const Matrix& m);

/// 16 hex digits of FNV-1a over the canonical JSON serialization.
[[nodiscard]] std::string spec_digest(const ModelSpec& spec);

/// Writes via a temporary sibling file and rename.
void write_file_atomic(const std::filesystem::path& file, std::string_view contents);
[[nodiscard]] std::string read_file(const std::filesystem::path& file);

/// CSV with header `t,x1,...,xd`, t counting retained steps from 1, values at
/// 17 significant digits.
[[nodiscard]] std::string path_to_csv(const PathSample& path);
[[nodiscard]] PathSample path_from_csv(std::string_view text);

[[nodiscard]] nlohmann::json path_metadata(const PathSample& path);

/// Sidecar location for a path CSV: `<file>.meta.json`.
[[nodiscard]] std::filesystem::path sidecar_path(const std::filesystem::path& csv);

/// Reads a path CSV and, when present, its sidecar metadata.
[[nodiscard]] PathSample load_path(const std::filesystem::path& csv);

}  // namespace bekk
