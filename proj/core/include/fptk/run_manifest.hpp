#ifndef FPTK_RUN_MANIFEST_HPP
#define FPTK_RUN_MANIFEST_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fptk::cli {

/// Everything needed to reproduce a run bit-exactly. Wall time and worker
/// count are execution details: they are reported on stderr but never
/// embedded in output artifacts, otherwise a rerun could not be
/// byte-identical.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::uint64_t seed = 0;
  std::string toolkit_version;
  double wall_time_s = 0.0;  ///< transient, not serialized
  /// Canonical argument vector (without --output/--workers) that replays
  /// the run through the same CLI.
  std::vector<std::string> argv;
};

/// Fixed-format double with 12 significant digits ("%.12g").
std::string format_double(double value);

/// Stable single-line JSON (ordered keys, no wall time).
std::string to_json_string(const RunManifest& manifest);

RunManifest parse_manifest_json(const std::string& json_text);

/// Recovers the manifest from an artifact produced by the CLI: either a
/// JSON document with a "manifest" field or a tabular file carrying a
/// "# manifest: {...}" header line. Throws DomainError when none is found.
RunManifest manifest_from_artifact(const std::string& file_contents);

}  // namespace fptk::cli

#endif  // FPTK_RUN_MANIFEST_HPP
