#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polarsweep/action.hpp"
#include "polarsweep/synthesis.hpp"

namespace polarsweep {

/// Thrown on malformed input files; messages carry line numbers.
struct parse_error : validation_error {
  using validation_error::validation_error;
};

/// Action file: `dim d`, optional `label ...`, then one `generator`
/// keyword per generator followed by d whitespace-separated rows.
/// Lines starting with # are comments.
LinearAction load_action_file(const std::string& path);

/// Profile file: `kind circle`, `center a b`, `radius r`,
/// `resolution m` key-value lines.
struct ProfileFileData {
  std::string kind;
  Vec center;
  double radius = 1.0;
  int resolution = 64;
};
ProfileFileData load_profile_file(const std::string& path);

/// Ordered key-value metadata; duplicate keys allowed (generator rows).
using KeyValueList = std::vector<std::pair<std::string, std::string>>;

std::string find_value(const KeyValueList& kv, const std::string& key);
bool has_key(const KeyValueList& kv, const std::string& key);

/// Write via temp file + rename so readers never see partial output.
void write_text_atomic(const std::string& path, const std::string& content);

/// Vertex cloud with polyline connectivity, ambient dimension in the
/// header (`dim d`, then `v x1 .. xd` and 1-based `l i j ...` lines).
struct MeshData {
  int dim = 0;
  Mat vertices;  // dim x N
  std::vector<std::vector<int>> lines;
};

/// Swept samples as a mesh: one polyline per group element chaining the
/// profile samples (curve profiles give closed rings).
MeshData mesh_from_swept(const SweptHypersurface& M, bool profile_closed);

void write_mesh_file(const std::string& path, const MeshData& mesh);
MeshData read_mesh_file(const std::string& path);

void write_metadata_file(const std::string& path, const KeyValueList& kv);
KeyValueList read_metadata_file(const std::string& path);

/// Everything cmd_verify needs to rebuild the check: the action and the
/// synthesis parameters, serialized alongside the mesh.
KeyValueList metadata_for_synthesis(const LinearAction& action,
                                    const ProfileFileData& profile,
                                    const std::string& mode, int k, int n,
                                    const SweptHypersurface& M,
                                    int equivariance_trials,
                                    std::uint64_t equivariance_seed);
LinearAction action_from_metadata(const KeyValueList& kv);

}  // namespace polarsweep
