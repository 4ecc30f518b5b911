#include "polarsweep/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace polarsweep {

namespace {

std::vector<std::pair<int, std::string>> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path + ": cannot open");
  std::vector<std::pair<int, std::string>> out;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream probe(line);
    std::string tok;
    if (probe >> tok) out.emplace_back(no, line);
  }
  return out;
}

[[noreturn]] void fail(const std::string& path, int line,
                       const std::string& msg) {
  throw parse_error(path + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

LinearAction load_action_file(const std::string& path) {
  auto lines = read_lines(path);
  int dim = 0;
  std::string label;
  std::vector<Mat> generators;
  size_t i = 0;
  while (i < lines.size()) {
    auto [no, text] = lines[i];
    std::istringstream ss(text);
    std::string key;
    ss >> key;
    if (key == "dim") {
      if (!(ss >> dim) || dim < 1) fail(path, no, "expected positive dimension");
      ++i;
    } else if (key == "label") {
      std::getline(ss, label);
      label.erase(0, label.find_first_not_of(" \t"));
      ++i;
    } else if (key == "generator") {
      if (dim == 0) fail(path, no, "generator before dim");
      Mat A(dim, dim);
      for (int r = 0; r < dim; ++r) {
        if (++i >= lines.size())
          fail(path, no, "generator needs " + std::to_string(dim) + " rows");
        auto [rno, row] = lines[i];
        std::istringstream rs(row);
        for (int c = 0; c < dim; ++c)
          if (!(rs >> A(r, c)))
            fail(path, rno, "expected " + std::to_string(dim) + " entries");
        double extra;
        if (rs >> extra) fail(path, rno, "too many entries in row");
      }
      generators.push_back(A);
      ++i;
    } else {
      fail(path, no, "unknown keyword '" + key + "'");
    }
  }
  if (dim == 0) fail(path, 1, "missing dim");
  if (generators.empty()) fail(path, 1, "no generators");
  return LinearAction(dim, std::move(generators), label);
}

ProfileFileData load_profile_file(const std::string& path) {
  ProfileFileData data;
  for (auto& [no, text] : read_lines(path)) {
    std::istringstream ss(text);
    std::string key;
    ss >> key;
    if (key == "kind") {
      ss >> data.kind;
    } else if (key == "center") {
      std::vector<double> vals;
      double v;
      while (ss >> v) vals.push_back(v);
      if (vals.empty()) fail(path, no, "center needs coordinates");
      data.center = Eigen::Map<Vec>(vals.data(), vals.size());
    } else if (key == "radius") {
      if (!(ss >> data.radius) || data.radius <= 0)
        fail(path, no, "radius must be positive");
    } else if (key == "resolution") {
      if (!(ss >> data.resolution) || data.resolution < 3)
        fail(path, no, "resolution must be at least 3");
    } else {
      fail(path, no, "unknown keyword '" + key + "'");
    }
  }
  if (data.kind != "circle")
    throw parse_error(path + ": unsupported profile kind '" + data.kind + "'");
  if (data.center.size() != 2)
    throw parse_error(path + ": circle center needs 2 coordinates");
  return data;
}

std::string find_value(const KeyValueList& kv, const std::string& key) {
  for (const auto& [k, v] : kv)
    if (k == key) return v;
  throw parse_error("metadata: missing key '" + key + "'");
}

bool has_key(const KeyValueList& kv, const std::string& key) {
  for (const auto& [k, v] : kv)
    if (k == key) return true;
  return false;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw validation_error(tmp + ": cannot open for writing");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

MeshData mesh_from_swept(const SweptHypersurface& M, bool profile_closed) {
  MeshData mesh;
  mesh.dim = M.action.ambient_dim();
  mesh.vertices = M.points;
  const int P = M.profile_count;
  const int groups = M.num_samples() / std::max(1, P);
  for (int g = 0; g < groups; ++g) {
    std::vector<int> ring;
    for (int p = 0; p < P; ++p) ring.push_back(g * P + p + 1);
    if (profile_closed) ring.push_back(g * P + 1);
    mesh.lines.push_back(std::move(ring));
  }
  return mesh;
}

void write_mesh_file(const std::string& path, const MeshData& mesh) {
  std::ostringstream out;
  out.precision(17);
  out << "dim " << mesh.dim << "\n";
  for (int i = 0; i < mesh.vertices.cols(); ++i) {
    out << "v";
    for (int r = 0; r < mesh.dim; ++r) out << " " << mesh.vertices(r, i);
    out << "\n";
  }
  for (const auto& line : mesh.lines) {
    out << "l";
    for (int idx : line) out << " " << idx;
    out << "\n";
  }
  write_text_atomic(path, out.str());
}

MeshData read_mesh_file(const std::string& path) {
  MeshData mesh;
  std::vector<Vec> verts;
  for (auto& [no, text] : read_lines(path)) {
    std::istringstream ss(text);
    std::string key;
    ss >> key;
    if (key == "dim") {
      if (!(ss >> mesh.dim) || mesh.dim < 1)
        fail(path, no, "expected positive dimension");
    } else if (key == "v") {
      if (mesh.dim == 0) fail(path, no, "vertex before dim header");
      Vec v(mesh.dim);
      for (int r = 0; r < mesh.dim; ++r)
        if (!(ss >> v[r])) fail(path, no, "vertex needs dim coordinates");
      verts.push_back(v);
    } else if (key == "l") {
      std::vector<int> line;
      int idx;
      while (ss >> idx) line.push_back(idx);
      if (line.size() < 2) fail(path, no, "polyline needs two indices");
      mesh.lines.push_back(std::move(line));
    } else {
      fail(path, no, "unknown keyword '" + key + "'");
    }
  }
  if (mesh.dim == 0) fail(path, 1, "missing dim header");
  mesh.vertices.resize(mesh.dim, static_cast<int>(verts.size()));
  for (size_t i = 0; i < verts.size(); ++i)
    mesh.vertices.col(static_cast<int>(i)) = verts[i];
  for (const auto& line : mesh.lines)
    for (int idx : line)
      if (idx < 1 || idx > static_cast<int>(verts.size()))
        throw parse_error(path + ": polyline index out of range");
  return mesh;
}

void write_metadata_file(const std::string& path, const KeyValueList& kv) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& [k, v] : kv) out << k << " " << v << "\n";
  write_text_atomic(path, out.str());
}

KeyValueList read_metadata_file(const std::string& path) {
  KeyValueList kv;
  for (auto& [no, text] : read_lines(path)) {
    std::istringstream ss(text);
    std::string key;
    ss >> key;
    std::string value;
    std::getline(ss, value);
    value.erase(0, value.find_first_not_of(" \t"));
    kv.emplace_back(key, value);
  }
  return kv;
}

KeyValueList metadata_for_synthesis(const LinearAction& action,
                                    const ProfileFileData& profile,
                                    const std::string& mode, int k, int n,
                                    const SweptHypersurface& M,
                                    int equivariance_trials,
                                    std::uint64_t equivariance_seed) {
  KeyValueList kv;
  auto num = [](double x) {
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
  };
  kv.emplace_back("dim", std::to_string(action.ambient_dim()));
  kv.emplace_back("mode", mode);
  kv.emplace_back("k", std::to_string(k));
  kv.emplace_back("n", std::to_string(n));
  kv.emplace_back("profile_kind", profile.kind);
  kv.emplace_back("profile_center",
                  num(profile.center[0]) + " " + num(profile.center[1]));
  kv.emplace_back("profile_radius", num(profile.radius));
  kv.emplace_back("profile_resolution", std::to_string(profile.resolution));
  kv.emplace_back("seed", std::to_string(M.seed));
  kv.emplace_back("group_count",
                  std::to_string(static_cast<int>(M.group_elements.size())));
  kv.emplace_back("profile_count", std::to_string(M.profile_count));
  kv.emplace_back("resolution_estimate", num(M.resolution_estimate));
  kv.emplace_back("equivariance_trials", std::to_string(equivariance_trials));
  kv.emplace_back("equivariance_seed", std::to_string(equivariance_seed));
  kv.emplace_back("equivariance_threshold", num(2.0 * M.resolution_estimate));
  if (!action.label().empty()) kv.emplace_back("label", action.label());
  for (const Mat& A : action.generators()) {
    std::ostringstream row;
    row.precision(17);
    for (int r = 0; r < A.rows(); ++r)
      for (int c = 0; c < A.cols(); ++c)
        row << (r + c ? " " : "") << A(r, c);
    kv.emplace_back("generator", row.str());
  }
  return kv;
}

LinearAction action_from_metadata(const KeyValueList& kv) {
  int dim = std::stoi(find_value(kv, "dim"));
  std::string label;
  if (has_key(kv, "label")) label = find_value(kv, "label");
  std::vector<Mat> gens;
  for (const auto& [k, v] : kv) {
    if (k != "generator") continue;
    Mat A(dim, dim);
    std::istringstream ss(v);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c)
        if (!(ss >> A(r, c)))
          throw parse_error("metadata: generator row has too few entries");
    gens.push_back(A);
  }
  if (gens.empty()) throw parse_error("metadata: no generator entries");
  return LinearAction(dim, std::move(gens), label);
}

}  // namespace polarsweep
