#include "chanep/channel_io.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "chanep/errors.hpp"

namespace chanep {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open channel file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("channel file " + path + " is not valid JSON: " + e.what());
  }
  return j;
}

Complex read_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError("expected a [re, im] pair at " + where);
  return Complex(j[0].get<double>(), j[1].get<double>());
}

ordered_json write_complex(const Complex& z) {
  return ordered_json::array({z.real(), z.imag()});
}

Mat2 read_mat2(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    throw ValidationError("expected a 2x2 matrix at " + where);
  Mat2 m;
  for (int r = 0; r < 2; ++r) {
    if (!j[r].is_array() || j[r].size() != 2)
      throw ValidationError("expected a 2x2 matrix at " + where);
    for (int c = 0; c < 2; ++c)
      m(r, c) = read_complex(j[r][c], where + "[" + std::to_string(r) + "][" +
                                          std::to_string(c) + "]");
  }
  return m;
}

Mat4 read_mat4(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4)
    throw ValidationError("expected a 4x4 matrix at " + where);
  Mat4 m;
  for (int r = 0; r < 4; ++r) {
    if (!j[r].is_array() || j[r].size() != 4)
      throw ValidationError("expected a 4x4 matrix at " + where);
    for (int c = 0; c < 4; ++c)
      m(r, c) = read_complex(j[r][c], where + "[" + std::to_string(r) + "][" +
                                          std::to_string(c) + "]");
  }
  return m;
}

void require_absent(const json& j, const std::string& key, const std::string& repr) {
  if (j.contains(key))
    throw ValidationError("channel file with repr '" + repr +
                          "' must not contain key '" + key + "'");
}

void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write channel file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace

NamedChannel load_channel_json(const std::string& path) {
  const json j = load_json_file(path);
  if (!j.is_object()) throw ValidationError("channel file must hold a JSON object");
  if (!j.contains("name") || !j["name"].is_string())
    throw ValidationError("channel file is missing a string 'name'");
  if (!j.contains("repr") || !j["repr"].is_string())
    throw ValidationError("channel file is missing a string 'repr'");

  NamedChannel result;
  result.name = j["name"].get<std::string>();
  const std::string repr = j["repr"].get<std::string>();

  if (repr == "kraus") {
    require_absent(j, "shift", repr);
    require_absent(j, "distortion", repr);
    require_absent(j, "superop", repr);
    if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty())
      throw ValidationError("kraus repr requires a non-empty 'kraus' array");
    KrausSet kraus;
    for (std::size_t i = 0; i < j["kraus"].size(); ++i)
      kraus.push_back(read_mat2(j["kraus"][i], "kraus[" + std::to_string(i) + "]"));
    result.channel = kraus_to_superop(kraus);
  } else if (repr == "affine") {
    require_absent(j, "kraus", repr);
    require_absent(j, "superop", repr);
    if (!j.contains("shift") || !j.contains("distortion"))
      throw ValidationError("affine repr requires 'shift' and 'distortion'");
    const json& shift = j["shift"];
    if (!shift.is_array() || shift.size() != 3)
      throw ValidationError("'shift' must be a 3-vector");
    AffineRep a;
    for (int k = 0; k < 3; ++k) {
      if (!shift[k].is_number()) throw ValidationError("'shift' must be numeric");
      a.shift(k) = shift[k].get<double>();
    }
    const json& dist = j["distortion"];
    if (!dist.is_array() || dist.size() != 3)
      throw ValidationError("'distortion' must be a 3x3 matrix");
    for (int r = 0; r < 3; ++r) {
      if (!dist[r].is_array() || dist[r].size() != 3)
        throw ValidationError("'distortion' must be a 3x3 matrix");
      for (int c = 0; c < 3; ++c) {
        if (!dist[r][c].is_number())
          throw ValidationError("'distortion' must be numeric");
        a.distortion(r, c) = dist[r][c].get<double>();
      }
    }
    result.channel = affine_to_superop(a);
  } else if (repr == "superop") {
    require_absent(j, "kraus", repr);
    require_absent(j, "shift", repr);
    require_absent(j, "distortion", repr);
    if (!j.contains("superop"))
      throw ValidationError("superop repr requires a 'superop' matrix");
    result.channel = SuperOp{read_mat4(j["superop"], "superop")};
  } else {
    throw ValidationError("unknown repr '" + repr +
                          "' (expected kraus, affine, or superop)");
  }
  return result;
}

void save_channel_json_affine(const std::string& path, const std::string& name,
                              const SuperOp& s) {
  const AffineRep a = superop_to_affine(s);
  ordered_json j;
  j["name"] = name;
  j["repr"] = "affine";
  j["shift"] = ordered_json::array({a.shift(0), a.shift(1), a.shift(2)});
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < 3; ++r)
    rows.push_back(ordered_json::array(
        {a.distortion(r, 0), a.distortion(r, 1), a.distortion(r, 2)}));
  j["distortion"] = rows;
  write_json_file(path, j);
}

void save_channel_json_superop(const std::string& path, const std::string& name,
                               const SuperOp& s) {
  ordered_json j;
  j["name"] = name;
  j["repr"] = "superop";
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < 4; ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < 4; ++c) row.push_back(write_complex(s.m(r, c)));
    rows.push_back(row);
  }
  j["superop"] = rows;
  write_json_file(path, j);
}

void save_channel_json_kraus(const std::string& path, const std::string& name,
                             const KrausSet& kraus) {
  if (kraus.empty()) throw ValidationError("Kraus set is empty");
  ordered_json j;
  j["name"] = name;
  j["repr"] = "kraus";
  ordered_json ops = ordered_json::array();
  for (const Mat2& k : kraus) {
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < 2; ++r)
      rows.push_back(ordered_json::array(
          {write_complex(k(r, 0)), write_complex(k(r, 1))}));
    ops.push_back(rows);
  }
  j["kraus"] = ops;
  write_json_file(path, j);
}

SuperOp resolve_channel(const std::string& name_or_path) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(name_or_path, ec))
    return load_channel_json(name_or_path).channel;
  return builtin_channel(name_or_path);
}

}  // namespace chanep
