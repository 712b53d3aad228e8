// chanep — command-line front end for the channel exceptional-point library.
//
// Subcommands:
//   channels list / channels show   fixture catalogue and channel inspection
//   sweep                           eigenvalue curves of a two-channel mixture
//   ep-find                         degeneracy search on a segment or triple
//   phase-diagram                   barycentric phase grid with transition lines
//   decompose                       compile a channel into two template circuits
//   qpt                             synthetic tomography + likelihood fit
//
// Global flags (--tol, --format, --out, --seed, --config) are accepted by
// every subcommand; a JSON config file mirrors the flags, with explicit flags
// taking precedence. Exit codes: 0 success, 2 validation failure, 3
// precondition failure, 4 numerical non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "chanep/channel.hpp"
#include "chanep/channel_io.hpp"
#include "chanep/circuit.hpp"
#include "chanep/errors.hpp"
#include "chanep/linalg.hpp"
#include "chanep/simplex.hpp"
#include "chanep/spectral.hpp"
#include "chanep/tomography.hpp"
#include "chanep/version.hpp"

namespace {

using nlohmann::ordered_json;
using namespace chanep;

// ---------------------------------------------------------------------------
// Formatting helpers
// ---------------------------------------------------------------------------

std::string fmt17(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt15(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string fmt_complex15(const Complex& z) {
  const double im = z.imag();
  return fmt15(z.real()) + (std::signbit(im) ? "-" : "+") +
         fmt15(std::abs(im)) + "i";
}

ordered_json complex_json(const Complex& z) {
  return ordered_json::array({z.real(), z.imag()});
}

ordered_json vec3_json(const Vec3& v) {
  return ordered_json::array({v(0), v(1), v(2)});
}

ordered_json mat3_json(const Mat3& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < 3; ++r)
    rows.push_back(ordered_json::array({m(r, 0), m(r, 1), m(r, 2)}));
  return rows;
}

// ---------------------------------------------------------------------------
// Global options and the config-file overlay
// ---------------------------------------------------------------------------

struct GlobalOptions {
  double tol = 0.0;  // 0 means "use the command's own default"
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 0;
  std::string config_path;
};

double tol_or(const GlobalOptions& g, double fallback) {
  if (g.tol < 0.0) throw ValidationError("--tol must be positive");
  return g.tol > 0.0 ? g.tol : fallback;
}

// One config-file key: tied to the CLI option so that explicitly passed
// flags win over file values, and rendered back out for the resolved-config
// header every output carries.
struct ConfigEntry {
  std::string key;
  CLI::Option* opt = nullptr;
  std::function<void(const ordered_json&)> assign;
  std::function<ordered_json()> current;
};

using ConfigTable = std::vector<ConfigEntry>;

ConfigEntry entry_double(const std::string& key, CLI::Option* opt,
                         double* target) {
  return {key, opt,
          [key, target](const ordered_json& v) {
            if (!v.is_number())
              throw ValidationError("config key '" + key +
                                    "' must be a number");
            *target = v.get<double>();
          },
          [target] { return ordered_json(*target); }};
}

ConfigEntry entry_int(const std::string& key, CLI::Option* opt, int* target) {
  return {key, opt,
          [key, target](const ordered_json& v) {
            if (!v.is_number_integer())
              throw ValidationError("config key '" + key +
                                    "' must be an integer");
            *target = v.get<int>();
          },
          [target] { return ordered_json(*target); }};
}

ConfigEntry entry_uint64(const std::string& key, CLI::Option* opt,
                         std::uint64_t* target) {
  return {key, opt,
          [key, target](const ordered_json& v) {
            if (!v.is_number_unsigned() && !v.is_number_integer())
              throw ValidationError("config key '" + key +
                                    "' must be a nonnegative integer");
            if (v.is_number_integer() && v.get<std::int64_t>() < 0)
              throw ValidationError("config key '" + key +
                                    "' must be a nonnegative integer");
            *target = v.get<std::uint64_t>();
          },
          [target] { return ordered_json(*target); }};
}

ConfigEntry entry_string(const std::string& key, CLI::Option* opt,
                         std::string* target) {
  return {key, opt,
          [key, target](const ordered_json& v) {
            if (!v.is_string())
              throw ValidationError("config key '" + key +
                                    "' must be a string");
            *target = v.get<std::string>();
          },
          [target] { return ordered_json(*target); }};
}

ConfigEntry entry_bool(const std::string& key, CLI::Option* opt,
                       bool* target) {
  return {key, opt,
          [key, target](const ordered_json& v) {
            if (!v.is_boolean())
              throw ValidationError("config key '" + key +
                                    "' must be a boolean");
            *target = v.get<bool>();
          },
          [target] { return ordered_json(*target); }};
}

// Applies the config file to every entry whose flag was not given on the
// command line; unknown keys are rejected so typos cannot silently no-op.
void apply_config(const std::string& path, const ConfigTable& table) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("config file is not valid JSON: ") +
                          e.what());
  }
  if (!doc.is_object())
    throw ValidationError("config file must hold a JSON object");
  for (const auto& item : doc.items()) {
    const ConfigEntry* found = nullptr;
    for (const auto& entry : table)
      if (entry.key == item.key()) {
        found = &entry;
        break;
      }
    if (found == nullptr)
      throw ValidationError("config key '" + item.key() +
                            "' is not a flag of this command");
    if (found->opt != nullptr && found->opt->count() > 0) continue;
    found->assign(item.value());
  }
}

ordered_json resolved_config(const std::string& command,
                             const ConfigTable& table) {
  ordered_json config;
  config["command"] = command;
  for (const auto& entry : table) config[entry.key] = entry.current();
  return config;
}

void add_global_flags(CLI::App* cmd, GlobalOptions& g, ConfigTable& table) {
  auto* tol = cmd->add_option(
      "--tol", g.tol, "tolerance override (0 = the command's own default)");
  auto* format = cmd->add_option("--format", g.format,
                                 "output format for tables and reports")
                     ->check(CLI::IsMember({"csv", "json"}));
  auto* out = cmd->add_option(
      "--out", g.out,
      "output path (file; stem for phase-diagram, directory for decompose)");
  auto* seed =
      cmd->add_option("--seed", g.seed, "random seed, recorded in all output");
  cmd->add_option("--config", g.config_path,
                  "JSON file mirroring the flags (explicit flags win)");
  table.push_back(entry_double("tol", tol, &g.tol));
  table.push_back(entry_string("format", format, &g.format));
  table.push_back(entry_string("out", out, &g.out));
  table.push_back(entry_uint64("seed", seed, &g.seed));
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

// Writes to --out when given, stdout otherwise.
void emit(const GlobalOptions& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file)
    throw ValidationError("cannot open output file '" + g.out + "'");
  file << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot open output file '" + path + "'");
  file << text;
}

std::string csv_header(const ordered_json& config, std::uint64_t seed) {
  std::string head = "# chanep ";
  head += kVersion;
  head += "\n# config: " + config.dump() + "\n# seed: " +
          std::to_string(seed) + "\n";
  return head;
}

ordered_json json_document(const std::string& command,
                           const ordered_json& config, std::uint64_t seed) {
  ordered_json doc;
  doc["version"] = kVersion;
  doc["command"] = command;
  doc["config"] = config;
  doc["seed"] = seed;
  return doc;
}

// A channel reference is a file path when such a file exists, otherwise a
// builtin fixture name.
NamedChannel resolve_channel(const std::string& ref) {
  if (std::filesystem::exists(std::filesystem::path(ref)))
    return load_channel_json(ref);
  return NamedChannel{ref, builtin_channel(ref)};
}

// At the CLI boundary an unphysical channel is invalid input (exit 2), even
// though the library treats the same condition as a precondition violation
// deeper in.
void require_physical(const NamedChannel& named, double tol) {
  const CPTPReport report = check_cptp(named.channel, tol);
  if (report.is_cp && report.is_tp) return;
  throw ValidationError("channel '" + named.name +
                        "' is not CPTP (min Choi eigenvalue " +
                        fmt17(report.min_choi_eigenvalue) + ", TP residual " +
                        fmt17(report.tp_residual) + ")");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string current;
  for (char ch : text) {
    if (ch == ',') {
      items.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  items.push_back(current);
  return items;
}

constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                              {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

// Reorders `values` so that entry k sits nearest reference[k]; used for
// branch tracking along sweeps and for pairing estimates with theory.
std::array<Complex, 3> match_to_reference(
    const Vec3c& values, const std::array<Complex, 3>& reference) {
  double best = std::numeric_limits<double>::infinity();
  const int* chosen = kPerms[0];
  for (const auto& perm : kPerms) {
    double cost = 0.0;
    for (int k = 0; k < 3; ++k)
      cost += std::abs(values(perm[k]) - reference[static_cast<std::size_t>(k)]);
    if (cost < best) {
      best = cost;
      chosen = perm;
    }
  }
  return {values(chosen[0]), values(chosen[1]), values(chosen[2])};
}

ordered_json record_json(const EPRecord& record) {
  ordered_json j;
  j["params"] = record.params;
  j["coalesced_eigenvalue"] = complex_json(record.coalesced_eigenvalue);
  j["order"] = record.order;
  j["kind"] = ep_kind_name(record.kind);
  j["min_rigidity"] = record.min_rigidity;
  j["eigenvector_gap"] = record.eigenvector_gap;
  j["coalesced_eigenvector"] =
      ordered_json::array({complex_json(record.coalesced_eigenvector(0)),
                           complex_json(record.coalesced_eigenvector(1)),
                           complex_json(record.coalesced_eigenvector(2))});
  j["converged"] = record.converged;
  j["objective"] = record.objective;
  return j;
}

ordered_json cptp_json(const CPTPReport& report) {
  ordered_json j;
  j["is_cp"] = report.is_cp;
  j["is_tp"] = report.is_tp;
  j["min_choi_eigenvalue"] = report.min_choi_eigenvalue;
  j["tp_residual"] = report.tp_residual;
  return j;
}

ordered_json affine_channel_json(const std::string& name, const SuperOp& s) {
  const AffineRep a = superop_to_affine(s);
  ordered_json j;
  j["name"] = name;
  j["repr"] = "affine";
  j["shift"] = vec3_json(a.shift);
  j["distortion"] = mat3_json(a.distortion);
  return j;
}

// ---------------------------------------------------------------------------
// channels list / channels show
// ---------------------------------------------------------------------------

struct FixtureRow {
  const char* name;
  const char* description;
};

constexpr FixtureRow kFixtureRows[] = {
    {"identity", "leaves every state unchanged (distortion I, shift 0)"},
    {"E1",
     "half-strength rotation of the y-z coherence plane, x fully contracted"},
    {"E2", "axis-aligned contraction with distortion diag(0, 1/2, -1/2)"},
    {"E3", "unitary rotation by -pi/2 about the Bloch axis (1,1,1)/sqrt(3)"},
    {"reset", "sends every input to |0><0|"},
    {"depolarizing:<x>",
     "isotropic contraction of the Bloch ball by the factor 1-x"},
    {"rotation:<nx>,<ny>,<nz>:<angle>",
     "unitary rotation about the given Bloch axis (angle in radians)"},
};

int cmd_channels_list(const GlobalOptions& g, const ConfigTable& table) {
  const ordered_json config = resolved_config("channels-list", table);
  if (g.format == "json") {
    ordered_json doc = json_document("channels-list", config, g.seed);
    ordered_json rows = ordered_json::array();
    for (const auto& row : kFixtureRows) {
      ordered_json item;
      item["name"] = row.name;
      item["description"] = row.description;
      rows.push_back(item);
    }
    doc["channels"] = rows;
    emit(g, doc.dump(2) + "\n");
    return 0;
  }
  std::string text;
  for (const auto& row : kFixtureRows) {
    std::string line = row.name;
    if (line.size() < 34) line.append(34 - line.size(), ' ');
    text += line + row.description + "\n";
  }
  emit(g, text);
  return 0;
}

int cmd_channels_show(const GlobalOptions& g, const ConfigTable& table,
                      const std::string& ref) {
  const NamedChannel named = resolve_channel(ref);
  const AffineRep a = superop_to_affine(named.channel);
  const CPTPReport physical = check_cptp(named.channel, tol_or(g, kDefaultTol));
  const SpectrumReport report =
      spectrum(a.distortion, tol_or(g, kSpectralTol));
  const ordered_json config = resolved_config("channels-show", table);

  if (g.format == "json") {
    ordered_json doc = json_document("channels-show", config, g.seed);
    doc["channel"] = affine_channel_json(named.name, named.channel);
    doc["eigenvalues"] =
        ordered_json::array({complex_json(report.eigenvalues(0)),
                             complex_json(report.eigenvalues(1)),
                             complex_json(report.eigenvalues(2))});
    doc["phase"] = phase_name(report.phase);
    doc["rigidities"] = ordered_json::array(
        {report.rigidities(0), report.rigidities(1), report.rigidities(2)});
    doc["cptp"] = cptp_json(physical);
    emit(g, doc.dump(2) + "\n");
  } else {
    std::string text = "name: " + named.name + "\n";
    text += "shift: [" + fmt15(a.shift(0)) + " " + fmt15(a.shift(1)) + " " +
            fmt15(a.shift(2)) + "]\n";
    text += "distortion:\n";
    for (int r = 0; r < 3; ++r)
      text += "  [" + fmt15(a.distortion(r, 0)) + " " +
              fmt15(a.distortion(r, 1)) + " " + fmt15(a.distortion(r, 2)) +
              "]\n";
    text += "eigenvalues: " + fmt_complex15(report.eigenvalues(0)) + "  " +
            fmt_complex15(report.eigenvalues(1)) + "  " +
            fmt_complex15(report.eigenvalues(2)) + "\n";
    text += "phase: ";
    text += phase_name(report.phase);
    text += "\nrigidities: [" + fmt15(report.rigidities(0)) + " " +
            fmt15(report.rigidities(1)) + " " + fmt15(report.rigidities(2)) +
            "]\n";
    text += std::string("cptp: cp=") + (physical.is_cp ? "yes" : "no") +
            " tp=" + (physical.is_tp ? "yes" : "no") +
            " min_choi_eigenvalue=" + fmt15(physical.min_choi_eigenvalue) +
            " tp_residual=" + fmt15(physical.tp_residual) + "\n";
    emit(g, text);
  }
  return (physical.is_cp && physical.is_tp) ? 0 : 2;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepOptions {
  std::string pair = "E1,E2";
  int points = 101;
  bool tomography = false;
  int shots = 4096;
};

int cmd_sweep(const GlobalOptions& g, const ConfigTable& table,
              const SweepOptions& o) {
  if (o.points < 2) throw ValidationError("sweep requires at least 2 points");
  if (o.shots < 0) throw ValidationError("shot count must be nonnegative");
  const auto names = split_list(o.pair);
  if (names.size() != 2)
    throw ValidationError("--pair expects two comma-separated channels");
  const NamedChannel first = resolve_channel(names[0]);
  const NamedChannel second = resolve_channel(names[1]);
  const double cptp_tol = tol_or(g, kDefaultTol);
  require_physical(first, cptp_tol);
  require_physical(second, cptp_tol);
  const double tol = tol_or(g, kSpectralTol);
  const ordered_json config = resolved_config("sweep", table);

  struct Row {
    double p = 0.0;
    std::array<Complex, 3> eigenvalues{};
    Phase phase = Phase::KExact;
    double min_rigidity = 1.0;
    std::array<Complex, 3> estimate{};
    double fidelity = 0.0;
  };
  std::vector<Row> rows;
  rows.reserve(static_cast<std::size_t>(o.points));
  std::array<Complex, 3> previous{};
  for (int i = 0; i < o.points; ++i) {
    const double p = static_cast<double>(i) / (o.points - 1);
    const SuperOp s =
        mix({first.channel, second.channel}, {1.0 - p, p});
    const SpectrumReport report =
        spectrum(superop_to_affine(s).distortion, tol);
    Row row;
    row.p = p;
    if (i == 0)
      row.eigenvalues = {report.eigenvalues(0), report.eigenvalues(1),
                         report.eigenvalues(2)};
    else
      row.eigenvalues = match_to_reference(report.eigenvalues, previous);
    previous = row.eigenvalues;
    row.phase = report.phase;
    row.min_rigidity = report.rigidities.minCoeff();
    if (o.tomography) {
      const PipelineResult pipeline =
          full_pipeline(s, o.shots, g.seed + static_cast<std::uint64_t>(i));
      row.estimate = match_to_reference(pipeline.eigenvalues, row.eigenvalues);
      row.fidelity = pipeline.fidelity;
    }
    rows.push_back(row);
  }

  if (g.format == "json") {
    ordered_json doc = json_document("sweep", config, g.seed);
    ordered_json out_rows = ordered_json::array();
    for (const Row& row : rows) {
      ordered_json item;
      item["p"] = row.p;
      item["eigenvalues"] =
          ordered_json::array({complex_json(row.eigenvalues[0]),
                               complex_json(row.eigenvalues[1]),
                               complex_json(row.eigenvalues[2])});
      item["phase"] = phase_name(row.phase);
      item["min_rigidity"] = row.min_rigidity;
      if (o.tomography) {
        item["estimated_eigenvalues"] =
            ordered_json::array({complex_json(row.estimate[0]),
                                 complex_json(row.estimate[1]),
                                 complex_json(row.estimate[2])});
        item["fidelity"] = row.fidelity;
      }
      out_rows.push_back(item);
    }
    doc["rows"] = out_rows;
    emit(g, doc.dump(2) + "\n");
    return 0;
  }

  std::string text = csv_header(config, g.seed);
  text += "p,eig1_re,eig1_im,eig2_re,eig2_im,eig3_re,eig3_im,phase,min_rigidity";
  if (o.tomography)
    text += ",est1_re,est1_im,est2_re,est2_im,est3_re,est3_im,fidelity";
  text += "\n";
  for (const Row& row : rows) {
    text += fmt17(row.p);
    for (const Complex& z : row.eigenvalues)
      text += "," + fmt17(z.real()) + "," + fmt17(z.imag());
    text += std::string(",") + phase_name(row.phase) + "," +
            fmt17(row.min_rigidity);
    if (o.tomography) {
      for (const Complex& z : row.estimate)
        text += "," + fmt17(z.real()) + "," + fmt17(z.imag());
      text += "," + fmt17(row.fidelity);
    }
    text += "\n";
  }
  emit(g, text);
  return 0;
}

// ---------------------------------------------------------------------------
// ep-find
// ---------------------------------------------------------------------------

struct EpFindOptions {
  std::string pair;
  std::string triple;
};

int cmd_ep_find(const GlobalOptions& g, const ConfigTable& table,
                const EpFindOptions& o) {
  if (o.pair.empty() == o.triple.empty())
    throw ValidationError("ep-find requires exactly one of --pair/--triple");
  const ordered_json config = resolved_config("ep-find", table);
  const double cptp_tol = tol_or(g, kDefaultTol);
  EPRecord record;

  if (!o.pair.empty()) {
    const auto names = split_list(o.pair);
    if (names.size() != 2)
      throw ValidationError("--pair expects two comma-separated channels");
    const NamedChannel first = resolve_channel(names[0]);
    const NamedChannel second = resolve_channel(names[1]);
    require_physical(first, cptp_tol);
    require_physical(second, cptp_tol);
    const Mat3 da = superop_to_affine(first.channel).distortion;
    const Mat3 db = superop_to_affine(second.channel).distortion;
    record = ep_locate_1d(
        [&](double p) { return Mat3((1.0 - p) * da + p * db); }, 0.0, 1.0,
        tol_or(g, 1e-10));
  } else {
    const auto names = split_list(o.triple);
    if (names.size() != 3)
      throw ValidationError("--triple expects three comma-separated channels");
    ChannelTriple triple;
    for (int k = 0; k < 3; ++k) {
      const NamedChannel named = resolve_channel(names[static_cast<std::size_t>(k)]);
      require_physical(named, cptp_tol);
      triple[static_cast<std::size_t>(k)] = named.channel;
    }
    // Seed the interior search from the coarse-lattice point with the
    // smallest pairwise eigenvalue spread.
    const SimplexFamily family = make_simplex_family(triple);
    const int scan = 40;
    double best = std::numeric_limits<double>::infinity();
    SimplexPoint seed_point = simplex_point(1.0 / 3, 1.0 / 3, 1.0 / 3);
    for (int i = 1; i < scan; ++i) {
      for (int j = 1; j < scan - i; ++j) {
        const double a1 = static_cast<double>(i) / scan;
        const double a2 = static_cast<double>(j) / scan;
        const SimplexPoint p = simplex_point(a1, a2, 1.0 - a1 - a2);
        const Vec3c ev =
            spectrum(mixture_distortion(family, p)).eigenvalues;
        const double objective = std::norm(ev(0) - ev(1)) +
                                 std::norm(ev(0) - ev(2)) +
                                 std::norm(ev(1) - ev(2));
        if (objective < best) {
          best = objective;
          seed_point = p;
        }
      }
    }
    record = ep3_search(triple, seed_point);
  }

  ordered_json doc = json_document("ep-find", config, g.seed);
  doc["record"] = record_json(record);
  emit(g, doc.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// phase-diagram
// ---------------------------------------------------------------------------

struct PhaseDiagramOptions {
  std::string triple = "E1,E2,E3";
  int resolution = 200;
};

int cmd_phase_diagram(const GlobalOptions& g, const ConfigTable& table,
                      const PhaseDiagramOptions& o) {
  const auto names = split_list(o.triple);
  if (names.size() != 3)
    throw ValidationError("--triple expects three comma-separated channels");
  ChannelTriple triple;
  const double cptp_tol = tol_or(g, kDefaultTol);
  for (int k = 0; k < 3; ++k) {
    const NamedChannel named = resolve_channel(names[static_cast<std::size_t>(k)]);
    require_physical(named, cptp_tol);
    triple[static_cast<std::size_t>(k)] = named.channel;
  }
  const ordered_json config = resolved_config("phase-diagram", table);
  const PhaseDiagram diagram = phase_diagram(triple, o.resolution);

  ordered_json summary = json_document("phase-diagram", config, g.seed);
  summary["resolution"] = diagram.resolution;
  summary["cell_count"] = diagram.cells.size();
  ordered_json lines = ordered_json::array();
  for (const auto& line : diagram.ep_lines) {
    ordered_json points = ordered_json::array();
    for (const SimplexPoint& point : line) points.push_back(vec3_json(point.a));
    lines.push_back(points);
  }
  summary["ep_lines"] = lines;
  summary["ep3"] =
      diagram.ep3.has_value() ? record_json(*diagram.ep3) : ordered_json();

  std::string csv = csv_header(config, g.seed);
  csv += "a1,a2,a3,phase,min_rigidity\n";
  for (const PhaseCell& cell : diagram.cells) {
    csv += fmt17(cell.point.a(0)) + "," + fmt17(cell.point.a(1)) + "," +
           fmt17(cell.point.a(2)) + "," + phase_name(cell.phase) + "," +
           fmt17(cell.min_rigidity) + "\n";
  }

  if (!g.out.empty()) {
    const std::string csv_path = g.out + ".csv";
    const std::string json_path = g.out + ".json";
    summary["cells_file"] = csv_path;
    write_file(csv_path, csv);
    write_file(json_path, summary.dump(2) + "\n");
    std::cout << "wrote " << csv_path << " (" << diagram.cells.size()
              << " cells) and " << json_path << " (" << diagram.ep_lines.size()
              << " transition lines, ep3 "
              << (diagram.ep3.has_value() ? "found" : "not found") << ")\n";
    return 0;
  }

  ordered_json cells = ordered_json::array();
  for (const PhaseCell& cell : diagram.cells) {
    ordered_json item;
    item["a"] = vec3_json(cell.point.a);
    item["phase"] = phase_name(cell.phase);
    item["min_rigidity"] = cell.min_rigidity;
    cells.push_back(item);
  }
  summary["cells"] = cells;
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

int cmd_decompose(const GlobalOptions& g, const ConfigTable& table,
                  const std::string& ref) {
  const NamedChannel named = resolve_channel(ref);
  require_physical(named, kDefaultTol);
  const Decomposition result = decompose(named.channel, tol_or(g, 1e-8));
  const VerificationReport verification =
      verify_decomposition(named.channel, result);
  const std::string q1_text = circuit_to_text(result.q1);
  const std::string q2_text = circuit_to_text(result.q2);

  const ordered_json config = resolved_config("decompose", table);
  ordered_json doc = json_document("decompose", config, g.seed);
  doc["channel"] = named.name;
  doc["residual"] = result.residual;
  doc["verify_distance"] = verification.distance;
  doc["q1_cptp"] = cptp_json(verification.q1_cptp);
  doc["q2_cptp"] = cptp_json(verification.q2_cptp);
  doc["q1_circuit"] = q1_text;
  doc["q2_circuit"] = q2_text;
  if (!g.out.empty()) {
    std::filesystem::create_directories(g.out);
    const std::string q1_path =
        (std::filesystem::path(g.out) / "q1.txt").string();
    const std::string q2_path =
        (std::filesystem::path(g.out) / "q2.txt").string();
    write_file(q1_path, q1_text);
    write_file(q2_path, q2_text);
    ordered_json files;
    files["q1"] = q1_path;
    files["q2"] = q2_path;
    doc["files"] = files;
  }
  std::cout << doc.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// qpt
// ---------------------------------------------------------------------------

struct QptOptions {
  std::string channel;
  int shots = 4096;
  double noise = 0.0;
};

int cmd_qpt(const GlobalOptions& g, const ConfigTable& table,
            const QptOptions& o) {
  if (o.shots < 0) throw ValidationError("shot count must be nonnegative");
  if (o.noise < 0.0 || o.noise > 1.0)
    throw ValidationError("depolarizing noise strength must be in [0, 1]");
  const NamedChannel named = resolve_channel(o.channel);
  require_physical(named, tol_or(g, kDefaultTol));

  // Same steps as the library pipeline, but keeping the counts table so the
  // report can embed the raw data.
  SuperOp probed = named.channel;
  if (o.noise > 0.0)
    probed.m = depolarizing_channel(o.noise).m * named.channel.m;
  const CountsTable counts = o.shots == 0
                                 ? exact_experiment(probed)
                                 : simulate_experiment(probed, o.shots, g.seed);
  const ReconstructionResult reconstruction = mle_cptp_fit(counts);
  const double fidelity =
      process_fidelity(reconstruction.superop_estimate, named.channel);
  const SpectrumReport report = spectrum(
      superop_to_affine(reconstruction.superop_estimate).distortion,
      tol_or(g, kSpectralTol));
  const CPTPReport feasibility =
      check_cptp(reconstruction.superop_estimate, tol_or(g, kDefaultTol));

  const ordered_json config = resolved_config("qpt", table);
  ordered_json doc = json_document("qpt", config, g.seed);
  doc["channel"] = named.name;
  doc["fidelity"] = fidelity;
  doc["eigenvalues"] =
      ordered_json::array({complex_json(report.eigenvalues(0)),
                           complex_json(report.eigenvalues(1)),
                           complex_json(report.eigenvalues(2))});
  doc["phase"] = phase_name(report.phase);
  doc["iterations"] = reconstruction.iterations;
  doc["converged"] = reconstruction.converged;
  doc["neg_log_likelihood"] = reconstruction.neg_log_likelihood;
  doc["cptp"] = cptp_json(feasibility);
  doc["estimate"] =
      affine_channel_json(named.name + "-estimate",
                          reconstruction.superop_estimate);
  doc["counts"] = ordered_json::parse(counts_to_json(counts));
  emit(g, doc.dump(2) + "\n");
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{
      "chanep — exceptional points of single-qubit channels: spectra, phase "
      "diagrams, circuit decompositions, and synthetic tomography"};
  app.set_version_flag("--version", std::string("chanep ") + kVersion);
  app.require_subcommand(1);

  GlobalOptions g;
  std::map<const CLI::App*, ConfigTable> tables;

  // channels
  CLI::App* channels =
      app.add_subcommand("channels", "list or inspect channel fixtures");
  channels->require_subcommand(1);
  CLI::App* channels_list =
      channels->add_subcommand("list", "list the builtin fixtures");
  add_global_flags(channels_list, g, tables[channels_list]);
  CLI::App* channels_show = channels->add_subcommand(
      "show", "print a channel's affine form, spectrum, and CPTP report");
  std::string show_ref;
  channels_show->add_option("channel", show_ref, "fixture name or JSON file")
      ->required();
  add_global_flags(channels_show, g, tables[channels_show]);

  // sweep
  SweepOptions sweep_opts;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "eigenvalue curves of the mixture (1-p) A + p B over [0, 1]");
  {
    ConfigTable& table = tables[sweep];
    auto* pair = sweep->add_option("--pair", sweep_opts.pair,
                                   "the two channels, comma separated");
    auto* points =
        sweep->add_option("--points", sweep_opts.points, "number of p values");
    auto* tomography = sweep->add_flag(
        "--tomography", sweep_opts.tomography,
        "add per-point synthetic-tomography estimates and fidelities");
    auto* shots = sweep->add_option(
        "--shots", sweep_opts.shots,
        "shots per tomography setting (0 = exact probabilities)");
    table.push_back(entry_string("pair", pair, &sweep_opts.pair));
    table.push_back(entry_int("points", points, &sweep_opts.points));
    table.push_back(
        entry_bool("tomography", tomography, &sweep_opts.tomography));
    table.push_back(entry_int("shots", shots, &sweep_opts.shots));
    add_global_flags(sweep, g, table);
  }

  // ep-find
  EpFindOptions ep_opts;
  CLI::App* ep_find = app.add_subcommand(
      "ep-find", "locate the spectral degeneracy of a pair segment or a "
                 "channel triple (JSON record)");
  {
    ConfigTable& table = tables[ep_find];
    auto* pair = ep_find->add_option(
        "--pair", ep_opts.pair, "two channels: bisect the segment p in [0,1]");
    auto* triple = ep_find->add_option(
        "--triple", ep_opts.triple,
        "three channels: search the simplex interior for a triple degeneracy");
    table.push_back(entry_string("pair", pair, &ep_opts.pair));
    table.push_back(entry_string("triple", triple, &ep_opts.triple));
    add_global_flags(ep_find, g, table);
  }

  // phase-diagram
  PhaseDiagramOptions diagram_opts;
  CLI::App* diagram = app.add_subcommand(
      "phase-diagram",
      "barycentric phase grid with refined transition lines (--out stem "
      "writes stem.csv + stem.json)");
  {
    ConfigTable& table = tables[diagram];
    auto* triple = diagram->add_option("--triple", diagram_opts.triple,
                                       "the three channels, comma separated");
    auto* resolution = diagram->add_option(
        "--resolution", diagram_opts.resolution, "lattice subdivisions");
    table.push_back(entry_string("triple", triple, &diagram_opts.triple));
    table.push_back(
        entry_int("resolution", resolution, &diagram_opts.resolution));
    add_global_flags(diagram, g, table);
  }

  // decompose
  std::string decompose_ref;
  CLI::App* decompose_cmd = app.add_subcommand(
      "decompose", "compile a channel into two template circuits whose "
                   "average reproduces it (--out DIR writes circuit files)");
  decompose_cmd
      ->add_option("channel", decompose_ref, "fixture name or JSON file")
      ->required();
  add_global_flags(decompose_cmd, g, tables[decompose_cmd]);

  // qpt
  QptOptions qpt_opts;
  CLI::App* qpt = app.add_subcommand(
      "qpt", "sample synthetic tomography data and fit a physical channel "
             "estimate (JSON report)");
  {
    ConfigTable& table = tables[qpt];
    qpt->add_option("channel", qpt_opts.channel, "fixture name or JSON file")
        ->required();
    auto* shots = qpt->add_option(
        "--shots", qpt_opts.shots,
        "shots per setting (0 = exact probabilities)");
    auto* noise = qpt->add_option(
        "--noise", qpt_opts.noise,
        "extra depolarizing noise applied before sampling");
    table.push_back(entry_int("shots", shots, &qpt_opts.shots));
    table.push_back(entry_double("noise", noise, &qpt_opts.noise));
    add_global_flags(qpt, g, table);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // command-line misuse is a validation failure
  }

  try {
    const CLI::App* leaf = nullptr;
    int code = 0;
    if (channels_list->parsed()) {
      leaf = channels_list;
      apply_config(g.config_path, tables.at(leaf));
      code = cmd_channels_list(g, tables.at(leaf));
    } else if (channels_show->parsed()) {
      leaf = channels_show;
      apply_config(g.config_path, tables.at(leaf));
      code = cmd_channels_show(g, tables.at(leaf), show_ref);
    } else if (sweep->parsed()) {
      leaf = sweep;
      apply_config(g.config_path, tables.at(leaf));
      code = cmd_sweep(g, tables.at(leaf), sweep_opts);
    } else if (ep_find->parsed()) {
      leaf = ep_find;
      apply_config(g.config_path, tables.at(leaf));
      code = cmd_ep_find(g, tables.at(leaf), ep_opts);
    } else if (diagram->parsed()) {
      leaf = diagram;
      apply_config(g.config_path, tables.at(leaf));
      code = cmd_phase_diagram(g, tables.at(leaf), diagram_opts);
    } else if (decompose_cmd->parsed()) {
      leaf = decompose_cmd;
      apply_config(g.config_path, tables.at(leaf));
      code = cmd_decompose(g, tables.at(leaf), decompose_ref);
    } else if (qpt->parsed()) {
      leaf = qpt;
      apply_config(g.config_path, tables.at(leaf));
      code = cmd_qpt(g, tables.at(leaf), qpt_opts);
    }
    return code;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return 3;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return 4;
  }
}
