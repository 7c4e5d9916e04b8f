#pragma once

// Scenario files, trajectory tables and their CSV / JSON emitters.
//
// Scenario schema (JSON, matrices as row-major nested arrays):
//
//   {
//     "name": "rotation",
//     "n_modes": 1,
//     "generator": [
//       {"kind": "rotation", "rate": 1.0, "modes": [1]},
//       {"kind": "squeezing", "variant": "x", "rate": 0.5},
//       {"raw": {"A": [[...]], "b": [...], "C": [[...]]}}
//     ],
//     "initial_state": "coherent(1,0)",
//     "t_max": 6.283185307179586,
//     "steps": 100,
//     "auto_noise": false
//   }
//
// initial_state is one of
//   * a string: "vacuum", "thermal(nu)", "coherent(q,p)", "squeezed(s_qq,s_pp)"
//     (coherent/squeezed only for n_modes = 1),
//   * an array with one such string per mode (direct sum),
//   * an object {"mean": [...], "cov": [[...]]}.

#include "gaussdyn/analysis.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace gaussdyn {

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  std::string name;
  int n_modes;
  Generator generator;
  GaussianState initial_state;
  double t_max;
  int steps;
  bool auto_noise;
  std::string source_json;  // canonical dump of the parsed file, echoed by the JSON emitter
};

/// Throws ScenarioError with the offending path (and byte offset for parse errors).
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const std::string& json_text, const std::string& origin = "<string>");

/// Parses a standard-state spec such as "thermal(2)" on the given space.
GaussianState parse_state_spec(const std::string& spec, const SymplecticSpace& space);

struct EllipseSection {
  int i;  // 1-based coordinate indices, i < j
  int j;
  double cx;
  double cy;
  double semi_major;  // sqrt of the larger eigenvalue of the 2x2 sub-covariance
  double semi_minor;
  double theta;       // major-axis angle from coordinate i, in (-pi/2, pi/2]
};

/// nan semi-axes when the sub-covariance has a negative eigenvalue.
EllipseSection ellipse_section(const GaussianState& s, int i, int j);

struct TrajectoryRow {
  double t;
  Vector mean;
  Matrix cov;
  double purity;  // nan when det(cov) <= 0
  double volume;  // nan when det(cov) <= 0
  double energy;
  double min_eig;  // smallest eigenvalue of cov - i Omega
  bool valid;
  std::vector<EllipseSection> sections;
};

struct TrajectoryMetadata {
  std::string method;  // "exact" or "rk4"
  double t_max;
  int steps;
  bool auto_noise;
  double added_noise;
  CPReport cp;
  SymplecticReport symplectic;
  double trace_omega_a;
  double validity_tol;  // negative: per-row relative default
  bool all_rows_valid;
};

struct TrajectoryTable {
  std::string name;
  int n_modes;
  TrajectoryMetadata metadata;
  std::vector<TrajectoryRow> rows;
  std::string source_json;
};

/// Resolved generator actually used for the run (auto_noise applied).
Generator effective_generator(const Scenario& s, double* added_noise = nullptr);

/// Row k is apply_channel(solve_channel(g, t_k), s0) with t_k = k t_max / steps.
/// A non-positive validity_tol selects the relative default per row.
TrajectoryTable run_trajectory(const Scenario& s, double validity_tol = -1.0);

/// Same sampling, but each interval is advanced by `substeps` RK4 steps
/// from the previous row.
TrajectoryTable run_trajectory_oracle(const Scenario& s, int substeps, double validity_tol = -1.0);

TrajectoryRow make_row(double t, const GaussianState& state, double validity_tol);

enum class TableFormat { csv, json };

TableFormat table_format_from_string(const std::string& name);

std::vector<std::string> csv_columns(int n_modes);
void write_csv(const TrajectoryTable& table, std::ostream& out);
void write_json(const TrajectoryTable& table, std::ostream& out);

/// Throws ScenarioError naming the path on I/O failure.
void emit(const TrajectoryTable& table, TableFormat format, const std::filesystem::path& path);

/// Inverse of write_json for the row data and the metadata.
TrajectoryTable parse_table_json(const std::string& json_text);

/// Round-trip formatting used by all emitters (17 significant digits).
std::string format_double(double x);

}  // namespace gaussdyn
