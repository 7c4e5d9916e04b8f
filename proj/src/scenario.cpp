#include "gaussdyn/scenario.hpp"

#include "gaussdyn/catalog.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <regex>
#include <sstream>

namespace gaussdyn {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ScenarioError(origin + ": " + what);
}

double as_number(const json& j, const std::string& origin, const std::string& key) {
  if (!j.is_number()) fail(origin, "'" + key + "' must be a number");
  return j.get<double>();
}

Vector as_vector(const json& j, const std::string& origin, const std::string& key) {
  if (!j.is_array()) fail(origin, "'" + key + "' must be an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = as_number(j[i], origin, key);
  }
  return v;
}

Matrix as_matrix(const json& j, const std::string& origin, const std::string& key) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    fail(origin, "'" + key + "' must be a row-major nested array");
  }
  const auto rows = j.size();
  const auto cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) fail(origin, "'" + key + "' has ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          as_number(j[r][c], origin, key);
    }
  }
  return m;
}

std::vector<double> parse_args(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad numeric argument '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw std::invalid_argument("bad numeric argument '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

Generator resolve_term(const json& term, const SymplecticSpace& space, const std::string& origin) {
  if (!term.is_object()) fail(origin, "generator terms must be objects");
  if (term.contains("raw")) {
    const json& raw = term["raw"];
    const auto dim = space.dim();
    Matrix a = raw.contains("A") ? as_matrix(raw["A"], origin, "A") : Matrix::Zero(dim, dim);
    Vector b = raw.contains("b") ? as_vector(raw["b"], origin, "b") : Vector::Zero(dim);
    Matrix c = raw.contains("C") ? as_matrix(raw["C"], origin, "C") : Matrix::Zero(dim, dim);
    return Generator(space, a, b, c);
  }
  if (!term.contains("kind") || !term["kind"].is_string()) {
    fail(origin, "generator term needs 'kind' or 'raw'");
  }
  std::string name = term["kind"].get<std::string>();
  if (term.contains("variant")) name += "_" + term["variant"].get<std::string>();
  KindSelector sel{};
  try {
    sel = parse_kind(name);
  } catch (const std::invalid_argument& e) {
    fail(origin, e.what());
  }
  const CatalogEntry& entry = catalog_entry(sel.kind);

  double rate = 1.0;
  if (term.contains("rate")) {
    rate = as_number(term["rate"], origin, "rate");
  } else if (term.contains(entry.parameter)) {
    rate = as_number(term[entry.parameter], origin, entry.parameter);
  }

  std::vector<int> modes;
  if (term.contains("modes")) {
    if (!term["modes"].is_array()) fail(origin, "'modes' must be an array");
    for (const auto& m : term["modes"]) {
      if (!m.is_number_integer()) fail(origin, "'modes' entries must be integers");
      modes.push_back(m.get<int>());
    }
  } else {
    for (int k = 1; k <= entry.modes; ++k) modes.push_back(k);
  }
  return named_generator(sel.kind, sel.variant, rate, modes, space);
}

GaussianState resolve_state(const json& spec, const SymplecticSpace& space,
                            const std::string& origin) {
  if (spec.is_string()) return parse_state_spec(spec.get<std::string>(), space);
  if (spec.is_array()) {
    if (static_cast<int>(spec.size()) != space.n_modes()) {
      fail(origin, "initial_state lists " + std::to_string(spec.size()) + " modes, expected " +
                       std::to_string(space.n_modes()));
    }
    const SymplecticSpace one(1, space.ordering());
    std::optional<GaussianState> acc;
    for (const auto& item : spec) {
      if (!item.is_string()) fail(origin, "per-mode initial_state entries must be strings");
      GaussianState s = parse_state_spec(item.get<std::string>(), one);
      acc = acc ? compose_states(*acc, s) : s;
    }
    return *acc;
  }
  if (spec.is_object()) {
    if (!spec.contains("mean") || !spec.contains("cov")) {
      fail(origin, "raw initial_state needs 'mean' and 'cov'");
    }
    return GaussianState(space, as_vector(spec["mean"], origin, "mean"),
                         as_matrix(spec["cov"], origin, "cov"));
  }
  fail(origin, "initial_state must be a string, an array of strings or {mean, cov}");
}

}  // namespace

GaussianState parse_state_spec(const std::string& spec, const SymplecticSpace& space) {
  static const std::regex pattern(R"(^\s*([a-z_]+)\s*(?:\(([^()]*)\))?\s*$)");
  std::smatch m;
  if (!std::regex_match(spec, m, pattern)) {
    throw std::invalid_argument("unrecognized state spec '" + spec + "'");
  }
  const std::string kind = m[1];
  const std::vector<double> args = m[2].matched ? parse_args(m[2]) : std::vector<double>{};
  auto want = [&](std::size_t n) {
    if (args.size() != n) {
      throw std::invalid_argument("state '" + kind + "' takes " + std::to_string(n) +
                                  " argument(s)");
    }
  };
  if (kind == "vacuum") {
    want(0);
    return vacuum_state(space);
  }
  if (kind == "thermal") {
    want(1);
    return thermal_state(args[0], space);
  }
  if (kind == "coherent") {
    want(2);
    return coherent_state(args[0], args[1], space);
  }
  if (kind == "squeezed") {
    want(2);
    return squeezed_state(args[0], args[1], space);
  }
  throw std::invalid_argument("unknown state kind '" + kind + "'");
}

Scenario parse_scenario(const std::string& json_text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(origin, "parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) fail(origin, "top level must be an object");

  try {
    const std::string name = doc.value("name", std::string("unnamed"));
    if (!doc.contains("n_modes") || !doc["n_modes"].is_number_integer() ||
        doc["n_modes"].get<int>() < 1) {
      fail(origin, "'n_modes' must be a positive integer");
    }
    const SymplecticSpace space(doc["n_modes"].get<int>());

    Generator g = Generator::zero(space);
    if (doc.contains("generator")) {
      const json& terms = doc["generator"];
      if (terms.is_array()) {
        for (const auto& term : terms) g = g + resolve_term(term, space, origin);
      } else {
        g = resolve_term(terms, space, origin);
      }
    }

    if (!doc.contains("initial_state")) fail(origin, "missing 'initial_state'");
    GaussianState s0 = resolve_state(doc["initial_state"], space, origin);
    const ValidityReport vr = validate_state(s0);
    if (!vr.valid) {
      fail(origin, "initial state: uncertainty violation (min eigenvalue " +
                       format_double(vr.min_eig) + ")");
    }

    if (!doc.contains("t_max")) fail(origin, "missing 't_max'");
    const double t_max = as_number(doc["t_max"], origin, "t_max");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) fail(origin, "'t_max' must be positive");
    const int steps = doc.value("steps", 100);
    if (steps < 1) fail(origin, "'steps' must be >= 1");
    const bool auto_noise = doc.value("auto_noise", false);

    return Scenario{name, space.n_modes(), g, s0, t_max, steps, auto_noise, doc.dump()};
  } catch (const ScenarioError&) {
    throw;
  } catch (const json::exception& e) {
    fail(origin, e.what());
  } catch (const std::exception& e) {
    fail(origin, e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path.string() + ": cannot open scenario file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

EllipseSection ellipse_section(const GaussianState& s, int i, int j) {
  const int dim = static_cast<int>(s.space().dim());
  if (i < 1 || j <= i || j > dim) {
    throw std::invalid_argument("ellipse_section: need 1 <= i < j <= " + std::to_string(dim));
  }
  const double a = s.cov()(i - 1, i - 1);
  const double c = s.cov()(j - 1, j - 1);
  const double b = s.cov()(i - 1, j - 1);
  const double mid = 0.5 * (a + c);
  const double rad = std::hypot(0.5 * (a - c), b);
  const double lmax = mid + rad;
  const double lmin = mid - rad;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  // A circular section has no major axis; report 0 instead of rounding noise.
  double theta = rad > 1e-14 * std::abs(mid) ? 0.5 * std::atan2(2.0 * b, a - c) : 0.0;
  if (theta <= -std::numbers::pi / 2) theta += std::numbers::pi;
  if (theta == 0.0) theta = 0.0;  // drop the sign of -0

  return EllipseSection{i,
                        j,
                        s.mean()(i - 1),
                        s.mean()(j - 1),
                        lmax >= 0.0 ? std::sqrt(lmax) : nan,
                        lmin >= 0.0 ? std::sqrt(lmin) : nan,
                        theta};
}

TrajectoryRow make_row(double t, const GaussianState& state, double validity_tol) {
  TrajectoryRow row;
  row.t = t;
  row.mean = state.mean();
  row.cov = state.cov();
  const double det = state.cov().determinant();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.purity = det > 0.0 ? 1.0 / det : nan;
  row.volume = det > 0.0 ? std::sqrt(det) : nan;
  row.energy = mean_energy(state.mean(), state.cov());
  const ValidityReport vr =
      validate_state(state, validity_tol > 0.0 ? std::optional<double>(validity_tol) : std::nullopt);
  row.min_eig = vr.min_eig;
  row.valid = vr.valid;
  const int dim = static_cast<int>(state.space().dim());
  for (int i = 1; i <= dim; ++i) {
    for (int j = i + 1; j <= dim; ++j) row.sections.push_back(ellipse_section(state, i, j));
  }
  return row;
}

Generator effective_generator(const Scenario& s, double* added_noise) {
  double noise = 0.0;
  Generator g = s.generator;
  if (s.auto_noise) {
    noise = minimal_thermal_noise(g);
    if (noise > 0.0) {
      const auto dim = g.space().dim();
      g = g.with_extra_noise(noise * Matrix::Identity(dim, dim));
    }
  }
  if (added_noise != nullptr) *added_noise = noise;
  return g;
}

namespace {

TrajectoryTable start_table(const Scenario& s, const Generator& g, double noise,
                            const std::string& method, double validity_tol) {
  TrajectoryTable table;
  table.name = s.name;
  table.n_modes = s.n_modes;
  table.source_json = s.source_json;
  TrajectoryMetadata& md = table.metadata;
  md.method = method;
  md.t_max = s.t_max;
  md.steps = s.steps;
  md.auto_noise = s.auto_noise;
  md.added_noise = noise;
  md.cp = check_cp_generator(g);
  md.symplectic = check_symplectic(g);
  md.trace_omega_a = (g.space().omega() * g.a()).trace();
  md.validity_tol = validity_tol > 0.0 ? validity_tol : -1.0;
  md.all_rows_valid = true;
  table.rows.reserve(static_cast<std::size_t>(s.steps) + 1);
  return table;
}

double sample_time(const Scenario& s, int k) {
  return k == s.steps ? s.t_max : s.t_max * k / s.steps;
}

void push_row(TrajectoryTable& table, TrajectoryRow row) {
  table.metadata.all_rows_valid = table.metadata.all_rows_valid && row.valid;
  table.rows.push_back(std::move(row));
}

GaussianChannel solve_channel_or_overflow(const Generator& g, double t) {
  try {
    return solve_channel(g, t);
  } catch (const std::overflow_error&) {
    throw std::overflow_error("run_trajectory: state overflowed at t = " + format_double(t));
  }
}

}  // namespace

TrajectoryTable run_trajectory(const Scenario& s, double validity_tol) {
  double noise = 0.0;
  const Generator g = effective_generator(s, &noise);
  TrajectoryTable table = start_table(s, g, noise, "exact", validity_tol);
  for (int k = 0; k <= s.steps; ++k) {
    const double t = sample_time(s, k);
    const GaussianChannel ch = solve_channel_or_overflow(g, t);
    const Vector mean = ch.t() * s.initial_state.mean() + ch.d();
    const Matrix cov = ch.t() * s.initial_state.cov() * ch.t().transpose() + ch.r();
    if (!mean.allFinite() || !cov.allFinite()) {
      throw std::overflow_error("run_trajectory: state overflowed at t = " + format_double(t));
    }
    push_row(table, make_row(t, apply_channel(ch, s.initial_state), validity_tol));
  }
  return table;
}

TrajectoryTable run_trajectory_oracle(const Scenario& s, int substeps, double validity_tol) {
  if (substeps < 1) throw std::invalid_argument("run_trajectory_oracle: substeps must be >= 1");
  double noise = 0.0;
  const Generator g = effective_generator(s, &noise);
  TrajectoryTable table = start_table(s, g, noise, "rk4", validity_tol);
  GaussianState state = s.initial_state;
  double t_prev = 0.0;
  for (int k = 0; k <= s.steps; ++k) {
    const double t = sample_time(s, k);
    if (k > 0) state = integrate_master_equation(g, state, t - t_prev, substeps);
    push_row(table, make_row(t, state, validity_tol));
    t_prev = t;
  }
  return table;
}

}  // namespace gaussdyn
