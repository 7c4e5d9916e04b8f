#include "gaussdyn/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace gaussdyn {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

TableFormat table_format_from_string(const std::string& name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "json") return TableFormat::json;
  throw std::invalid_argument("unknown output format '" + name + "' (expected csv or json)");
}

std::vector<std::string> csv_columns(int n_modes) {
  const int dim = 2 * n_modes;
  std::vector<std::string> cols{"t"};
  for (int i = 1; i <= dim; ++i) cols.push_back("x_" + std::to_string(i));
  for (int i = 1; i <= dim; ++i) {
    for (int j = i; j <= dim; ++j) cols.push_back("cov_" + std::to_string(i) + std::to_string(j));
  }
  cols.insert(cols.end(), {"purity", "volume", "energy"});
  for (int i = 1; i <= dim; ++i) {
    for (int j = i + 1; j <= dim; ++j) {
      const std::string p = "sec_" + std::to_string(i) + "_" + std::to_string(j) + "_";
      for (const char* f : {"cx", "cy", "a", "b", "theta"}) cols.push_back(p + f);
    }
  }
  return cols;
}

namespace {

std::vector<double> flatten(const TrajectoryRow& row) {
  std::vector<double> v{row.t};
  const auto dim = row.mean.size();
  for (Eigen::Index i = 0; i < dim; ++i) v.push_back(row.mean(i));
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i; j < dim; ++j) v.push_back(row.cov(i, j));
  }
  v.insert(v.end(), {row.purity, row.volume, row.energy});
  for (const auto& s : row.sections) {
    v.insert(v.end(), {s.cx, s.cy, s.semi_major, s.semi_minor, s.theta});
  }
  return v;
}

std::string json_number(double x) { return std::isfinite(x) ? format_double(x) : "null"; }

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_bool(bool b) { return b ? "true" : "false"; }

}  // namespace

void write_csv(const TrajectoryTable& table, std::ostream& out) {
  const auto cols = csv_columns(table.n_modes);
  for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
  out << '\n';
  for (const auto& row : table.rows) {
    const auto v = flatten(row);
    for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << format_double(v[k]);
    out << '\n';
  }
}

void write_json(const TrajectoryTable& table, std::ostream& out) {
  const TrajectoryMetadata& md = table.metadata;
  out << "{\n";
  out << "  \"schema_version\": 1,\n";
  out << "  \"name\": " << json_string(table.name) << ",\n";
  out << "  \"n_modes\": " << table.n_modes << ",\n";
  out << "  \"scenario\": " << (table.source_json.empty() ? "null" : table.source_json) << ",\n";
  out << "  \"metadata\": {\n";
  out << "    \"method\": " << json_string(md.method) << ",\n";
  out << "    \"t_max\": " << json_number(md.t_max) << ",\n";
  out << "    \"steps\": " << md.steps << ",\n";
  out << "    \"auto_noise\": " << json_bool(md.auto_noise) << ",\n";
  out << "    \"added_noise\": " << json_number(md.added_noise) << ",\n";
  out << "    \"cp\": {\"passes\": " << json_bool(md.cp.passes)
      << ", \"min_eig\": " << json_number(md.cp.min_eig) << ", \"tol\": " << json_number(md.cp.tol)
      << "},\n";
  out << "    \"symplectic\": {\"is_symplectic\": " << json_bool(md.symplectic.is_symplectic)
      << ", \"defect\": " << json_number(md.symplectic.defect) << "},\n";
  out << "    \"trace_omega_a\": " << json_number(md.trace_omega_a) << ",\n";
  out << "    \"validity_tol\": " << json_number(md.validity_tol) << ",\n";
  out << "    \"all_rows_valid\": " << json_bool(md.all_rows_valid) << "\n";
  out << "  },\n";

  const auto cols = csv_columns(table.n_modes);
  out << "  \"columns\": [";
  for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? ", " : "") << json_string(cols[k]);
  out << "],\n";

  out << "  \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto v = flatten(row);
    out << (r ? ",\n" : "\n") << "    {\"values\": [";
    for (std::size_t k = 0; k < v.size(); ++k) out << (k ? ", " : "") << json_number(v[k]);
    out << "], \"min_eig\": " << json_number(row.min_eig) << ", \"valid\": " << json_bool(row.valid)
        << "}";
  }
  out << (table.rows.empty() ? "]\n" : "\n  ]\n");
  out << "}\n";
}

void emit(const TrajectoryTable& table, TableFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ScenarioError(path.string() + ": cannot open for writing");
  if (format == TableFormat::csv) {
    write_csv(table, out);
  } else {
    write_json(table, out);
  }
  out.flush();
  if (!out) throw ScenarioError(path.string() + ": write failed");
}

TrajectoryTable parse_table_json(const std::string& json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioError("trajectory json: parse error at byte " + std::to_string(e.byte));
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto num = [&](const json& j) { return j.is_null() ? nan : j.get<double>(); };

  try {
    if (doc.at("schema_version").get<int>() != 1) {
      throw ScenarioError("trajectory json: unsupported schema_version");
    }
    TrajectoryTable table;
    table.name = doc.at("name").get<std::string>();
    table.n_modes = doc.at("n_modes").get<int>();
    table.source_json = doc.at("scenario").is_null() ? "" : doc.at("scenario").dump();

    const json& m = doc.at("metadata");
    TrajectoryMetadata& md = table.metadata;
    md.method = m.at("method").get<std::string>();
    md.t_max = num(m.at("t_max"));
    md.steps = m.at("steps").get<int>();
    md.auto_noise = m.at("auto_noise").get<bool>();
    md.added_noise = num(m.at("added_noise"));
    md.cp = CPReport{m.at("cp").at("passes").get<bool>(), num(m.at("cp").at("min_eig")),
                     CPTestKind::differential, num(m.at("cp").at("tol"))};
    md.symplectic = SymplecticReport{m.at("symplectic").at("is_symplectic").get<bool>(),
                                     num(m.at("symplectic").at("defect"))};
    md.trace_omega_a = num(m.at("trace_omega_a"));
    md.validity_tol = num(m.at("validity_tol"));
    md.all_rows_valid = m.at("all_rows_valid").get<bool>();

    const int dim = 2 * table.n_modes;
    const std::size_t width = csv_columns(table.n_modes).size();
    for (const auto& jr : doc.at("rows")) {
      const json& vals = jr.at("values");
      if (vals.size() != width) throw ScenarioError("trajectory json: row width mismatch");
      std::size_t k = 0;
      TrajectoryRow row;
      row.t = num(vals[k++]);
      row.mean.resize(dim);
      for (int i = 0; i < dim; ++i) row.mean(i) = num(vals[k++]);
      row.cov.resize(dim, dim);
      for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
          row.cov(i, j) = num(vals[k++]);
          row.cov(j, i) = row.cov(i, j);
        }
      }
      row.purity = num(vals[k++]);
      row.volume = num(vals[k++]);
      row.energy = num(vals[k++]);
      for (int i = 1; i <= dim; ++i) {
        for (int j = i + 1; j <= dim; ++j) {
          EllipseSection s{i, j, 0, 0, 0, 0, 0};
          s.cx = num(vals[k++]);
          s.cy = num(vals[k++]);
          s.semi_major = num(vals[k++]);
          s.semi_minor = num(vals[k++]);
          s.theta = num(vals[k++]);
          row.sections.push_back(s);
        }
      }
      row.min_eig = num(jr.at("min_eig"));
      row.valid = jr.at("valid").get<bool>();
      table.rows.push_back(std::move(row));
    }
    return table;
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("trajectory json: ") + e.what());
  }
}

}  // namespace gaussdyn
