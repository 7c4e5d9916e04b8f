#include "gaussdyn/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gaussdyn {

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {CatalogKind::rotation, "rotation", "Single-mode Rotation", "nu0", 1, {""}},
      {CatalogKind::squeezing, "squeezing", "Single-mode Squeezing", "gamma", 1, {"z", "x"}},
      {CatalogKind::displacement, "displacement", "Displacement", "b", 1, {"q", "p"}},
      {CatalogKind::thermal_noise, "thermal_noise", "Free Thermal Noise", "c_t", 1, {""}},
      {CatalogKind::squeezed_noise, "squeezed_noise", "Single-mode Squeezed Noise", "c", 1,
       {"z", "x"}},
      {CatalogKind::amplification_relaxation, "amplification_relaxation",
       "Amplification/Relaxation", "eta", 1, {""}},
      {CatalogKind::multimode_rotation, "multimode_rotation", "Multi-mode Rotation", "nu", 2,
       {"qqpp", "qppq"}},
      {CatalogKind::multimode_squeezing, "multimode_squeezing", "Multi-mode Squeezing", "gamma", 2,
       {"qqpp", "qppq"}},
      {CatalogKind::counter_rotation, "counter_rotation", "Multi-mode Counter-Rotation", "nu_bar",
       2, {"qqpp", "qppq"}},
      {CatalogKind::counter_squeezing, "counter_squeezing", "Multi-mode Counter-Squeezing",
       "gamma_bar", 2, {"qqpp", "qppq"}},
      {CatalogKind::multimode_squeezed_noise, "multimode_squeezed_noise",
       "Multi-mode Squeezed Noise", "c", 2, {"i", "z", "x", "w"}},
  };
  return entries;
}

const CatalogEntry& catalog_entry(CatalogKind kind) {
  for (const auto& e : catalog()) {
    if (e.kind == kind) return e;
  }
  throw std::logic_error("catalog kind missing from table");
}

KindSelector parse_kind(const std::string& name) {
  for (const auto& e : catalog()) {
    if (name == e.id) return {e.kind, e.variants.front()};
  }
  for (const auto& e : catalog()) {
    const std::string prefix = e.id + "_";
    if (name.rfind(prefix, 0) != 0) continue;
    const std::string variant = name.substr(prefix.size());
    if (std::find(e.variants.begin(), e.variants.end(), variant) != e.variants.end()) {
      return {e.kind, variant};
    }
  }
  throw std::invalid_argument("unknown generator kind '" + name + "'");
}

namespace {

struct Template {
  Matrix a;
  Vector b;
  Matrix c;
};

Matrix two_mode(const Matrix& upper, const Matrix& lower) {
  Matrix m = Matrix::Zero(4, 4);
  m.block(0, 2, 2, 2) = upper;
  m.block(2, 0, 2, 2) = lower;
  return m;
}

Template make_template(CatalogKind kind, const std::string& v) {
  using namespace basis2;
  const Matrix z2 = Matrix::Zero(2, 2);
  const Matrix z4 = Matrix::Zero(4, 4);
  switch (kind) {
    case CatalogKind::rotation:
      return {identity(), Vector::Zero(2), z2};
    case CatalogKind::squeezing:
      return {v == "z" ? z() : x(), Vector::Zero(2), z2};
    case CatalogKind::displacement:
      return {z2, v == "q" ? Vector{{1.0, 0.0}} : Vector{{0.0, 1.0}}, z2};
    case CatalogKind::thermal_noise:
      return {z2, Vector::Zero(2), identity()};
    case CatalogKind::squeezed_noise:
      return {z2, Vector::Zero(2), v == "z" ? z() : x()};
    case CatalogKind::amplification_relaxation:
      return {omega(), Vector::Zero(2), z2};
    case CatalogKind::multimode_rotation:
      return {v == "qqpp" ? two_mode(omega(), omega().transpose()) : two_mode(identity(), identity()),
              Vector::Zero(4), z4};
    case CatalogKind::multimode_squeezing:
      return {v == "qqpp" ? two_mode(x(), x()) : two_mode(z(), z()), Vector::Zero(4), z4};
    case CatalogKind::counter_rotation:
      return {v == "qqpp" ? two_mode(x(), -x()) : two_mode(z(), -z()), Vector::Zero(4), z4};
    case CatalogKind::counter_squeezing:
      return {v == "qqpp" ? two_mode(omega(), omega()) : two_mode(identity(), -identity()),
              Vector::Zero(4), z4};
    case CatalogKind::multimode_squeezed_noise: {
      Matrix c;
      if (v == "i") c = two_mode(identity(), identity());
      else if (v == "z") c = two_mode(z(), z());
      else if (v == "x") c = two_mode(x(), x());
      else c = two_mode(omega(), omega().transpose());
      return {z4, Vector::Zero(4), c};
    }
  }
  throw std::logic_error("unhandled catalog kind");
}

}  // namespace

Generator named_generator(CatalogKind kind, const std::string& variant, double rate,
                          std::span<const int> modes, const SymplecticSpace& space) {
  const CatalogEntry& entry = catalog_entry(kind);
  const std::string v = variant.empty() ? entry.variants.front() : variant;
  if (std::find(entry.variants.begin(), entry.variants.end(), v) == entry.variants.end()) {
    throw std::invalid_argument("kind '" + entry.id + "' has no variant '" + v + "'");
  }
  if (static_cast<int>(modes.size()) != entry.modes) {
    throw std::invalid_argument("kind '" + entry.id + "' acts on exactly " +
                                std::to_string(entry.modes) + " mode(s)");
  }
  std::set<int> seen;
  for (int m : modes) {
    if (m < 1 || m > space.n_modes()) {
      throw std::invalid_argument("mode index " + std::to_string(m) + " out of range 1.." +
                                  std::to_string(space.n_modes()));
    }
    if (!seen.insert(m).second) throw std::invalid_argument("mode indices must be distinct");
  }
  if (!std::isfinite(rate)) throw std::invalid_argument("rate must be finite");

  const Template tpl = make_template(kind, v);
  const int dim = space.dim();
  Matrix a = Matrix::Zero(dim, dim);
  Vector b = Vector::Zero(dim);
  Matrix c = Matrix::Zero(dim, dim);
  for (std::size_t r = 0; r < modes.size(); ++r) {
    const int row = 2 * (modes[r] - 1);
    b.segment(row, 2) = rate * tpl.b.segment(2 * r, 2);
    for (std::size_t s = 0; s < modes.size(); ++s) {
      const int col = 2 * (modes[s] - 1);
      a.block(row, col, 2, 2) = rate * tpl.a.block(2 * r, 2 * s, 2, 2);
      c.block(row, col, 2, 2) = rate * tpl.c.block(2 * r, 2 * s, 2, 2);
    }
  }
  Generator g(SymplecticSpace(space.n_modes()), a, b, c);
  return space.ordering() == Ordering::interleaved ? g : reorder_basis(g, space.ordering());
}

Generator named_generator(const std::string& kind, double rate, std::span<const int> modes,
                          const SymplecticSpace& space) {
  const KindSelector sel = parse_kind(kind);
  return named_generator(sel.kind, sel.variant, rate, modes, space);
}

}  // namespace gaussdyn
