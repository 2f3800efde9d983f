#include "torifan/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "torifan/error.hpp"

namespace torifan::harness {

using nlohmann::json;
using toric::Fan;

namespace {

Fan cyclic(std::vector<toric::IntVec> rays, std::string name) {
  Fan f{2, std::move(rays), {}, std::move(name)};
  for (std::size_t i = 0; i < f.rays.size(); ++i) f.max_cones.push_back({i, (i + 1) % f.rays.size()});
  return f;
}

[[noreturn]] void fail(const std::string& source, const std::string& what) {
  throw ParseError(source + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& source) {
  if (!j.is_object()) fail(source, "expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) fail(source, std::string("missing field '") + key + "'");
  return *it;
}

std::int64_t as_int(const json& v, const std::string& source, const std::string& where) {
  if (!v.is_number_integer()) fail(source, where + ": expected an integer");
  return v.get<std::int64_t>();
}

}  // namespace

Fan projective_space(std::size_t n) {
  if (n == 0) throw std::invalid_argument("projective_space: n must be positive");
  Fan f;
  f.dim = n;
  f.name = "P" + std::to_string(n);
  for (std::size_t i = 0; i < n; ++i) {
    toric::IntVec e(n, 0);
    e[i] = 1;
    f.rays.push_back(e);
  }
  f.rays.push_back(toric::IntVec(n, -1));
  for (std::size_t skip = 0; skip <= n; ++skip) {
    toric::Cone c;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    f.max_cones.push_back(c);
  }
  return f;
}

Fan p1xp1() { return cyclic({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, "P1xP1"); }

Fan p1xp1xp1() {
  Fan f;
  f.dim = 3;
  f.name = "P1xP1xP1";
  f.rays = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  for (std::size_t a : {0, 1})
    for (std::size_t b : {2, 3})
      for (std::size_t c : {4, 5}) f.max_cones.push_back({a, b, c});
  return f;
}

Fan hirzebruch(std::size_t a) {
  return cyclic({{1, 0}, {0, 1}, {-1, static_cast<std::int64_t>(a)}, {0, -1}}, "F" + std::to_string(a));
}

Fan del_pezzo(std::size_t k) {
  switch (k) {
    case 0: return cyclic({{1, 0}, {0, 1}, {-1, -1}}, "P2");
    case 1: return hirzebruch(1);
    case 2: return cyclic({{1, 0}, {1, 1}, {0, 1}, {-1, -1}, {0, -1}}, "Bl2P2");
    case 3: return cyclic({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}, "Bl3P2");
    default: throw std::invalid_argument("del_pezzo: only k <= 3 points are torus-fixed");
  }
}

Catalog builtin_catalog() {
  Catalog c;
  for (std::size_t n = 1; n <= 6; ++n) {
    c.push_back({"P" + std::to_string(n), projective_space(n), "projective space"});
  }
  c.push_back({"P1xP1", p1xp1(), "quadric surface"});
  c.push_back({"F1", del_pezzo(1), "Hirzebruch surface F1 = blow-up of P2 at a point"});
  c.push_back({"Bl2P2", del_pezzo(2), "blow-up of P2 at two torus-fixed points"});
  c.push_back({"Bl3P2", del_pezzo(3), "blow-up of P2 at three torus-fixed points"});
  c.push_back({"P1xP1xP1", p1xp1xp1(), "product of three lines"});
  return c;
}

std::filesystem::path default_catalog_dir() {
  if (const char* env = std::getenv("TORIFAN_CATALOG"); env && *env) return env;
#ifdef TORIFAN_CATALOG_DIR
  return TORIFAN_CATALOG_DIR;
#else
  return "data/catalog";
#endif
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

CatalogEntry entry_from_json(const json& j, const std::string& source) {
  CatalogEntry e;
  const auto& name = field(j, "name", source);
  if (!name.is_string()) fail(source, "field 'name' must be a string");
  e.name = name.get<std::string>();

  const auto& dim = field(j, "dim", source);
  const auto d = as_int(dim, source, "field 'dim'");
  if (d <= 0) fail(source, "field 'dim' must be positive");
  e.fan.dim = static_cast<std::size_t>(d);
  e.fan.name = e.name;

  const auto& rays = field(j, "rays", source);
  if (!rays.is_array()) fail(source, "field 'rays' must be an array");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const std::string where = "rays[" + std::to_string(i) + "]";
    if (!rays[i].is_array()) fail(source, where + ": expected an array");
    if (rays[i].size() != e.fan.dim) {
      fail(source, where + ": expected " + std::to_string(e.fan.dim) + " entries, got " +
                       std::to_string(rays[i].size()));
    }
    toric::IntVec r;
    for (const auto& v : rays[i]) r.push_back(as_int(v, source, where));
    e.fan.rays.push_back(std::move(r));
  }

  const auto& cones = field(j, "cones", source);
  if (!cones.is_array()) fail(source, "field 'cones' must be an array");
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const std::string where = "cones[" + std::to_string(i) + "]";
    if (!cones[i].is_array()) fail(source, where + ": expected an array");
    toric::Cone c;
    for (const auto& v : cones[i]) {
      const auto idx = as_int(v, source, where);
      if (idx < 0) fail(source, where + ": negative ray index");
      c.push_back(static_cast<std::size_t>(idx));
    }
    e.fan.max_cones.push_back(std::move(c));
  }

  if (auto it = j.find("note"); it != j.end() && it->is_string()) e.note = it->get<std::string>();
  return e;
}

nlohmann::ordered_json entry_to_json(const CatalogEntry& e) {
  nlohmann::ordered_json j;
  j["name"] = e.name;
  j["dim"] = e.fan.dim;
  j["rays"] = e.fan.rays;
  j["cones"] = e.fan.max_cones;
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

CatalogEntry load_entry(const std::filesystem::path& path) {
  auto e = entry_from_json(read_json(path), path.string());
  toric::validate(e.fan);
  return e;
}

toric::VarietyPtr load_fan(const std::filesystem::path& path) {
  return toric::validate(entry_from_json(read_json(path), path.string()).fan);
}

Catalog load_catalog(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ParseError(dir.string() + ": catalog directory not found");
  std::vector<std::filesystem::path> files;
  for (const auto& de : std::filesystem::directory_iterator(dir))
    if (de.is_regular_file() && de.path().extension() == ".json") files.push_back(de.path());
  std::sort(files.begin(), files.end());
  Catalog c;
  for (const auto& f : files) c.push_back(load_entry(f));
  return c;
}

toric::TDivisor divisor_from_json(const json& j, const toric::VarietyPtr& x) {
  const std::string source = "divisor";
  const auto& coeffs = field(j, "coeffs", source);
  if (!coeffs.is_array()) fail(source, "field 'coeffs' must be an array");
  if (coeffs.size() != x->num_rays()) {
    fail(source, "expected " + std::to_string(x->num_rays()) + " coefficients, got " +
                     std::to_string(coeffs.size()));
  }
  Vec c;
  for (const auto& v : coeffs) {
    if (v.is_string()) c.push_back(parse_rational(v.get<std::string>()));
    else if (v.is_number_integer()) c.push_back(Rational(static_cast<long>(v.get<std::int64_t>())));
    else fail(source, "coefficients must be \"p/q\" strings or integers");
  }
  return toric::TDivisor(x, std::move(c));
}

toric::TDivisor load_divisor(const std::filesystem::path& path, const toric::VarietyPtr& x) {
  try {
    return divisor_from_json(read_json(path), x);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace torifan::harness
