#include "torifan/report.hpp"

#include <algorithm>
#include <sstream>

#include "torifan/error.hpp"

namespace torifan::harness {

Json rational_json(const Rational& q) { return Json{{"exact", to_string(q)}, {"decimal", to_decimal(q)}}; }

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

Json wall_json(const toric::Wall& w) {
  return Json{{"rays", w.ray_indices}, {"cones", {w.cone_a, w.cone_b}}, {"opposite", {w.ray_a, w.ray_b}},
              {"relation", w.relation}};
}

Json variety_json(const toric::ToricVariety& x) {
  Json j;
  j["name"] = x.name();
  j["dim"] = x.dim();
  j["rays"] = x.fan().rays;
  j["cones"] = x.cones();
  Json walls = Json::array();
  for (const auto& w : x.walls()) walls.push_back(wall_json(w));
  j["walls"] = std::move(walls);
  return j;
}

Json invariants_json(const invariants::InvariantReport& r) {
  Json j;
  j["variety"] = r.variety_name;
  j["dim"] = r.dim;
  j["divisor"] = vec_json(r.divisor.coeffs());
  j["vol"] = rational_json(r.vol);
  j["eps"] = rational_json(r.eps);
  j["eps_wall"] = wall_json(r.eps_witness);
  j["eps_wall_index"] = r.eps_wall_index;
  j["delta_toric"] = rational_json(r.delta);
  j["delta_witness_ray"] = r.delta_witness;
  Json s = Json::array();
  for (std::size_t i = 0; i < r.divisor.variety()->num_rays(); ++i)
    s.push_back(rational_json(invariants::expected_vanishing_order(r.divisor, i)));
  j["expected_vanishing_orders"] = std::move(s);
  j["beta"] = rational_json(r.beta);
  j["score"] = rational_json(r.score);
  j["bound"] = rational_json(r.bound);
  j["is_extremal"] = r.is_extremal;
  return j;
}

Json sweep_json(const SweepResult& s) {
  Json j;
  j["variety"] = s.variety_name;
  j["dim"] = s.dim;
  j["resolution"] = s.resolution;
  j["grid_size"] = s.grid_size;
  j["ample_samples"] = s.ample_samples;
  j["classes"] = s.classes.size();
  j["max_score"] = rational_json(s.max_score);
  j["argmax_divisor"] = vec_json(s.best().report.divisor.coeffs());
  j["bound"] = rational_json(s.bound);
  j["gap"] = rational_json(s.gap);
  return j;
}

std::string sweep_csv(const SweepResult& s) {
  std::ostringstream os;
  os << "coeffs,samples,vol,eps,delta,beta,score,score_decimal\n";
  for (const auto& c : s.classes) {
    const auto& r = c.report;
    std::string coeffs;
    for (const auto& q : r.divisor.coeffs()) coeffs += (coeffs.empty() ? "" : " ") + to_string(q);
    os << coeffs << ',' << c.samples << ',' << to_string(r.vol) << ',' << to_string(r.eps) << ','
       << to_string(r.delta) << ',' << to_string(r.beta) << ',' << to_string(r.score) << ','
       << to_decimal(r.score) << '\n';
  }
  return os.str();
}

BlowupReport blowup_report(const toric::TDivisor& xi, std::size_t cone_index, unsigned samples) {
  if (!toric::is_ample(xi)) throw NotAmple("blowup: divisor " + to_string(xi.coeffs()) + " is not ample");
  if (cone_index >= xi.variety()->cones().size()) {
    throw std::invalid_argument("blowup: cone index " + std::to_string(cone_index) + " out of range");
  }
  BlowupReport r{xi.variety()->name(), cone_index, invariants::fujita_profile(xi, cone_index),
                 invariants::blowup_chain(xi, cone_index), {}, true};
  Vec xs = r.profile.volume.breakpoints;
  const Rational tau = r.profile.domain_end;
  for (unsigned k = 0; k <= samples; ++k)
    xs.push_back(tau * make_rational(static_cast<long>(k), static_cast<long>(std::max(samples, 1u))));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (const auto& x : xs) {
    BlowupRow row{x, r.profile(x), r.profile.fujita_lower_bound(x), 0};
    row.margin = row.volume - row.lower_bound;
    if (row.margin < 0) r.margin_nonnegative = false;
    r.rows.push_back(std::move(row));
  }
  return r;
}

std::string blowup_csv(const BlowupReport& r) {
  std::ostringstream os;
  os << "x,vol,fujita_bound,margin,margin_decimal\n";
  for (const auto& row : r.rows) {
    os << to_string(row.x) << ',' << to_string(row.volume) << ',' << to_string(row.lower_bound) << ','
       << to_string(row.margin) << ',' << to_decimal(row.margin) << '\n';
  }
  return os.str();
}

Json blowup_json(const BlowupReport& r) {
  Json j;
  j["variety"] = r.variety;
  j["cone"] = r.cone_index;
  j["vol"] = rational_json(r.profile.base_volume);
  j["pseff_threshold"] = rational_json(r.profile.domain_end);
  Json pieces = Json::array();
  for (std::size_t i = 0; i < r.profile.volume.pieces.size(); ++i) {
    pieces.push_back(Json{{"from", to_string(r.profile.volume.breakpoints[i])},
                          {"to", to_string(r.profile.volume.breakpoints[i + 1])},
                          {"coeffs", vec_json(r.profile.volume.pieces[i].coeffs)}});
  }
  j["profile"] = std::move(pieces);
  Json eq = Json::array();
  for (const auto& [lo, hi] : r.profile.equality_intervals) eq.push_back({to_string(lo), to_string(hi)});
  j["equality_intervals"] = std::move(eq);
  j["fujita_inequality"] = r.profile.fujita_inequality_holds;
  j["margin_nonnegative"] = r.margin_nonnegative;
  const auto& c = r.chain;
  j["chain"] = Json{{"log_discrepancy", rational_json(c.log_discrepancy)},
                    {"beta", rational_json(c.beta)},
                    {"exceptional_s", rational_json(c.exceptional_s)},
                    {"beta_times_s", rational_json(c.beta_times_s)},
                    {"discrepancy_bound", c.discrepancy_bound},
                    {"discrepancy_tight", c.discrepancy_tight},
                    {"fujita_bound", c.fujita_bound},
                    {"fujita_tight", c.fujita_tight},
                    {"final_bound", c.final_bound},
                    {"final_tight", c.final_tight}};
  return j;
}

OkounkovReport okounkov_report(const toric::TDivisor& xi, const okounkov::FlagSpec& flag,
                               std::optional<Rational> translation_t) {
  auto body = okounkov::okounkov_body(xi, flag);
  const auto n = static_cast<unsigned>(xi.dim());
  OkounkovReport r{body,
                   factorial(n) * ratgeom::volume(body.body),
                   toric::vol(xi),
                   okounkov::pseff_threshold(xi, flag),
                   okounkov::slice_profile(body),
                   false,
                   translation_t,
                   false};
  r.concave = okounkov::bm_concavity_check(r.slices);
  if (translation_t) r.translation_ok = okounkov::translation_identity_check(xi, flag, *translation_t);
  return r;
}

Json okounkov_json(const OkounkovReport& r) {
  Json j;
  j["variety"] = r.body.flag.variety->name();
  j["divisor"] = vec_json(r.body.divisor.coeffs());
  j["flag"] = Json{{"cone", r.body.flag.cone_index}, {"ray_order", r.body.flag.ray_order}};
  Json vs = Json::array();
  for (const auto& v : r.body.body.vertices()) vs.push_back(vec_json(v));
  j["vertices"] = std::move(vs);
  j["body_volume"] = rational_json(r.volume);
  j["class_volume"] = rational_json(r.class_volume);
  j["volume_identity"] = r.volume == r.class_volume ? "OK" : "FAIL";
  j["pseff_threshold"] = rational_json(r.pseff_threshold);
  Json pieces = Json::array();
  for (std::size_t i = 0; i < r.slices.area.pieces.size(); ++i) {
    pieces.push_back(Json{{"from", to_string(r.slices.area.breakpoints[i])},
                          {"to", to_string(r.slices.area.breakpoints[i + 1])},
                          {"coeffs", vec_json(r.slices.area.pieces[i].coeffs)}});
  }
  j["slice_profile"] = std::move(pieces);
  j["concavity"] = r.concave ? "OK" : "FAIL";
  if (r.translation_t) {
    j["translation"] = Json{{"t", to_string(*r.translation_t)}, {"result", r.translation_ok ? "OK" : "FAIL"}};
  }
  return j;
}

std::string slice_csv(const okounkov::SliceProfile& p, unsigned samples) {
  std::ostringstream os;
  os << "r,area,area_decimal\n";
  if (p.area.empty()) return os.str();
  Vec rs;
  for (std::size_t i = 0; i < p.area.pieces.size(); ++i) {
    const Rational lo = p.area.breakpoints[i], hi = p.area.breakpoints[i + 1];
    for (unsigned k = 0; k < samples; ++k)
      rs.push_back(lo + (hi - lo) * make_rational(static_cast<long>(k), static_cast<long>(samples)));
  }
  rs.push_back(p.support_end());
  for (const auto& r : rs) os << to_string(r) << ',' << to_string(p(r)) << ',' << to_decimal(p(r)) << '\n';
  return os.str();
}

okounkov::FlagSpec parse_flag(const std::string& text, const toric::VarietyPtr& x) {
  auto parse_index = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("flag '" + text + "': expected a nonnegative index, got '" + s + "'");
    return static_cast<std::size_t>(std::stoul(s));
  };
  const auto colon = text.find(':');
  const std::size_t cone = parse_index(text.substr(0, colon));
  if (cone >= x->cones().size()) throw ParseError("flag '" + text + "': cone index out of range");
  if (colon == std::string::npos) return okounkov::standard_flag(x, cone);
  okounkov::FlagSpec f{x, cone, {}};
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) f.ray_order.push_back(parse_index(item));
  auto sorted = f.ray_order;
  auto expected = x->cones()[cone];
  std::sort(sorted.begin(), sorted.end());
  std::sort(expected.begin(), expected.end());
  if (sorted != expected) throw ParseError("flag '" + text + "': ray order must permute the rays of cone " + std::to_string(cone));
  return f;
}

}  // namespace torifan::harness
