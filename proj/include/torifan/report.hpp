#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "torifan/invariants.hpp"
#include "torifan/okounkov.hpp"
#include "torifan/sweep.hpp"

namespace torifan::harness {

using Json = nlohmann::ordered_json;

/// Exact "p/q" plus a 12-digit decimal.
Json rational_json(const Rational& q);
Json vec_json(const Vec& v);

Json variety_json(const toric::ToricVariety& x);
Json wall_json(const toric::Wall& w);

/// Invariant report including S for every ray.
Json invariants_json(const invariants::InvariantReport& r);

Json sweep_json(const SweepResult& s);
/// coeffs,samples,vol,eps,delta,beta,score,score_decimal per class.
std::string sweep_csv(const SweepResult& s);

struct BlowupRow {
  Rational x;
  Rational volume;       // Vol(sigma^* xi - x E)
  Rational lower_bound;  // Vol(xi) - x^n
  Rational margin;
};

struct BlowupReport {
  std::string variety;
  std::size_t cone_index = 0;
  invariants::VolumeProfile profile;
  invariants::BlowupChain chain;
  std::vector<BlowupRow> rows;  // sorted by x, all breakpoints included
  bool margin_nonnegative = false;
};

/// Profile sampled at `samples` evenly spaced points of [0, tau] plus every
/// breakpoint. Throws NotAmple.
BlowupReport blowup_report(const toric::TDivisor& xi, std::size_t cone_index, unsigned samples = 100);
std::string blowup_csv(const BlowupReport& r);
Json blowup_json(const BlowupReport& r);

struct OkounkovReport {
  okounkov::OkounkovBody body;
  Rational volume;       // n! vol(Delta)
  Rational class_volume;  // vol(xi)
  Rational pseff_threshold;
  okounkov::SliceProfile slices;
  bool concave = false;
  std::optional<Rational> translation_t;
  bool translation_ok = false;
};

/// Throws NotBig, and ThresholdExceeded when t is out of range.
OkounkovReport okounkov_report(const toric::TDivisor& xi, const okounkov::FlagSpec& flag,
                               std::optional<Rational> translation_t = std::nullopt);
Json okounkov_json(const OkounkovReport& r);
/// r,area samples of the slice profile (breakpoints plus `samples` per piece).
std::string slice_csv(const okounkov::SliceProfile& p, unsigned samples = 20);

/// "cone:order" e.g. "0" or "2:1,0". Throws ParseError.
okounkov::FlagSpec parse_flag(const std::string& text, const toric::VarietyPtr& x);

}  // namespace torifan::harness
