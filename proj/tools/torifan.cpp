// torifan: command-line front end for the toric invariant engine.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "torifan/catalog.hpp"
#include "torifan/error.hpp"
#include "torifan/report.hpp"

using namespace torifan;
using namespace torifan::harness;

namespace {

constexpr int kOk = 0;
constexpr int kAssertion = 1;
constexpr int kUsage = 2;

struct Options {
  std::string out;
  unsigned threads = 0;
  std::string fan;
  std::string divisor;
  bool anticanonical = false;
  unsigned resolution = 8;
  std::size_t cone = 0;
  unsigned samples = 100;
  std::string format;
  std::string flag = "0";
  std::string translation;
  std::string profile_csv;
  std::string catalog;
  std::size_t dim = 0;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw ParseError("cannot write " + o.out);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

toric::TDivisor chosen_divisor(const Options& o, const toric::VarietyPtr& x) {
  if (!o.divisor.empty()) return load_divisor(o.divisor, x);
  return toric::anticanonical(x);
}

Catalog chosen_catalog(const Options& o) {
  auto c = load_catalog(o.catalog.empty() ? default_catalog_dir() : std::filesystem::path(o.catalog));
  if (o.dim) std::erase_if(c, [&](const CatalogEntry& e) { return e.fan.dim != o.dim; });
  return c;
}

int run_validate(const Options& o) {
  const auto x = load_fan(o.fan);
  auto j = variety_json(*x);
  j["fano"] = toric::is_fano(x);
  j["status"] = "OK";
  emit(o, dump(j));
  return kOk;
}

int run_invariants(const Options& o) {
  const auto x = load_fan(o.fan);
  emit(o, dump(invariants_json(invariants::score(chosen_divisor(o, x)))));
  return kOk;
}

int run_sweep(const Options& o) {
  const auto x = load_fan(o.fan);
  const auto s = sweep_ample_cone(x, o.resolution, o.threads);
  emit(o, o.format == "csv" ? sweep_csv(s) : dump(sweep_json(s)));
  return kOk;
}

int run_blowup(const Options& o) {
  const auto x = load_fan(o.fan);
  const auto r = blowup_report(chosen_divisor(o, x), o.cone, o.samples);
  emit(o, o.format == "json" ? dump(blowup_json(r)) : blowup_csv(r));
  return r.margin_nonnegative && r.profile.fujita_inequality_holds ? kOk : kAssertion;
}

int run_okounkov(const Options& o) {
  const auto x = load_fan(o.fan);
  const auto flag = parse_flag(o.flag, x);
  std::optional<Rational> t;
  if (!o.translation.empty()) t = parse_rational(o.translation);
  const auto r = okounkov_report(chosen_divisor(o, x), flag, t);
  emit(o, dump(okounkov_json(r)));
  if (!o.profile_csv.empty()) {
    std::ofstream f(o.profile_csv);
    if (!f) throw ParseError("cannot write " + o.profile_csv);
    f << slice_csv(r.slices);
  }
  const bool ok = r.volume == r.class_volume && (!t || r.translation_ok);
  return ok ? kOk : kAssertion;
}

int run_verify(const Options& o) {
  emit(o, theorem_csv(verify_theorem(chosen_catalog(o), o.resolution, o.threads)));
  return kOk;
}

int run_gap(const Options& o) {
  emit(o, gap_csv(gap_report(chosen_catalog(o), o.resolution, o.threads), o.resolution));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants of smooth complete toric Fano varieties"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--out", o.out, "Write the report to this file instead of stdout");
  app.add_option("--threads", o.threads, "Worker threads for sweeps (0 = all cores)");

  auto add_fan = [&](CLI::App* sub) {
    sub->add_option("fan", o.fan, "Fan JSON file")->required()->check(CLI::ExistingFile);
  };
  auto add_divisor = [&](CLI::App* sub) {
    auto* d = sub->add_option("--divisor", o.divisor, "Divisor JSON file {\"coeffs\": [\"p/q\", ...]}");
    auto* k = sub->add_flag("--anticanonical", o.anticanonical, "Use -K (the default)");
    d->excludes(k);
  };

  auto* validate = app.add_subcommand("validate", "Check a fan file and print its walls");
  add_fan(validate);

  auto* inv = app.add_subcommand("invariants", "eps, delta, beta and the score of a class");
  add_fan(inv);
  add_divisor(inv);

  auto* sweep = app.add_subcommand("sweep", "Score every ample class of a rational grid");
  add_fan(sweep);
  sweep->add_option("--resolution", o.resolution, "Grid resolution k")->check(CLI::PositiveNumber);
  sweep->add_option("--format", o.format, "json (summary) or csv (every class)")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* blowup = app.add_subcommand("blowup", "Volume profile of the blow-up of a fixed point");
  add_fan(blowup);
  add_divisor(blowup);
  blowup->add_option("--cone", o.cone, "Maximal cone of the fixed point")->required();
  blowup->add_option("--samples", o.samples, "Evenly spaced sample points");
  blowup->add_option("--format", o.format, "csv (profile table) or json (profile and chain)")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* ok = app.add_subcommand("okounkov", "Okounkov body of a torus-invariant flag");
  add_fan(ok);
  add_divisor(ok);
  ok->add_option("--flag", o.flag, "cone or cone:ray,ray,... (first ray is Y_1)");
  ok->add_option("--check-translation", o.translation, "Check the translation identity at t");
  ok->add_option("--profile-csv", o.profile_csv, "Write slice-area samples to this file");

  auto* verify = app.add_subcommand("verify-theorem", "Sweep a catalog and check the volume bound");
  verify->add_option("--catalog", o.catalog, "Catalog directory (default: bundled or $TORIFAN_CATALOG)");
  verify->add_option("--resolution", o.resolution, "Grid resolution k")->check(CLI::PositiveNumber);
  verify->add_option("--dim", o.dim, "Only entries of this dimension");

  auto* gap = app.add_subcommand("gap-report", "Smallest non-P^n gap per dimension");
  gap->add_option("--catalog", o.catalog, "Catalog directory (default: bundled or $TORIFAN_CATALOG)");
  gap->add_option("--resolution", o.resolution, "Grid resolution k")->check(CLI::PositiveNumber);
  gap->add_option("--dim", o.dim, "Only entries of this dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return run_validate(o);
    if (*inv) return run_invariants(o);
    if (*sweep) return run_sweep(o);
    if (*blowup) return run_blowup(o);
    if (*ok) return run_okounkov(o);
    if (*verify) return run_verify(o);
    if (*gap) return run_gap(o);
  } catch (const AssertionFailure& e) {
    std::cerr << "assertion failed: " << e.what() << '\n';
    return kAssertion;
  } catch (const ValidationError& e) {
    std::cerr << "invalid fan: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
