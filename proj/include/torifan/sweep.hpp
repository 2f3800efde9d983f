#pragma once

#include <string>
#include <vector>

#include "torifan/catalog.hpp"
#include "torifan/invariants.hpp"

namespace torifan::harness {

/// One projective class of grid samples. Every sample in the class has the
/// same score, so it is evaluated once.
struct SweepClass {
  invariants::InvariantReport report;  // evaluated at the first grid sample of the class
  std::size_t samples = 0;             // grid samples landing in this class
  bool delta_volume_ok = false;        // delta^n Vol <= (n+1)^n
};

struct SweepResult {
  std::string variety_name;
  std::size_t dim = 0;
  unsigned resolution = 0;
  std::size_t grid_size = 0;      // resolution^rays
  std::size_t ample_samples = 0;  // grid points passing is_ample
  std::vector<SweepClass> classes;  // in order of first occurrence on the grid
  std::size_t argmax = 0;           // index into classes; ties go to the earliest
  Rational max_score;
  Rational bound;
  Rational gap;  // bound - max_score

  const SweepClass& best() const { return classes.at(argmax); }
};

/// Scores every ample class c / resolution with c in {1..resolution}^rays, in
/// lexicographic order. Samples are grouped by class modulo linear equivalence
/// and scaling, which leaves the score unchanged. Throws EmptyGrid.
/// threads = 0 uses the hardware concurrency.
SweepResult sweep_ample_cone(const toric::VarietyPtr& x, unsigned resolution, unsigned threads = 0);

struct TheoremRow {
  std::string variety;
  std::size_t dim = 0;
  bool projective_space = false;
  SweepResult sweep;
};

/// Sweeps every entry and checks score <= (n+1)^n and delta^n Vol <= (n+1)^n on
/// every class, gap == 0 exactly on P^n and gap > 0 elsewhere. Throws
/// AssertionFailure naming the entry and sample.
std::vector<TheoremRow> verify_theorem(const Catalog& catalog, unsigned resolution, unsigned threads = 0);

/// variety,n,samples,max_score,max_score_decimal,gap,gap_decimal
std::string theorem_csv(const std::vector<TheoremRow>& rows);

struct GapRow {
  std::size_t dim = 0;
  Rational epsilon;          // min gap over non-P^n entries of this dimension
  std::string variety;       // where the minimum is attained (first on ties)
  Rational max_score;
  std::size_t entries = 0;   // non-P^n entries considered
};

/// Empirical epsilon_toric(n) per dimension from grid maxima. Dimensions with
/// no non-P^n entry are omitted.
std::vector<GapRow> gap_report(const std::vector<TheoremRow>& rows);
std::vector<GapRow> gap_report(const Catalog& catalog, unsigned resolution, unsigned threads = 0);

std::string gap_csv(const std::vector<GapRow>& rows, unsigned resolution);

}  // namespace torifan::harness
