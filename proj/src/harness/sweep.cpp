#include "torifan/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "torifan/error.hpp"
#include "torifan/linalg.hpp"

namespace torifan::harness {

namespace {

using toric::IntVec;

// Integer data for fast grid filtering and class normalization.
struct GridData {
  std::size_t n = 0;
  std::vector<IntVec> rays;
  std::vector<toric::Wall> walls;
  toric::Cone cone0;
  std::vector<IntVec> cone0_inverse;  // rows: m = -inverse * c restricted to cone0
};

GridData grid_data(const toric::ToricVariety& x) {
  GridData g;
  g.n = x.dim();
  g.rays = x.fan().rays;
  g.walls = x.walls();
  g.cone0 = x.cones()[0];
  linalg::Matrix a;
  for (auto r : g.cone0) a.push_back(x.ray(r));
  const auto inv = linalg::inverse(a);
  if (!inv) throw std::logic_error("sweep: singular cone");
  for (const auto& row : *inv) {
    IntVec r;
    for (const auto& q : row) r.push_back(q.get_num().get_si());
    g.cone0_inverse.push_back(std::move(r));
  }
  return g;
}

bool ample(const GridData& g, const IntVec& c) {
  for (const auto& w : g.walls) {
    std::int64_t s = c[w.ray_a] + c[w.ray_b];
    for (std::size_t i = 0; i < w.ray_indices.size(); ++i) s += w.relation[i] * c[w.ray_indices[i]];
    if (s <= 0) return false;
  }
  return true;
}

// Representative of c modulo linear equivalence and positive scaling: zero on
// the rays of cone 0, then divided by the content.
IntVec class_key(const GridData& g, const IntVec& c) {
  // Local vertex m with <m, u_r> = -c_r on cone 0: A m = -c_cone.
  IntVec m(g.n, 0);
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j) m[i] -= g.cone0_inverse[i][j] * c[g.cone0[j]];
  IntVec key(c.size());
  std::int64_t content = 0;
  for (std::size_t r = 0; r < c.size(); ++r) {
    std::int64_t v = c[r];
    for (std::size_t k = 0; k < g.n; ++k) v += m[k] * g.rays[r][k];
    key[r] = v;
    content = std::gcd(content, v);
  }
  if (content > 1)
    for (auto& v : key) v /= content;
  return key;
}

struct KeyHash {
  std::size_t operator()(const IntVec& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ull;
    return h;
  }
};

bool is_projective_space(const toric::Fan& f) { return f.rays.size() == f.dim + 1; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

SweepResult sweep_ample_cone(const toric::VarietyPtr& x, unsigned resolution, unsigned threads) {
  if (resolution == 0) throw std::invalid_argument("sweep: resolution must be at least 1");
  const auto g = grid_data(*x);
  const std::size_t r = x->num_rays();

  SweepResult out;
  out.variety_name = x->name();
  out.dim = x->dim();
  out.resolution = resolution;
  out.bound = invariants::score_bound(out.dim);

  std::unordered_map<IntVec, std::size_t, KeyHash> index;
  std::vector<IntVec> first_sample;
  std::vector<std::size_t> counts;
  IntVec c(r, 1);
  std::size_t grid = 0;
  for (;;) {
    ++grid;
    if (ample(g, c)) {
      ++out.ample_samples;
      auto [it, inserted] = index.emplace(class_key(g, c), first_sample.size());
      if (inserted) {
        first_sample.push_back(c);
        counts.push_back(0);
      }
      ++counts[it->second];
    }
    // Lexicographic successor in {1..resolution}^r.
    std::size_t pos = r;
    while (pos > 0 && c[pos - 1] == static_cast<std::int64_t>(resolution)) c[--pos] = 1;
    if (pos == 0) break;
    ++c[pos - 1];
  }
  out.grid_size = grid;
  if (first_sample.empty()) {
    throw EmptyGrid("sweep of " + x->name() + " at resolution " + std::to_string(resolution) +
                    " found no ample sample");
  }

  const std::size_t total = first_sample.size();
  std::vector<std::optional<SweepClass>> evaluated(total);
  const Rational scale = make_rational(1, static_cast<long>(resolution));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      try {
        const toric::TDivisor d(x, scale * to_vec(first_sample[i]));
        auto report = invariants::score(d);
        const bool delta_ok =
            pow(report.delta, static_cast<unsigned>(out.dim)) * report.vol <= out.bound;
        evaluated[i] = SweepClass{std::move(report), counts[i], delta_ok};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
        return;
      }
    }
  };
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  out.classes.reserve(total);
  for (auto& e : evaluated) out.classes.push_back(std::move(*e));
  for (std::size_t i = 1; i < total; ++i)
    if (out.classes[i].report.score > out.classes[out.argmax].report.score) out.argmax = i;
  out.max_score = out.classes[out.argmax].report.score;
  out.gap = out.bound - out.max_score;
  return out;
}

std::vector<TheoremRow> verify_theorem(const Catalog& catalog, unsigned resolution, unsigned threads) {
  std::vector<TheoremRow> rows;
  for (const auto& entry : catalog) {
    const auto x = toric::validate(entry.fan);
    TheoremRow row{entry.name, x->dim(), is_projective_space(entry.fan), sweep_ample_cone(x, resolution, threads)};
    for (const auto& cls : row.sweep.classes) {
      const auto& r = cls.report;
      if (r.score > r.bound || !cls.delta_volume_ok) {
        throw AssertionFailure(entry.name + ": bound violated at divisor " + to_string(r.divisor.coeffs()) +
                               " (score " + to_string(r.score) + ", delta " + to_string(r.delta) + ", vol " +
                               to_string(r.vol) + ")");
      }
    }
    if (row.projective_space && row.sweep.gap != 0) {
      throw AssertionFailure(entry.name + ": projective space with nonzero gap " + to_string(row.sweep.gap));
    }
    if (!row.projective_space && row.sweep.gap <= 0) {
      throw AssertionFailure(entry.name + ": gap " + to_string(row.sweep.gap) + " at divisor " +
                             to_string(row.sweep.best().report.divisor.coeffs()) + " but the fan is not P^n");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string theorem_csv(const std::vector<TheoremRow>& rows) {
  std::ostringstream os;
  os << "variety,n,samples,max_score,max_score_decimal,gap,gap_decimal\n";
  for (const auto& r : rows) {
    os << csv_field(r.variety) << ',' << r.dim << ',' << r.sweep.ample_samples << ',' << to_string(r.sweep.max_score)
       << ',' << to_decimal(r.sweep.max_score) << ',' << to_string(r.sweep.gap) << ','
       << to_decimal(r.sweep.gap) << '\n';
  }
  return os.str();
}

std::vector<GapRow> gap_report(const std::vector<TheoremRow>& rows) {
  std::map<std::size_t, GapRow> by_dim;
  for (const auto& r : rows) {
    if (r.projective_space) continue;
    auto [it, inserted] = by_dim.try_emplace(r.dim);
    auto& g = it->second;
    ++g.entries;
    if (inserted || r.sweep.gap < g.epsilon) {
      g.dim = r.dim;
      g.epsilon = r.sweep.gap;
      g.variety = r.variety;
      g.max_score = r.sweep.max_score;
    }
  }
  std::vector<GapRow> out;
  for (auto& [dim, g] : by_dim) out.push_back(std::move(g));
  return out;
}

std::vector<GapRow> gap_report(const Catalog& catalog, unsigned resolution, unsigned threads) {
  return gap_report(verify_theorem(catalog, resolution, threads));
}

std::string gap_csv(const std::vector<GapRow>& rows, unsigned resolution) {
  std::ostringstream os;
  os << "# empirical epsilon_toric(n): smallest gap (n+1)^n - max score over non-P^n catalog entries on the "
        "resolution "
     << resolution << " grid; an exploration of grid maxima, not a proof\n";
  os << "n,epsilon_toric,epsilon_toric_decimal,variety,max_score,entries\n";
  for (const auto& g : rows) {
    os << g.dim << ',' << to_string(g.epsilon) << ',' << to_decimal(g.epsilon) << ',' << csv_field(g.variety) << ','
       << to_string(g.max_score) << ',' << g.entries << '\n';
  }
  return os.str();
}

}  // namespace torifan::harness
