#include "agree/study.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "agree/special.hpp"

namespace agree {

namespace {

inline double dd(std::int64_t v) { return static_cast<double>(v); }

constexpr int kChunk = 1024;

int idx(Scored s) { return static_cast<int>(s); }

// Unbiased bounded draw by rejection; deterministic for a given stream.
std::uint64_t draw_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) return 0;
  const std::uint64_t max = ~std::uint64_t{0};
  // largest multiple of bound representable: reject u at or above it
  const std::uint64_t limit = max - max % bound;
  std::uint64_t u;
  do {
    u = rng.next_u64();
  } while (u >= limit);
  return u % bound;
}

}  // namespace

// ---------------------------------------------------------------------------
// Study runner
// ---------------------------------------------------------------------------

std::array<bool, kScoredCount> scored_enabled(const StudyOptions& opt) {
  std::array<bool, kScoredCount> enabled{};
  if (!opt.inference) return enabled;
  const bool boot_on = opt.infer.boot.resamples > 0;
  for (int i = 0; i < kScoredCount; ++i) {
    const Scored s = static_cast<Scored>(i);
    switch (s) {
      case Scored::g:
      case Scored::ac1:
      case Scored::pi:
      case Scored::kappa:
      case Scored::r:
      case Scored::q:
        enabled[i] = true;
        break;
      default:
        enabled[i] = boot_on;
        break;
    }
  }
  return enabled;
}

DecisionSet decisions_for_table(const Table2x2& t, const InferenceConfig& cfg,
                                const std::array<bool, kScoredCount>& enabled) {
  DecisionSet out;
  out.d[idx(Scored::mn)].undirected = true;
  const bool boot_on = cfg.boot.resamples > 0;

  if (enabled[idx(Scored::g)] && t.n() >= cfg.lienert_min_n) {
    out.d[idx(Scored::g)] =
        decide(holley_guilford_g(t), lienert_u_test(t), cfg.alpha);
  }
  if (enabled[idx(Scored::kappa)]) {
    out.d[idx(Scored::kappa)] =
        decide(cohen_kappa(t), kappa_asymptotic_test(t), cfg.alpha);
  }
  if (enabled[idx(Scored::r)]) {
    out.d[idx(Scored::r)] = decide(pearson_r(t), pearson_r_test(t), cfg.alpha);
  }
  if (enabled[idx(Scored::q)]) {
    out.d[idx(Scored::q)] = decide(yule_q(t), exact_q_test(t), cfg.alpha);
  }
  if (enabled[idx(Scored::pi)]) {
    out.d[idx(Scored::pi)] = decide(scott_pi(t), scott_pi_test(t), cfg.alpha);
  }
  bool ac1_needs_boot = false;
  if (enabled[idx(Scored::ac1)]) {
    const TestResult z = ac1_z_test(t);
    if (z.status == TestStatus::degenerate) {
      ac1_needs_boot = true;
    } else {
      out.d[idx(Scored::ac1)] = decide(gwet_ac1(t), z, cfg.alpha);
    }
  }

  struct Need {
    Scored s;
    BootstrapStat stat;
  };
  std::vector<Need> needs;
  auto want = [&](Scored s, Est e) {
    if (enabled[idx(s)]) needs.push_back({s, bootstrap_stat_for(e)});
  };
  if (t.n() < cfg.lienert_min_n) want(Scored::g, Est::g);
  want(Scored::sac, Est::g);
  want(Scored::y, Est::y);
  want(Scored::b, Est::b);
  want(Scored::b_adj, Est::b_adj);
  want(Scored::f1, Est::f1);
  want(Scored::mn, Est::mn_norm);
  if (ac1_needs_boot) want(Scored::ac1, Est::ac1);

  if (needs.empty() || !boot_on) return out;

  // One independent resample stream per distinct statistic (keyed by table
  // and statistic), identical to running bootstrap_decision per estimator.
  std::vector<Est> stats;
  for (const Need& nd : needs) {
    if (std::find(stats.begin(), stats.end(), nd.stat.statistic) == stats.end())
      stats.push_back(nd.stat.statistic);
  }
  std::vector<std::vector<double>> samples(stats.size());
  std::vector<long> drops(stats.size(), 0);
  for (std::size_t k = 0; k < stats.size(); ++k) {
    auto& sample = samples[k];
    sample.reserve(static_cast<std::size_t>(cfg.boot.resamples));
    Rng rng = statistic_rng(cfg.boot.seed, t, stats[k]);
    for (long i = 0; i < cfg.boot.resamples; ++i) {
      const Table2x2 rs = bootstrap_resample(t, rng);
      const EstimateValue v = estimate_one(stats[k], rs);
      if (v.ok())
        sample.push_back(v.value);
      else
        ++drops[k];
    }
  }
  for (const Need& nd : needs) {
    const std::size_t k = static_cast<std::size_t>(
        std::find(stats.begin(), stats.end(), nd.stat.statistic) -
        stats.begin());
    out.d[idx(nd.s)] = decision_from_samples(
        estimate_one(nd.stat.statistic, t), estimate_one(nd.stat.sign_source, t),
        samples[k], drops[k], cfg.boot.resamples, cfg.boot.mass,
        nd.stat.undirected);
  }
  return out;
}

namespace {

// Tables within a stratum (fixed n, fixed s=a+d), in lexicographic (a,b,c)
// order: a = i / (n-s+1), b = i % (n-s+1).
Table2x2 stratum_table(std::int64_t n, std::int64_t s, std::int64_t i) {
  const std::int64_t off = n - s + 1;
  const std::int64_t a = i / off;
  const std::int64_t b = i % off;
  return Table2x2{a, b, n - s - b, s - a};
}

}  // namespace

std::vector<Table2x2> study_tables(const StudyOptions& opt) {
  if (opt.from < 1 || opt.from > opt.to) {
    throw InvalidRange("need 1 <= from <= to");
  }
  std::vector<Table2x2> out;
  if (opt.sample <= 0) {
    out.reserve(static_cast<std::size_t>(count_tables(opt.from, opt.to)));
    for (std::int64_t n = opt.from; n <= opt.to; ++n) {
      TableEnumerator en(n);
      Table2x2 t;
      while (en.next(t)) out.push_back(t);
    }
    return out;
  }

  struct Stratum {
    std::int64_t n, s, size;
    std::int64_t take = 0;
  };
  std::vector<Stratum> strata;
  std::int64_t total = 0;
  for (std::int64_t n = opt.from; n <= opt.to; ++n) {
    for (std::int64_t s = 0; s <= n; ++s) {
      const std::int64_t size = (s + 1) * (n - s + 1);
      strata.push_back({n, s, size});
      total += size;
    }
  }
  const std::int64_t want = std::min<std::int64_t>(opt.sample, total);

  // Proportional allocation with largest remainders.
  std::int64_t allocated = 0;
  std::vector<std::pair<std::int64_t, std::size_t>> remainders;
  for (std::size_t i = 0; i < strata.size(); ++i) {
    const std::int64_t num = want * strata[i].size;
    strata[i].take = num / total;
    allocated += strata[i].take;
    remainders.push_back({num % total, i});
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& lhs, const auto& rhs) {
              if (lhs.first != rhs.first) return lhs.first > rhs.first;
              return lhs.second < rhs.second;
            });
  for (std::size_t j = 0; allocated < want && j < remainders.size(); ++j) {
    Stratum& st = strata[remainders[j].second];
    if (st.take < st.size) {
      ++st.take;
      ++allocated;
    }
  }
  // Strata can saturate; sweep remaining capacity in order.
  for (std::size_t i = 0; allocated < want && i < strata.size(); ++i) {
    Stratum& st = strata[i];
    const std::int64_t extra =
        std::min(st.size - st.take, want - allocated);
    st.take += extra;
    allocated += extra;
  }

  out.reserve(static_cast<std::size_t>(want));
  std::vector<std::int64_t> pool;
  for (const Stratum& st : strata) {
    if (st.take == 0) continue;
    pool.resize(static_cast<std::size_t>(st.size));
    std::iota(pool.begin(), pool.end(), 0);
    Rng rng(mix_seed(opt.sample_seed, {st.n, st.s}));
    for (std::int64_t j = 0; j < st.take; ++j) {
      const std::int64_t pick =
          j + static_cast<std::int64_t>(
                  draw_below(rng, static_cast<std::uint64_t>(st.size - j)));
      std::swap(pool[static_cast<std::size_t>(j)],
                pool[static_cast<std::size_t>(pick)]);
    }
    std::vector<std::int64_t> chosen(pool.begin(), pool.begin() + st.take);
    std::sort(chosen.begin(), chosen.end());
    for (std::int64_t i : chosen) out.push_back(stratum_table(st.n, st.s, i));
  }
  std::sort(out.begin(), out.end(), [](const Table2x2& l, const Table2x2& r) {
    if (l.n() != r.n()) return l.n() < r.n();
    if (l.a != r.a) return l.a < r.a;
    if (l.b != r.b) return l.b < r.b;
    return l.c < r.c;
  });
  return out;
}

void run_study(const StudyOptions& opt,
               const std::function<void(const StudyRecord&)>& sink) {
  if (opt.inference && opt.infer.boot.resamples > 0) opt.infer.boot.validate();
  const std::vector<Table2x2> tables = study_tables(opt);
  const std::array<bool, kScoredCount> enabled = scored_enabled(opt);

  auto compute = [&](const Table2x2& t) {
    StudyRecord rec;
    rec.table = t;
    rec.est = estimate_all(t);
    if (opt.inference) {
      rec.has_decisions = true;
      rec.dec = decisions_for_table(t, opt.infer, enabled);
    }
    return rec;
  };

  const int threads = std::max(1, opt.threads);
  if (threads == 1) {
    for (const Table2x2& t : tables) sink(compute(t));
    return;
  }

  // Waves of fixed-size chunks; workers fill slots, the main thread drains
  // them in order, so output does not depend on scheduling.
  const std::size_t wave_span = static_cast<std::size_t>(threads) * kChunk;
  for (std::size_t wave = 0; wave < tables.size(); wave += wave_span) {
    std::vector<std::vector<StudyRecord>> slots(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int tid = 0; tid < threads; ++tid) {
      const std::size_t begin = wave + static_cast<std::size_t>(tid) * kChunk;
      if (begin >= tables.size()) break;
      const std::size_t end = std::min(begin + kChunk, tables.size());
      pool.emplace_back([&, begin, end, tid] {
        auto& slot = slots[static_cast<std::size_t>(tid)];
        slot.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i)
          slot.push_back(compute(tables[i]));
      });
    }
    for (std::thread& th : pool) th.join();
    for (const auto& slot : slots)
      for (const StudyRecord& rec : slot) sink(rec);
  }
}

// ---------------------------------------------------------------------------
// Benchmark H0 band
// ---------------------------------------------------------------------------

H0Band g_h0_interval(std::int64_t n, double alpha) {
  if (n < 1) throw InvalidSize("table size must be >= 1");
  H0Band band;
  std::int64_t lo = -1, hi = -1;
  for (std::int64_t s = 0; s <= n; ++s) {
    const double u = (dd(s) - dd(n) / 2.0) / std::sqrt(dd(n) / 4.0);
    if (normal_two_sided_p(u) >= alpha) {
      if (lo < 0) lo = s;
      hi = s;
    }
  }
  if (lo < 0) {
    band.empty = true;
    return band;
  }
  band.s_lo = lo;
  band.s_hi = hi;
  band.lo = dd(lo) / dd(n);
  band.hi = dd(hi) / dd(n);
  return band;
}

// ---------------------------------------------------------------------------
// Mistake counting
// ---------------------------------------------------------------------------

bool decisions_disagree(const Decision& est, const Decision& bench) {
  if (est.undirected || bench.undirected) {
    return (est.region == Region::h0) != (bench.region == Region::h0);
  }
  return est.region != bench.region;
}

MistakeCounter::MistakeCounter(Scored benchmark,
                               std::array<bool, kScoredCount> enabled)
    : benchmark_(benchmark), enabled_(enabled) {
  for (int i = 0; i < kScoredCount; ++i)
    rows_[static_cast<std::size_t>(i)].est = static_cast<Scored>(i);
}

void MistakeCounter::add(const StudyRecord& rec) {
  if (!rec.has_decisions || !enabled_[idx(benchmark_)]) {
    throw ConfigError("mistake counting requires decisions for the benchmark");
  }
  ++total_;
  const Decision& bench = rec.dec.d[idx(benchmark_)];
  if (bench.region == Region::fail) {
    ++excluded_;
    return;
  }
  for (int i = 0; i < kScoredCount; ++i) {
    if (!enabled_[i]) continue;
    MistakeRow& row = rows_[static_cast<std::size_t>(i)];
    const Decision& dec = rec.dec.d[i];
    if (dec.region == Region::fail) {
      ++row.fails;
    } else if (decisions_disagree(dec, bench)) {
      ++row.mistakes;
      switch (bench.region) {
        case Region::h1_minus: ++row.mistakes_h1minus; break;
        case Region::h0: ++row.mistakes_h0; break;
        case Region::h1_plus: ++row.mistakes_h1plus; break;
        case Region::fail: break;
      }
    } else {
      ++row.correct;
    }
  }
}

std::vector<MistakeRow> MistakeCounter::rows() const {
  std::vector<MistakeRow> out;
  for (int i = 0; i < kScoredCount; ++i) {
    if (enabled_[i]) out.push_back(rows_[static_cast<std::size_t>(i)]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Density bins
// ---------------------------------------------------------------------------

DensityAccumulator::DensityAccumulator(Scored benchmark,
                                       std::array<bool, kScoredCount> enabled,
                                       int nbins)
    : benchmark_(benchmark), enabled_(enabled), nbins_(nbins) {
  for (int i = 0; i < kScoredCount; ++i) {
    correct_[static_cast<std::size_t>(i)].assign(
        static_cast<std::size_t>(nbins_) + 1, 0);
    mistake_[static_cast<std::size_t>(i)].assign(
        static_cast<std::size_t>(nbins_) + 1, 0);
  }
}

void DensityAccumulator::add(const StudyRecord& rec) {
  if (!rec.has_decisions) throw ConfigError("density bins require decisions");
  const Decision& bench = rec.dec.d[idx(benchmark_)];
  ++total_;
  if (bench.region == Region::fail) return;
  const double po = rec.est.p_o;
  const int bin = std::min(
      nbins_, static_cast<int>(std::lround(po * static_cast<double>(nbins_))));
  for (int i = 0; i < kScoredCount; ++i) {
    if (!enabled_[i]) continue;
    const Decision& dec = rec.dec.d[i];
    if (dec.region == Region::fail) {
      ++fails_[static_cast<std::size_t>(i)];
    } else if (decisions_disagree(dec, bench)) {
      ++mistake_[static_cast<std::size_t>(i)][static_cast<std::size_t>(bin)];
    } else {
      ++correct_[static_cast<std::size_t>(i)][static_cast<std::size_t>(bin)];
    }
  }
}

std::vector<DensityCell> DensityAccumulator::cells(Scored est) const {
  std::vector<DensityCell> out;
  const auto& c = correct_[static_cast<std::size_t>(idx(est))];
  const auto& m = mistake_[static_cast<std::size_t>(idx(est))];
  for (int bin = 0; bin <= nbins_; ++bin) {
    const std::int64_t cc = c[static_cast<std::size_t>(bin)];
    const std::int64_t mm = m[static_cast<std::size_t>(bin)];
    if (cc != 0 || mm != 0) out.push_back({bin, cc, mm});
  }
  return out;
}

std::int64_t DensityAccumulator::fails(Scored est) const {
  return fails_[static_cast<std::size_t>(idx(est))];
}

// ---------------------------------------------------------------------------
// Hexbin
// ---------------------------------------------------------------------------

HexbinAccumulator::HexbinAccumulator(Est est, double x_spacing,
                                     std::optional<ExtremeFilter> filter)
    : est_(est),
      dx_(x_spacing),
      hex_radius_(x_spacing / std::sqrt(3.0)),
      filter_(filter) {}

void HexbinAccumulator::add(const Table2x2& t, const EstimateVector& v) {
  if (filter_ &&
      !extreme_filter_matches(*filter_, classify_extremes(t))) {
    return;
  }
  ++seen_;
  const EstimateValue& val = v[est_];
  if (!val.ok()) {
    ++fails_;
    return;
  }
  const double x = v[Est::g].value;
  const double y = val.value;
  // pixel -> axial (pointy-top), then cube rounding to the nearest center
  const double qf = (std::sqrt(3.0) / 3.0 * x - y / 3.0) / hex_radius_;
  const double rf = (2.0 / 3.0 * y) / hex_radius_;
  const double sf = -qf - rf;
  double q = std::round(qf), r = std::round(rf), s = std::round(sf);
  const double dq = std::abs(q - qf), drr = std::abs(r - rf),
               ds = std::abs(s - sf);
  if (dq > drr && dq > ds) {
    q = -r - s;
  } else if (drr > ds) {
    r = -q - s;
  }
  ++counts_[{static_cast<int>(q), static_cast<int>(r)}];
}

std::vector<HexCell> HexbinAccumulator::cells() const {
  std::vector<HexCell> out;
  out.reserve(counts_.size());
  for (const auto& [key, count] : counts_) {
    out.push_back({key.first, key.second, count});
  }
  std::sort(out.begin(), out.end(), [](const HexCell& l, const HexCell& r) {
    if (l.r != r.r) return l.r < r.r;
    return l.q < r.q;
  });
  return out;
}

std::pair<double, double> HexbinAccumulator::center(int q, int r) const {
  const double x = hex_radius_ * std::sqrt(3.0) * (dd(q) + dd(r) / 2.0);
  const double y = hex_radius_ * 1.5 * dd(r);
  return {x, y};
}

// ---------------------------------------------------------------------------
// Correlations
// ---------------------------------------------------------------------------

std::vector<double> midranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return v[l] < v[r]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> pearson_correlation(const std::vector<double>& x,
                                          const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 3 || y.size() != n) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ddx = x[i] - mx;
    const double ddy = y[i] - my;
    sxy += ddx * ddy;
    sxx += ddx * ddx;
    syy += ddy * ddy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

std::optional<double> spearman_correlation(const std::vector<double>& x,
                                           const std::vector<double>& y) {
  if (x.size() < 3 || y.size() != x.size()) return std::nullopt;
  return pearson_correlation(midranks(x), midranks(y));
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

CorrelationAccumulator::CorrelationAccumulator() = default;

void CorrelationAccumulator::add(const StudyRecord& rec) {
  const std::int64_t n = rec.table.n();
  if (n != current_n_) {
    if (current_n_ >= 0) flush();
    current_n_ = n;
  }
  const double g = rec.est[Est::g].value;
  for (int i = 0; i < kEstCount; ++i) {
    const EstimateValue& v = rec.est.values[static_cast<std::size_t>(i)];
    if (v.ok()) pairs_[static_cast<std::size_t>(i)].push_back({g, v.value});
  }
}

void CorrelationAccumulator::flush() {
  for (int i = 0; i < kEstCount; ++i) {
    auto& pr = pairs_[static_cast<std::size_t>(i)];
    CorrelationPerN row;
    row.n = current_n_;
    row.pairs = static_cast<std::int64_t>(pr.size());
    std::vector<double> xs, ys;
    xs.reserve(pr.size());
    ys.reserve(pr.size());
    for (const auto& [x, y] : pr) {
      xs.push_back(x);
      ys.push_back(y);
    }
    row.pearson = pearson_correlation(xs, ys);
    row.spearman = spearman_correlation(xs, ys);
    per_n_[static_cast<std::size_t>(i)].push_back(row);
    pr.clear();
  }
}

void CorrelationAccumulator::finish() {
  if (current_n_ >= 0) flush();
  current_n_ = -1;
}

const std::vector<CorrelationPerN>& CorrelationAccumulator::per_n(Est e) const {
  return per_n_[static_cast<std::size_t>(static_cast<int>(e))];
}

std::vector<CorrelationSummaryRow> CorrelationAccumulator::summary() const {
  std::vector<CorrelationSummaryRow> out;
  for (int i = 0; i < kEstCount; ++i) {
    CorrelationSummaryRow row;
    row.est = static_cast<Est>(i);
    std::vector<double> ps, ss;
    for (const CorrelationPerN& pn : per_n_[static_cast<std::size_t>(i)]) {
      if (pn.pearson)
        ps.push_back(*pn.pearson);
      else
        ++row.n_excluded_pearson;
      if (pn.spearman)
        ss.push_back(*pn.spearman);
      else
        ++row.n_excluded_spearman;
    }
    row.n_used_pearson = static_cast<int>(ps.size());
    row.n_used_spearman = static_cast<int>(ss.size());
    if (!ps.empty()) {
      row.pearson_median = median(ps);
      auto hd = hdi(ps, 0.95);
      if (hd) {
        row.pearson_lo = hd->first;
        row.pearson_hi = hd->second;
      }
    }
    if (!ss.empty()) {
      row.spearman_median = median(ss);
      auto hd = hdi(ss, 0.95);
      if (hd) {
        row.spearman_lo = hd->first;
        row.spearman_hi = hd->second;
      }
    }
    out.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Benchmark selection
// ---------------------------------------------------------------------------

BenchmarkRanking::BenchmarkRanking(std::array<bool, kScoredCount> enabled)
    : enabled_(enabled) {
  band_lo_.fill(2.0);
  band_hi_.fill(-1.0);
}

void BenchmarkRanking::add(const StudyRecord& rec) {
  if (!rec.has_decisions) {
    throw ConfigError("benchmark ranking requires decisions");
  }
  ++total_;
  for (int c = 0; c < kScoredCount; ++c) {
    if (!enabled_[c]) continue;
    const Decision& cand = rec.dec.d[c];
    if (cand.region == Region::fail) {
      ++excluded_[static_cast<std::size_t>(c)];
      continue;
    }
    if (cand.region == Region::h0) {
      band_lo_[static_cast<std::size_t>(c)] =
          std::min(band_lo_[static_cast<std::size_t>(c)], rec.est.p_o);
      band_hi_[static_cast<std::size_t>(c)] =
          std::max(band_hi_[static_cast<std::size_t>(c)], rec.est.p_o);
    }
    for (int e = 0; e < kScoredCount; ++e) {
      if (!enabled_[e] || e == c) continue;
      const Decision& dec = rec.dec.d[e];
      if (dec.region == Region::fail) continue;
      if (decisions_disagree(dec, cand)) {
        ++mistakes_[static_cast<std::size_t>(c)][static_cast<std::size_t>(e)];
      }
    }
  }
}

std::vector<BenchmarkScore> BenchmarkRanking::ranking() const {
  std::vector<BenchmarkScore> out;
  for (int c = 0; c < kScoredCount; ++c) {
    if (!enabled_[c]) continue;
    BenchmarkScore sc;
    sc.candidate = static_cast<Scored>(c);
    sc.excluded = excluded_[static_cast<std::size_t>(c)];
    sc.decided = total_ - sc.excluded;
    if (sc.decided > 0) {
      double sum = 0.0;
      int terms = 0;
      for (int e = 0; e < kScoredCount; ++e) {
        if (!enabled_[e] || e == c) continue;
        sum += dd(mistakes_[static_cast<std::size_t>(c)]
                           [static_cast<std::size_t>(e)]) /
               dd(sc.decided);
        ++terms;
      }
      sc.mean_mistake_rate = terms > 0 ? sum / terms : 0.0;
    }
    if (band_hi_[static_cast<std::size_t>(c)] >=
        band_lo_[static_cast<std::size_t>(c)]) {
      sc.band_lo = band_lo_[static_cast<std::size_t>(c)];
      sc.band_hi = band_hi_[static_cast<std::size_t>(c)];
      sc.band_width = sc.band_hi - sc.band_lo;
      sc.band_center = (sc.band_hi + sc.band_lo) / 2.0;
    }
    out.push_back(sc);
  }
  std::sort(out.begin(), out.end(),
            [](const BenchmarkScore& l, const BenchmarkScore& r) {
              const bool l_dead = l.decided == 0, r_dead = r.decided == 0;
              if (l_dead != r_dead) return r_dead;
              if (l.mean_mistake_rate != r.mean_mistake_rate)
                return l.mean_mistake_rate < r.mean_mistake_rate;
              return static_cast<int>(l.candidate) <
                     static_cast<int>(r.candidate);
            });
  return out;
}

}  // namespace agree
