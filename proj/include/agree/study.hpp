#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agree/estimators.hpp"
#include "agree/inference.hpp"
#include "agree/table.hpp"

namespace agree {

class ConfigError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Study runner
// ---------------------------------------------------------------------------

struct StudyOptions {
  std::int64_t from = 1;
  std::int64_t to = 1;
  bool inference = true;
  InferenceConfig infer;
  Scored benchmark = Scored::g;
  int threads = 1;
  // 0 runs every table; otherwise a stratified random subsample of this
  // size (strata are (n, a+d) classes, selection keyed by sample_seed).
  long sample = 0;
  std::uint64_t sample_seed = 0;
};

struct DecisionSet {
  std::array<Decision, kScoredCount> d{};
};

struct StudyRecord {
  Table2x2 table;
  EstimateVector est;
  bool has_decisions = false;
  DecisionSet dec;
};

// Scored estimators evaluated under this configuration. With bootstrap
// disabled only the asymptotic/exact tests run (g, ac1, kappa, r, q); g
// still fails below the Lienert range and ac1 on degenerate variance.
std::array<bool, kScoredCount> scored_enabled(const StudyOptions& opt);

// All decisions for one table (batched: one resample stream shared by
// every bootstrap statistic, identical to per-estimator bootstrap_decision).
DecisionSet decisions_for_table(const Table2x2& t, const InferenceConfig& cfg,
                                const std::array<bool, kScoredCount>& enabled);

// The tables a study visits, in (n, lexicographic) order; applies the
// stratified subsample when requested.
std::vector<Table2x2> study_tables(const StudyOptions& opt);

// Streams one record per table in deterministic (n, a, b, c) order
// regardless of thread count.
void run_study(const StudyOptions& opt,
               const std::function<void(const StudyRecord&)>& sink);

// ---------------------------------------------------------------------------
// Benchmark H0 band
// ---------------------------------------------------------------------------

struct H0Band {
  std::int64_t s_lo = 0;  // smallest a+d retaining H0
  std::int64_t s_hi = 0;  // largest a+d retaining H0
  double lo = 0.0;        // s_lo/n
  double hi = 0.0;        // s_hi/n
  bool empty = false;     // no a+d retains H0 (tiny n)
};

// Retention band of the Lienert G test at this n and alpha.
H0Band g_h0_interval(std::int64_t n, double alpha);

// ---------------------------------------------------------------------------
// Aggregations (all associative; counts are exact integers)
// ---------------------------------------------------------------------------

struct MistakeRow {
  Scored est;
  std::int64_t correct = 0;
  std::int64_t mistakes = 0;
  std::int64_t fails = 0;
  // mistakes split by the benchmark's region
  std::int64_t mistakes_h1minus = 0;
  std::int64_t mistakes_h0 = 0;
  std::int64_t mistakes_h1plus = 0;
};

class MistakeCounter {
 public:
  MistakeCounter(Scored benchmark, std::array<bool, kScoredCount> enabled);

  void add(const StudyRecord& rec);

  std::int64_t total() const { return total_; }
  std::int64_t benchmark_excluded() const { return excluded_; }
  std::vector<MistakeRow> rows() const;
  Scored benchmark() const { return benchmark_; }

 private:
  Scored benchmark_;
  std::array<bool, kScoredCount> enabled_;
  std::array<MistakeRow, kScoredCount> rows_{};
  std::int64_t total_ = 0;
  std::int64_t excluded_ = 0;
};

// Whether two decisions disagree for mistake counting. Undirected
// decisions (MN) are compared on the reject/retain partition only.
bool decisions_disagree(const Decision& est, const Decision& bench);

struct DensityCell {
  int bin = 0;           // center bin/nbins
  std::int64_t correct = 0;
  std::int64_t mistake = 0;
};

// Histograms of table occurrence over p_o, split correct/mistake against
// the benchmark. Bin k covers p_o near k/nbins (nearest-center binning, one
// bin per attainable a+d when nbins = n).
class DensityAccumulator {
 public:
  DensityAccumulator(Scored benchmark, std::array<bool, kScoredCount> enabled,
                     int nbins);

  void add(const StudyRecord& rec);

  int nbins() const { return nbins_; }
  std::int64_t total() const { return total_; }
  // cells with any mass for one estimator, ordered by bin
  std::vector<DensityCell> cells(Scored est) const;
  std::int64_t fails(Scored est) const;

 private:
  Scored benchmark_;
  std::array<bool, kScoredCount> enabled_;
  int nbins_;
  std::int64_t total_ = 0;
  std::array<std::vector<std::int64_t>, kScoredCount> correct_;
  std::array<std::vector<std::int64_t>, kScoredCount> mistake_;
  std::array<std::int64_t, kScoredCount> fails_{};
};

// Pointy-top hexagonal binning of (x = G, y = estimator value) pairs.
// 40 bins across x in [-1,1] (center-to-center spacing 0.05).
struct HexCell {
  int q = 0;
  int r = 0;
  std::int64_t count = 0;
};

class HexbinAccumulator {
 public:
  HexbinAccumulator(Est est, double x_spacing = 0.05,
                    std::optional<ExtremeFilter> filter = std::nullopt);

  void add(const Table2x2& t, const EstimateVector& v);

  Est estimator() const { return est_; }
  double x_spacing() const { return dx_; }
  std::optional<ExtremeFilter> filter() const { return filter_; }
  std::int64_t seen() const { return seen_; }          // tables passing filter
  std::int64_t uncomputable() const { return fails_; }  // estimator failed
  std::vector<HexCell> cells() const;                   // sorted by (r,q)
  // center of a hex in data coordinates
  std::pair<double, double> center(int q, int r) const;

 private:
  Est est_;
  double dx_;
  double hex_radius_;
  std::optional<ExtremeFilter> filter_;
  std::int64_t seen_ = 0;
  std::int64_t fails_ = 0;
  std::map<std::pair<int, int>, std::int64_t> counts_;
};

// Per-n Pearson/Spearman correlation of each estimator against G with
// pairwise-complete deletion, then median and 95% HDI across n.
struct CorrelationPerN {
  std::int64_t n = 0;
  std::int64_t pairs = 0;       // complete pairs
  std::optional<double> pearson;
  std::optional<double> spearman;
};

struct CorrelationSummaryRow {
  Est est;
  std::optional<double> pearson_median, pearson_lo, pearson_hi;
  std::optional<double> spearman_median, spearman_lo, spearman_hi;
  int n_used_pearson = 0;
  int n_used_spearman = 0;
  int n_excluded_pearson = 0;  // under 3 pairs or zero variance
  int n_excluded_spearman = 0;
};

class CorrelationAccumulator {
 public:
  CorrelationAccumulator();

  // records must arrive in ascending-n order
  void add(const StudyRecord& rec);
  void finish();

  const std::vector<CorrelationPerN>& per_n(Est e) const;
  std::vector<CorrelationSummaryRow> summary() const;

 private:
  void flush();

  std::int64_t current_n_ = -1;
  std::array<std::vector<std::pair<double, double>>, kEstCount> pairs_;
  std::array<std::vector<CorrelationPerN>, kEstCount> per_n_;
};

// Pearson correlation; nullopt when n < 3 or either variance is zero.
std::optional<double> pearson_correlation(const std::vector<double>& x,
                                          const std::vector<double>& y);
// Spearman with midranks for ties.
std::optional<double> spearman_correlation(const std::vector<double>& x,
                                           const std::vector<double>& y);
// Midranks (average rank for ties), 1-based.
std::vector<double> midranks(const std::vector<double>& v);

// Median of an unsorted sample (average of the two middle values when even).
double median(std::vector<double> v);

// ---------------------------------------------------------------------------
// Benchmark selection
// ---------------------------------------------------------------------------

struct BenchmarkScore {
  Scored candidate;
  double mean_mistake_rate = 0.0;  // mean over the other estimators
  std::int64_t decided = 0;        // tables where the candidate decided
  std::int64_t excluded = 0;       // tables where the candidate failed
  double band_lo = 1.0, band_hi = 0.0;  // p_o range of its H0 decisions
  double band_width = 0.0, band_center = 0.0;
};

class BenchmarkRanking {
 public:
  explicit BenchmarkRanking(std::array<bool, kScoredCount> enabled);

  void add(const StudyRecord& rec);
  // sorted best (lowest mean mistake rate) first; candidates that never
  // decide rank last
  std::vector<BenchmarkScore> ranking() const;

 private:
  std::array<bool, kScoredCount> enabled_;
  std::int64_t total_ = 0;
  std::array<std::array<std::int64_t, kScoredCount>, kScoredCount> mistakes_{};
  std::array<std::int64_t, kScoredCount> excluded_{};
  std::array<double, kScoredCount> band_lo_;
  std::array<double, kScoredCount> band_hi_;
};

}  // namespace agree
