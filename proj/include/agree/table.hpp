#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace agree {

// Errors thrown by table construction / enumeration preconditions.
class TableError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
class InvalidCell : public TableError {
  using TableError::TableError;
};
class EmptyTable : public TableError {
  using TableError::TableError;
};
class InvalidSize : public TableError {
  using TableError::TableError;
};
class InvalidRange : public TableError {
  using TableError::TableError;
};

// A 2x2 contingency table of rater counts.
//
//              rater B +   rater B -
//  rater A +       a           b
//  rater A -       c           d
//
// a and d are agreements (main diagonal), b and c disagreements.
// n is always derived, never stored.
struct Table2x2 {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::int64_t d = 0;

  std::int64_t n() const { return a + b + c + d; }

  // Marginals.
  std::int64_t row1() const { return a + b; }
  std::int64_t row2() const { return c + d; }
  std::int64_t col1() const { return a + c; }
  std::int64_t col2() const { return b + d; }

  bool operator==(const Table2x2&) const = default;
};

// Validating constructor: rejects negative cells and the all-zero table.
Table2x2 make_table(std::int64_t a, std::int64_t b, std::int64_t c,
                    std::int64_t d);

// Number of 2x2 tables with total n: C(n+3,3).
std::int64_t table_count(std::int64_t n);

// Sum of table_count over n in [from,to], via the closed form
// C(to+4,4) - C(from+3,4). No enumeration.
std::int64_t count_tables(std::int64_t from, std::int64_t to);

// Streams all tables with total n in lexicographic order on (a,b,c),
// d = n-a-b-c. The order is fixed so CSV outputs are diffable.
class TableEnumerator {
 public:
  explicit TableEnumerator(std::int64_t n);

  // Fills `out` with the next table; false once exhausted.
  bool next(Table2x2& out);

 private:
  std::int64_t n_;
  std::int64_t a_, b_, c_;
  bool done_ = false;
};

// Convenience: materializes all C(n+3,3) tables for one n.
std::vector<Table2x2> enumerate_tables(std::int64_t n);

// Two aligned binary rating sequences (1 = positive, 0 = negative),
// one entry per subject.
struct RatingPairs {
  std::vector<std::uint8_t> rater_a;
  std::vector<std::uint8_t> rater_b;

  std::size_t size() const { return rater_a.size(); }
};

// Expands a table to per-subject ratings: a pairs of (+,+), then b of
// (+,-), then c of (-,+), then d of (-,-).
RatingPairs untable(const Table2x2& t);

// Cross-tabulates rating pairs back into a table.
Table2x2 crosstab(const RatingPairs& p);

// Mass-concentration flags for the extreme-table panels. All thresholds
// are strict and evaluated in integer arithmetic: over 90% means
// 10*count > 9*n, under 10% means 10*count < n.
struct ExtremeProfile {
  bool cell_over_90[4] = {false, false, false, false};   // a,b,c,d
  bool cell_under_10[4] = {false, false, false, false};  // a,b,c,d
  bool diag_main_over_90 = false;                        // a+d
  bool diag_off_over_90 = false;                         // b+c
  bool row1_over_90 = false;                             // a+b
  bool row2_over_90 = false;                             // c+d
  bool col1_over_90 = false;                             // a+c
  bool col2_over_90 = false;                             // b+d
};

ExtremeProfile classify_extremes(const Table2x2& t);

// Named panel filters (the 14 extreme-table populations).
enum class ExtremeFilter {
  a_over90,
  b_over90,
  c_over90,
  d_over90,
  a_under10,
  b_under10,
  c_under10,
  d_under10,
  diag_main_over90,
  diag_off_over90,
  row1_over90,
  row2_over90,
  col1_over90,
  col2_over90,
};

inline constexpr int kExtremeFilterCount = 14;

const char* extreme_filter_name(ExtremeFilter f);
bool extreme_filter_matches(ExtremeFilter f, const ExtremeProfile& p);
// Returns false if the name is unknown.
bool extreme_filter_from_name(const std::string& name, ExtremeFilter& out);

}  // namespace agree
