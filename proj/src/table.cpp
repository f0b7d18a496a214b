#include "agree/table.hpp"

namespace agree {

Table2x2 make_table(std::int64_t a, std::int64_t b, std::int64_t c,
                    std::int64_t d) {
  if (a < 0 || b < 0 || c < 0 || d < 0) {
    throw InvalidCell("cell counts must be non-negative, got (" +
                      std::to_string(a) + "," + std::to_string(b) + "," +
                      std::to_string(c) + "," + std::to_string(d) + ")");
  }
  if (a + b + c + d == 0) {
    throw EmptyTable("all four cells are zero");
  }
  return Table2x2{a, b, c, d};
}

namespace {

// C(n,k) for small fixed k, overflow-safe for the sizes used here.
std::int64_t binom_small(std::int64_t n, int k) {
  if (n < k) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact at each step: product of i consecutive ints
  }
  return r;
}

}  // namespace

std::int64_t table_count(std::int64_t n) {
  if (n < 1) throw InvalidSize("table size must be >= 1, got " + std::to_string(n));
  return binom_small(n + 3, 3);
}

std::int64_t count_tables(std::int64_t from, std::int64_t to) {
  if (from < 1 || from > to) {
    throw InvalidRange("need 1 <= from <= to, got [" + std::to_string(from) +
                       "," + std::to_string(to) + "]");
  }
  return binom_small(to + 4, 4) - binom_small(from + 3, 4);
}

TableEnumerator::TableEnumerator(std::int64_t n) : n_(n), a_(0), b_(0), c_(0) {
  if (n < 1) throw InvalidSize("table size must be >= 1, got " + std::to_string(n));
}

bool TableEnumerator::next(Table2x2& out) {
  if (done_) return false;
  out = Table2x2{a_, b_, c_, n_ - a_ - b_ - c_};
  // advance (a,b,c) lexicographically within a+b+c <= n
  if (c_ < n_ - a_ - b_) {
    ++c_;
  } else if (b_ < n_ - a_) {
    ++b_;
    c_ = 0;
  } else if (a_ < n_) {
    ++a_;
    b_ = 0;
    c_ = 0;
  } else {
    done_ = true;
  }
  return true;
}

std::vector<Table2x2> enumerate_tables(std::int64_t n) {
  std::vector<Table2x2> out;
  out.reserve(static_cast<std::size_t>(table_count(n)));
  TableEnumerator en(n);
  Table2x2 t;
  while (en.next(t)) out.push_back(t);
  return out;
}

RatingPairs untable(const Table2x2& t) {
  RatingPairs p;
  const std::size_t n = static_cast<std::size_t>(t.n());
  p.rater_a.reserve(n);
  p.rater_b.reserve(n);
  auto emit = [&](std::int64_t count, std::uint8_t ra, std::uint8_t rb) {
    for (std::int64_t i = 0; i < count; ++i) {
      p.rater_a.push_back(ra);
      p.rater_b.push_back(rb);
    }
  };
  emit(t.a, 1, 1);
  emit(t.b, 1, 0);
  emit(t.c, 0, 1);
  emit(t.d, 0, 0);
  return p;
}

Table2x2 crosstab(const RatingPairs& p) {
  Table2x2 t;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const bool pa = p.rater_a[i] != 0;
    const bool pb = p.rater_b[i] != 0;
    if (pa && pb)
      ++t.a;
    else if (pa)
      ++t.b;
    else if (pb)
      ++t.c;
    else
      ++t.d;
  }
  return t;
}

ExtremeProfile classify_extremes(const Table2x2& t) {
  const std::int64_t n = t.n();
  auto over90 = [n](std::int64_t x) { return 10 * x > 9 * n; };
  auto under10 = [n](std::int64_t x) { return 10 * x < n; };

  ExtremeProfile p;
  const std::int64_t cells[4] = {t.a, t.b, t.c, t.d};
  for (int i = 0; i < 4; ++i) {
    p.cell_over_90[i] = over90(cells[i]);
    p.cell_under_10[i] = under10(cells[i]);
  }
  p.diag_main_over_90 = over90(t.a + t.d);
  p.diag_off_over_90 = over90(t.b + t.c);
  p.row1_over_90 = over90(t.row1());
  p.row2_over_90 = over90(t.row2());
  p.col1_over_90 = over90(t.col1());
  p.col2_over_90 = over90(t.col2());
  return p;
}

namespace {
constexpr const char* kFilterNames[kExtremeFilterCount] = {
    "a_over90",         "b_over90",        "c_over90",   "d_over90",
    "a_under10",        "b_under10",       "c_under10",  "d_under10",
    "diag_main_over90", "diag_off_over90", "row1_over90", "row2_over90",
    "col1_over90",      "col2_over90",
};
}  // namespace

const char* extreme_filter_name(ExtremeFilter f) {
  return kFilterNames[static_cast<int>(f)];
}

bool extreme_filter_matches(ExtremeFilter f, const ExtremeProfile& p) {
  switch (f) {
    case ExtremeFilter::a_over90: return p.cell_over_90[0];
    case ExtremeFilter::b_over90: return p.cell_over_90[1];
    case ExtremeFilter::c_over90: return p.cell_over_90[2];
    case ExtremeFilter::d_over90: return p.cell_over_90[3];
    case ExtremeFilter::a_under10: return p.cell_under_10[0];
    case ExtremeFilter::b_under10: return p.cell_under_10[1];
    case ExtremeFilter::c_under10: return p.cell_under_10[2];
    case ExtremeFilter::d_under10: return p.cell_under_10[3];
    case ExtremeFilter::diag_main_over90: return p.diag_main_over_90;
    case ExtremeFilter::diag_off_over90: return p.diag_off_over_90;
    case ExtremeFilter::row1_over90: return p.row1_over_90;
    case ExtremeFilter::row2_over90: return p.row2_over_90;
    case ExtremeFilter::col1_over90: return p.col1_over_90;
    case ExtremeFilter::col2_over90: return p.col2_over_90;
  }
  return false;
}

bool extreme_filter_from_name(const std::string& name, ExtremeFilter& out) {
  for (int i = 0; i < kExtremeFilterCount; ++i) {
    if (name == kFilterNames[i]) {
      out = static_cast<ExtremeFilter>(i);
      return true;
    }
  }
  return false;
}

}  // namespace agree
