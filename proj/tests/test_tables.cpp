#include <doctest.h>

#include <set>
#include <tuple>

#include "agree/table.hpp"

using namespace agree;

namespace {

// Independent Pascal-triangle oracle for C(n,k).
std::int64_t pascal(std::int64_t n, std::int64_t k) {
  std::vector<std::vector<std::int64_t>> tri(static_cast<std::size_t>(n) + 1);
  for (std::int64_t i = 0; i <= n; ++i) {
    tri[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 1);
    for (std::int64_t j = 1; j < i; ++j) {
      tri[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          tri[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
          tri[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
    }
  }
  return tri[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

}  // namespace

TEST_CASE("make_table validates cells") {
  const Table2x2 t = make_table(90, 10, 10, 90);
  CHECK(t.n() == 200);
  CHECK(make_table(1, 0, 0, 0).n() == 1);
  CHECK_THROWS_AS(make_table(0, 0, 0, 0), EmptyTable);
  CHECK_THROWS_AS(make_table(-1, 2, 3, 4), InvalidCell);
  CHECK_THROWS_AS(make_table(1, 2, -3, 4), InvalidCell);
}

TEST_CASE("enumeration counts and order") {
  CHECK(enumerate_tables(1).size() == 4);
  CHECK(enumerate_tables(64).size() == 47905);

  // brute-force oracle for n=2
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>>
      brute;
  for (std::int64_t a = 0; a <= 2; ++a)
    for (std::int64_t b = 0; a + b <= 2; ++b)
      for (std::int64_t c = 0; a + b + c <= 2; ++c)
        brute.insert({a, b, c, 2 - a - b - c});
  CHECK(brute.size() == 10);
  const auto tables2 = enumerate_tables(2);
  CHECK(tables2.size() == 10);
  for (const Table2x2& t : tables2) {
    CHECK(brute.count({t.a, t.b, t.c, t.d}) == 1);
  }

  // strictly increasing lexicographic key, duplicate-free, d derived
  std::tuple<std::int64_t, std::int64_t, std::int64_t> prev{-1, -1, -1};
  for (const Table2x2& t : enumerate_tables(9)) {
    const std::tuple<std::int64_t, std::int64_t, std::int64_t> key{t.a, t.b,
                                                                   t.c};
    CHECK(key > prev);
    prev = key;
    CHECK(t.n() == 9);
    CHECK(t.d >= 0);
  }

  CHECK_THROWS_AS(enumerate_tables(0), InvalidSize);
}

TEST_CASE("enumeration count law against closed form, n through 200") {
  for (std::int64_t n = 1; n <= 200; ++n) {
    TableEnumerator en(n);
    Table2x2 t;
    std::int64_t count = 0;
    while (en.next(t)) ++count;
    CHECK(count == table_count(n));
    if (n <= 60) CHECK(table_count(n) == pascal(n + 3, 3));
  }
}

TEST_CASE("count_tables closed form") {
  CHECK(count_tables(1, 68) == 1028789);
  CHECK(count_tables(64, 64) == 47905);
  CHECK(count_tables(1, 1) == 4);
  CHECK(count_tables(1, 68) - count_tables(1, 67) == pascal(71, 3));
  CHECK_THROWS_AS(count_tables(0, 5), InvalidRange);
  CHECK_THROWS_AS(count_tables(3, 2), InvalidRange);
}

TEST_CASE("untable expansion") {
  const RatingPairs p = untable({1, 1, 0, 0});
  REQUIRE(p.size() == 2);
  CHECK(p.rater_a[0] == 1);
  CHECK(p.rater_b[0] == 1);
  CHECK(p.rater_a[1] == 1);
  CHECK(p.rater_b[1] == 0);

  const RatingPairs p2 = untable({2, 0, 0, 2});
  REQUIRE(p2.size() == 4);
  CHECK(p2.rater_a == std::vector<std::uint8_t>{1, 1, 0, 0});
  CHECK(p2.rater_b == std::vector<std::uint8_t>{1, 1, 0, 0});

  const Table2x2 hoff{184, 54, 14, 63};
  const RatingPairs p3 = untable(hoff);
  CHECK(p3.size() == 315);
  CHECK(crosstab(p3) == hoff);
}

TEST_CASE("untable round-trips exhaustively through n=20") {
  for (std::int64_t n = 1; n <= 20; ++n) {
    TableEnumerator en(n);
    Table2x2 t;
    while (en.next(t)) {
      CHECK(crosstab(untable(t)) == t);
    }
  }
}

TEST_CASE("extreme-table flags use strict integer thresholds") {
  {
    const ExtremeProfile p = classify_extremes({190, 10, 0, 0});
    CHECK(p.cell_over_90[0]);   // 190/200 = 0.95
    CHECK(p.row1_over_90);      // 200/200
    CHECK(p.diag_main_over_90); // a+d = 190/200 = 0.95
    CHECK(p.col1_over_90);      // 190/200
    CHECK(p.row2_over_90 == false);
  }
  {
    // uniform table: nothing concentrated, nothing sparse
    const ExtremeProfile p = classify_extremes({50, 50, 50, 50});
    for (int i = 0; i < 4; ++i) {
      CHECK(p.cell_over_90[i] == false);
      CHECK(p.cell_under_10[i] == false);
    }
    CHECK(p.diag_main_over_90 == false);
    CHECK(p.row1_over_90 == false);
    CHECK(p.col2_over_90 == false);
  }
  {
    // boundary: 180/200 is exactly 0.9, strictly-greater must be false
    const ExtremeProfile p = classify_extremes({90, 10, 10, 90});
    CHECK(p.diag_main_over_90 == false);
    // 10/200 = 0.05 < 0.1
    CHECK(p.cell_under_10[1]);
    CHECK(p.cell_under_10[2]);
  }
  {
    // boundary: 20/200 is exactly 0.1, strictly-less must be false
    const ExtremeProfile p = classify_extremes({20, 80, 90, 10});
    CHECK(p.cell_under_10[0] == false);
    CHECK(p.cell_under_10[3] == true);  // 10/200 = 0.05
  }
}

TEST_CASE("extreme flag for main diagonal over 90") {
  const ExtremeProfile p = classify_extremes({95, 4, 5, 96});  // 191/200
  CHECK(p.diag_main_over_90);
  CHECK(p.diag_off_over_90 == false);
}

TEST_CASE("extreme filter names round-trip") {
  for (int i = 0; i < kExtremeFilterCount; ++i) {
    const ExtremeFilter f = static_cast<ExtremeFilter>(i);
    ExtremeFilter parsed;
    REQUIRE(extreme_filter_from_name(extreme_filter_name(f), parsed));
    CHECK(parsed == f);
  }
  ExtremeFilter unused;
  CHECK(extreme_filter_from_name("bogus", unused) == false);
}
