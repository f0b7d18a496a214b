#include <doctest.h>

#include "agree/challenge.hpp"
#include "agree/csv.hpp"
#include "challenge_reference.hpp"

using namespace agree;

namespace {

std::string expected_cell(int set, int col, int row) {
  const auto& ref = set == 0 ? testdata::regular_reference()
                             : testdata::extreme_reference();
  for (const testdata::Discrepancy& d : testdata::discrepancies()) {
    if (d.set == set && d.column == col && d.row == row) return d.computed;
  }
  return ref[static_cast<std::size_t>(col)][static_cast<std::size_t>(row)];
}

void check_set(ChallengeSet set, int set_id) {
  const auto& columns = challenge_columns(set);
  const auto& rows = challenge_rows();
  const auto& ref = set_id == 0 ? testdata::regular_reference()
                                : testdata::extreme_reference();
  REQUIRE(columns.size() == ref.size());
  REQUIRE(rows.size() == testdata::kRows);
  for (std::size_t col = 0; col < columns.size(); ++col) {
    for (std::size_t row = 0; row < rows.size(); ++row) {
      const EstimateValue v = estimate_one(rows[row], columns[col].table);
      const std::string got = fmt_value_human(v);
      const std::string want =
          expected_cell(set_id, static_cast<int>(col), static_cast<int>(row));
      INFO("set ", set_id, " column ", col, " (", columns[col].table.a, ",",
           columns[col].table.b, ",", columns[col].table.c, ",",
           columns[col].table.d, ") row ", est_name(rows[row]));
      CHECK(got == want);
    }
  }
}

}  // namespace

TEST_CASE("regular challenge set matches the reference at 5 decimals") {
  check_set(ChallengeSet::regular, 0);
}

TEST_CASE("extreme challenge set matches the reference at 5 decimals") {
  check_set(ChallengeSet::extreme, 1);
}

TEST_CASE("fixture shapes") {
  CHECK(challenge_columns(ChallengeSet::regular).size() == 9);
  CHECK(challenge_columns(ChallengeSet::extreme).size() == 8);
  CHECK(challenge_rows().size() == 13);
}

TEST_CASE("every documented discrepancy is a real divergence in kappa_corrected") {
  for (const testdata::Discrepancy& d : testdata::discrepancies()) {
    CHECK(std::string(d.reference) != std::string(d.computed));
    const auto& columns = challenge_columns(
        d.set == 0 ? ChallengeSet::regular : ChallengeSet::extreme);
    const Table2x2 t = columns[static_cast<std::size_t>(d.column)].table;
    // the row in question is kappa_corrected
    CHECK(challenge_rows()[static_cast<std::size_t>(d.row)] ==
          Est::kappa_corrected);
    CHECK(fmt_value_human(kappa_corrected(t)) == d.computed);
    // and the published print there is kappa_max, reused as its golden
    CHECK(fmt_value_human(kappa_max(t)) == d.reference);
  }
  for (const testdata::KappaMaxGolden& g : testdata::kappa_max_goldens()) {
    const auto& columns = challenge_columns(
        g.set == 0 ? ChallengeSet::regular : ChallengeSet::extreme);
    CHECK(fmt_value_human(
              kappa_max(columns[static_cast<std::size_t>(g.column)].table)) ==
          g.value);
  }
}
