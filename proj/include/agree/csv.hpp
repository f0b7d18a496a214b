#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agree/study.hpp"

namespace agree {

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal text for a double ("NA" handling is layered
// on top). Negative zero prints as "0".
std::string fmt_double(double v);
// Fixed 5-decimal format used by the human-readable tables.
std::string fmt_fixed5(double v);
// A value or the CSV fail marker "NA".
std::string fmt_value(const EstimateValue& v);
// A value or the human-readable fail marker "div/0".
std::string fmt_value_human(const EstimateValue& v);
// Decision to CSV: 1 / 0 / -1 / NA. Undirected rejections serialize as 1.
std::string fmt_decision(const Decision& d);

// Key/value lines echoed at the top of every output file as `# key: value`.
// Keys identifying the run configuration only; nothing scheduling-dependent
// (thread counts) or path-dependent goes in, so reruns stay byte-identical.
struct Provenance {
  std::vector<std::pair<std::string, std::string>> entries;

  void add(const std::string& key, const std::string& value);
  void write(std::ostream& os) const;
};

Provenance study_provenance(const StudyOptions& opt, const std::string& subcommand);

// Enumeration CSV: header n,a,b,c,d then one row per table.
void write_table_row(std::ostream& os, const Table2x2& t);
extern const char* const kTableCsvHeader;

// Study CSV: n,a,b,c,d,po,pc,<estimators>,<dec_* for enabled estimators>.
class StudyCsvWriter {
 public:
  StudyCsvWriter(std::ostream& os, const Provenance& prov,
                 const std::array<bool, kScoredCount>& enabled_decisions,
                 bool with_decisions);

  void write(const StudyRecord& rec);

 private:
  std::ostream& os_;
  std::array<bool, kScoredCount> enabled_;
  bool with_decisions_;
};

void write_mistakes_csv(std::ostream& os, const Provenance& prov,
                        const MistakeCounter& mc);
void write_density_csv(std::ostream& os, const Provenance& prov,
                       const DensityAccumulator& da,
                       const std::array<bool, kScoredCount>& enabled,
                       const H0Band& band);
void write_hexbin_csv(std::ostream& os, const Provenance& prov,
                      const std::vector<HexbinAccumulator>& grids);
void write_correlations_csv(std::ostream& os, const Provenance& prov,
                            const CorrelationAccumulator& corr);
void write_correlations_by_n_csv(std::ostream& os, const Provenance& prov,
                                 const CorrelationAccumulator& corr);
void write_benchmark_csv(std::ostream& os, const Provenance& prov,
                         const BenchmarkRanking& ranking);

// ---------------------------------------------------------------------------
// Reading a study CSV back (for plotting)
// ---------------------------------------------------------------------------

struct StudyCsvRow {
  Table2x2 table;
  double po = 0.0;
  std::map<std::string, std::optional<double>> columns;  // NA -> nullopt
};

struct StudyCsv {
  std::map<std::string, std::string> provenance;
  std::vector<std::string> column_names;
  std::vector<StudyCsvRow> rows;

  bool has_column(const std::string& name) const;
};

StudyCsv read_study_csv(std::istream& is);

}  // namespace agree
