#include "agree/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "agree/version.hpp"

namespace agree {

std::string fmt_double(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt_fixed5(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.5f", v);
  return buf;
}

std::string fmt_value(const EstimateValue& v) {
  return v.ok() ? fmt_double(v.value) : "NA";
}

std::string fmt_value_human(const EstimateValue& v) {
  return v.ok() ? fmt_fixed5(v.value) : "div/0";
}

std::string fmt_decision(const Decision& d) {
  switch (d.region) {
    case Region::h1_minus: return "-1";
    case Region::h0: return "0";
    case Region::h1_plus: return "1";
    case Region::fail: return "NA";
  }
  return "NA";
}

void Provenance::add(const std::string& key, const std::string& value) {
  entries.push_back({key, value});
}

void Provenance::write(std::ostream& os) const {
  for (const auto& [key, value] : entries) {
    os << "# " << key << ": " << value << "\n";
  }
}

Provenance study_provenance(const StudyOptions& opt,
                            const std::string& subcommand) {
  Provenance p;
  p.add("tool", std::string("agree2x2 ") + kVersion);
  p.add("subcommand", subcommand);
  p.add("from", std::to_string(opt.from));
  p.add("to", std::to_string(opt.to));
  p.add("inference", opt.inference ? "true" : "false");
  p.add("alpha", fmt_double(opt.infer.alpha));
  p.add("boot", std::to_string(opt.infer.boot.resamples));
  p.add("seed", std::to_string(opt.infer.boot.seed));
  p.add("mass", fmt_double(opt.infer.boot.mass));
  p.add("benchmark", scored_name(opt.benchmark));
  if (opt.sample > 0) {
    p.add("sample", std::to_string(opt.sample));
    p.add("sample_seed", std::to_string(opt.sample_seed));
  }
  return p;
}

const char* const kTableCsvHeader = "n,a,b,c,d";

void write_table_row(std::ostream& os, const Table2x2& t) {
  os << t.n() << ',' << t.a << ',' << t.b << ',' << t.c << ',' << t.d << '\n';
}

StudyCsvWriter::StudyCsvWriter(std::ostream& os, const Provenance& prov,
                               const std::array<bool, kScoredCount>& enabled,
                               bool with_decisions)
    : os_(os), enabled_(enabled), with_decisions_(with_decisions) {
  prov.write(os_);
  if (with_decisions_) {
    os_ << "# decisions: 1=H1+, 0=H0, -1=H1-, NA=fail; mn is undirected "
           "(1=reject)\n";
  }
  os_ << kTableCsvHeader << ",po,pc";
  for (int i = 0; i < kEstCount; ++i) os_ << ',' << est_name(static_cast<Est>(i));
  if (with_decisions_) {
    for (int i = 0; i < kScoredCount; ++i) {
      if (enabled_[static_cast<std::size_t>(i)])
        os_ << ",dec_" << scored_name(static_cast<Scored>(i));
    }
  }
  os_ << '\n';
}

void StudyCsvWriter::write(const StudyRecord& rec) {
  const Table2x2& t = rec.table;
  os_ << t.n() << ',' << t.a << ',' << t.b << ',' << t.c << ',' << t.d << ','
      << fmt_double(rec.est.p_o) << ',' << fmt_double(rec.est.p_c);
  for (int i = 0; i < kEstCount; ++i) {
    os_ << ',' << fmt_value(rec.est.values[static_cast<std::size_t>(i)]);
  }
  if (with_decisions_) {
    for (int i = 0; i < kScoredCount; ++i) {
      if (enabled_[static_cast<std::size_t>(i)])
        os_ << ',' << fmt_decision(rec.dec.d[static_cast<std::size_t>(i)]);
    }
  }
  os_ << '\n';
}

void write_mistakes_csv(std::ostream& os, const Provenance& prov,
                        const MistakeCounter& mc) {
  prov.write(os);
  os << "# total tables: " << mc.total() << "\n";
  os << "# benchmark-failed tables excluded: " << mc.benchmark_excluded()
     << "\n";
  os << "estimator,correct,mistakes,fails,mistakes_h1minus,mistakes_h0,"
        "mistakes_h1plus,prop_correct,prop_mistakes,prop_fails\n";
  const double total = static_cast<double>(mc.total());
  for (const MistakeRow& row : mc.rows()) {
    os << scored_name(row.est) << ',' << row.correct << ',' << row.mistakes
       << ',' << row.fails << ',' << row.mistakes_h1minus << ','
       << row.mistakes_h0 << ',' << row.mistakes_h1plus << ','
       << fmt_double(total > 0 ? row.correct / total : 0.0) << ','
       << fmt_double(total > 0 ? row.mistakes / total : 0.0) << ','
       << fmt_double(total > 0 ? row.fails / total : 0.0) << '\n';
  }
}

void write_density_csv(std::ostream& os, const Provenance& prov,
                       const DensityAccumulator& da,
                       const std::array<bool, kScoredCount>& enabled,
                       const H0Band& band) {
  prov.write(os);
  os << "# benchmark H0 band (po): [" << fmt_double(band.lo) << ","
     << fmt_double(band.hi) << "]\n";
  os << "# bins: " << da.nbins() << " (bin center = bin/" << da.nbins()
     << ")\n";
  os << "estimator,bin,po_center,correct,mistakes,correct_mass,mistake_mass\n";
  const double total = static_cast<double>(da.total());
  for (int i = 0; i < kScoredCount; ++i) {
    if (!enabled[static_cast<std::size_t>(i)]) continue;
    const Scored est = static_cast<Scored>(i);
    for (const DensityCell& cell : da.cells(est)) {
      os << scored_name(est) << ',' << cell.bin << ','
         << fmt_double(static_cast<double>(cell.bin) / da.nbins()) << ','
         << cell.correct << ',' << cell.mistake << ','
         << fmt_double(total > 0 ? cell.correct / total : 0.0) << ','
         << fmt_double(total > 0 ? cell.mistake / total : 0.0) << '\n';
    }
  }
}

void write_hexbin_csv(std::ostream& os, const Provenance& prov,
                      const std::vector<HexbinAccumulator>& grids) {
  prov.write(os);
  for (const HexbinAccumulator& grid : grids) {
    const std::int64_t computable = grid.seen() - grid.uncomputable();
    os << "# " << est_name(grid.estimator()) << ": tables="
       << grid.seen() << " computable=" << computable
       << " uncomputable_fraction="
       << fmt_double(grid.seen() > 0
                         ? static_cast<double>(grid.uncomputable()) /
                               static_cast<double>(grid.seen())
                         : 0.0)
       << "\n";
  }
  os << "estimator,filter,q,r,x,y,count\n";
  for (const HexbinAccumulator& grid : grids) {
    const std::string filter =
        grid.filter() ? extreme_filter_name(*grid.filter()) : "none";
    for (const HexCell& cell : grid.cells()) {
      const auto [x, y] = grid.center(cell.q, cell.r);
      os << est_name(grid.estimator()) << ',' << filter << ',' << cell.q << ','
         << cell.r << ',' << fmt_double(x) << ',' << fmt_double(y) << ','
         << cell.count << '\n';
    }
  }
}

void write_correlations_csv(std::ostream& os, const Provenance& prov,
                            const CorrelationAccumulator& corr) {
  prov.write(os);
  os << "# per-n Pearson/Spearman correlation against g, pairwise-complete; "
        "median and 95% HDI across n\n";
  os << "estimator,pearson_median,pearson_hdi_lo,pearson_hdi_hi,"
        "spearman_median,spearman_hdi_lo,spearman_hdi_hi,"
        "n_used_pearson,n_excluded_pearson,n_used_spearman,"
        "n_excluded_spearman\n";
  auto opt_fmt = [](const std::optional<double>& v) {
    return v ? fmt_double(*v) : std::string("NA");
  };
  for (const CorrelationSummaryRow& row : corr.summary()) {
    os << est_name(row.est) << ',' << opt_fmt(row.pearson_median) << ','
       << opt_fmt(row.pearson_lo) << ',' << opt_fmt(row.pearson_hi) << ','
       << opt_fmt(row.spearman_median) << ',' << opt_fmt(row.spearman_lo)
       << ',' << opt_fmt(row.spearman_hi) << ',' << row.n_used_pearson << ','
       << row.n_excluded_pearson << ',' << row.n_used_spearman << ','
       << row.n_excluded_spearman << '\n';
  }
}

void write_correlations_by_n_csv(std::ostream& os, const Provenance& prov,
                                 const CorrelationAccumulator& corr) {
  prov.write(os);
  os << "estimator,n,pairs,pearson,spearman\n";
  auto opt_fmt = [](const std::optional<double>& v) {
    return v ? fmt_double(*v) : std::string("NA");
  };
  for (int i = 0; i < kEstCount; ++i) {
    const Est e = static_cast<Est>(i);
    for (const CorrelationPerN& pn : corr.per_n(e)) {
      os << est_name(e) << ',' << pn.n << ',' << pn.pairs << ','
         << opt_fmt(pn.pearson) << ',' << opt_fmt(pn.spearman) << '\n';
    }
  }
}

void write_benchmark_csv(std::ostream& os, const Provenance& prov,
                         const BenchmarkRanking& ranking) {
  prov.write(os);
  os << "# mean_mistake_rate: per-estimator mistake proportions vs the "
        "candidate, averaged uniformly over estimators\n";
  os << "candidate,mean_mistake_rate,decided,excluded,band_lo,band_hi,"
        "band_width,band_center\n";
  for (const BenchmarkScore& sc : ranking.ranking()) {
    os << scored_name(sc.candidate) << ',' << fmt_double(sc.mean_mistake_rate)
       << ',' << sc.decided << ',' << sc.excluded << ','
       << fmt_double(sc.band_lo) << ',' << fmt_double(sc.band_hi) << ','
       << fmt_double(sc.band_width) << ',' << fmt_double(sc.band_center)
       << '\n';
  }
}

// ---------------------------------------------------------------------------
// Reading
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

bool StudyCsv::has_column(const std::string& name) const {
  for (const std::string& col : column_names) {
    if (col == name) return true;
  }
  return false;
}

StudyCsv read_study_csv(std::istream& is) {
  StudyCsv csv;
  std::string line;
  bool header_seen = false;
  std::vector<int> col_index;  // column -> index in names
  int idx_n = -1, idx_a = -1, idx_b = -1, idx_c = -1, idx_d = -1, idx_po = -1;

  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        std::string key = line.substr(1, colon - 1);
        std::string val = line.substr(colon + 1);
        auto trim = [](std::string& s) {
          while (!s.empty() && s.front() == ' ') s.erase(s.begin());
          while (!s.empty() && s.back() == ' ') s.pop_back();
        };
        trim(key);
        trim(val);
        csv.provenance[key] = val;
      }
      continue;
    }
    const std::vector<std::string> cells = split_csv_line(line);
    if (!header_seen) {
      header_seen = true;
      csv.column_names = cells;
      // first match only: the estimator column "b" would otherwise shadow
      // the table cell column of the same name
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == "n" && idx_n < 0) idx_n = static_cast<int>(i);
        else if (cells[i] == "a" && idx_a < 0) idx_a = static_cast<int>(i);
        else if (cells[i] == "b" && idx_b < 0) idx_b = static_cast<int>(i);
        else if (cells[i] == "c" && idx_c < 0) idx_c = static_cast<int>(i);
        else if (cells[i] == "d" && idx_d < 0) idx_d = static_cast<int>(i);
        else if (cells[i] == "po" && idx_po < 0) idx_po = static_cast<int>(i);
      }
      if (idx_n < 0 || idx_a < 0 || idx_b < 0 || idx_c < 0 || idx_d < 0) {
        throw IoError("study CSV is missing the n,a,b,c,d columns");
      }
      continue;
    }
    StudyCsvRow row;
    row.table = Table2x2{std::stoll(cells[static_cast<std::size_t>(idx_a)]),
                         std::stoll(cells[static_cast<std::size_t>(idx_b)]),
                         std::stoll(cells[static_cast<std::size_t>(idx_c)]),
                         std::stoll(cells[static_cast<std::size_t>(idx_d)])};
    if (idx_po >= 0) row.po = std::stod(cells[static_cast<std::size_t>(idx_po)]);
    for (std::size_t i = 0; i < cells.size() && i < csv.column_names.size();
         ++i) {
      const std::string& name = csv.column_names[i];
      if (name == "n" || name == "a" || name == "b" || name == "c" ||
          name == "d")
        continue;
      if (cells[i] == "NA") {
        row.columns[name] = std::nullopt;
      } else {
        row.columns[name] = std::stod(cells[i]);
      }
    }
    csv.rows.push_back(std::move(row));
  }
  if (!header_seen) throw IoError("study CSV has no header line");
  return csv;
}

}  // namespace agree
