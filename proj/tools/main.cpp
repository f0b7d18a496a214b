#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "agree/challenge.hpp"
#include "agree/csv.hpp"
#include "agree/inference.hpp"
#include "agree/study.hpp"
#include "agree/svg.hpp"
#include "agree/version.hpp"

namespace {

using namespace agree;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalidTable = 2;
constexpr int kExitIo = 3;
constexpr int kExitUnknownEstimator = 4;

const char* region_name(Region r) {
  switch (r) {
    case Region::h1_minus: return "H1-";
    case Region::h0: return "H0";
    case Region::h1_plus: return "H1+";
    case Region::fail: return "fail";
  }
  return "fail";
}

std::uint64_t seed_fallback(CLI::Option* seed_opt, std::uint64_t seed) {
  if (seed_opt->count() > 0) return seed;
  if (const char* env = std::getenv("AGREE_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return seed;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  return os;
}

// ---------------------------------------------------------------------------
// compute
// ---------------------------------------------------------------------------

struct ComputeArgs {
  std::vector<std::int64_t> cells;
  bool test = false;
  double alpha = 0.05;
  long boot = 10000;
  std::uint64_t seed = 0;
  double mass = 0.95;
};

int run_compute(const ComputeArgs& args) {
  Table2x2 t;
  try {
    t = make_table(args.cells[0], args.cells[1], args.cells[2], args.cells[3]);
  } catch (const TableError& err) {
    std::cerr << "invalid table: " << err.what() << "\n";
    return kExitInvalidTable;
  }
  const EstimateVector est = estimate_all(t);

  InferenceConfig cfg;
  cfg.alpha = args.alpha;
  cfg.boot.resamples = args.boot;
  cfg.boot.seed = args.seed;
  cfg.boot.mass = args.mass;

  std::printf("# tool: agree2x2 %s\n", kVersion);
  std::printf("# table: a=%lld b=%lld c=%lld d=%lld n=%lld\n",
              static_cast<long long>(t.a), static_cast<long long>(t.b),
              static_cast<long long>(t.c), static_cast<long long>(t.d),
              static_cast<long long>(t.n()));
  if (args.test) {
    std::printf("# alpha: %s  boot: %ld  seed: %llu  mass: %s\n",
                fmt_double(args.alpha).c_str(), args.boot,
                static_cast<unsigned long long>(args.seed),
                fmt_double(args.mass).c_str());
  }
  std::printf("po %s\n", fmt_fixed5(est.p_o).c_str());
  std::printf("pc %s\n", fmt_fixed5(est.p_c).c_str());

  if (args.test) {
    std::printf("%-16s %12s  %-5s %s\n", "estimator", "value", "dec", "p");
  } else {
    std::printf("%-16s %12s\n", "estimator", "value");
  }

  auto decision_text = [&](const Decision& dec) {
    std::string p;
    if (dec.p_value) {
      p = "p=" + fmt_double(*dec.p_value);
    } else if (dec.pbin) {
      p = "pbin=" + std::to_string(*dec.pbin);
    } else {
      p = "-";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-5s %s", region_name(dec.region),
                  p.c_str());
    return std::string(buf);
  };

  for (int i = 0; i < kEstCount; ++i) {
    const Est e = static_cast<Est>(i);
    const std::string value = fmt_value_human(est[e]);
    if (!args.test) {
      std::printf("%-16s %12s\n", est_name(e), value.c_str());
      continue;
    }
    std::string dec_text = "-";
    switch (e) {
      case Est::g: dec_text = decision_text(decide_scored(Scored::g, t, cfg)); break;
      case Est::kappa: dec_text = decision_text(decide_scored(Scored::kappa, t, cfg)); break;
      case Est::pi: dec_text = decision_text(decide_scored(Scored::pi, t, cfg)); break;
      case Est::ac1: dec_text = decision_text(decide_scored(Scored::ac1, t, cfg)); break;
      case Est::q: dec_text = decision_text(decide_scored(Scored::q, t, cfg)); break;
      case Est::y: dec_text = decision_text(decide_scored(Scored::y, t, cfg)); break;
      case Est::r: dec_text = decision_text(decide_scored(Scored::r, t, cfg)); break;
      case Est::b: dec_text = decision_text(decide_scored(Scored::b, t, cfg)); break;
      case Est::b_adj: dec_text = decision_text(decide_scored(Scored::b_adj, t, cfg)); break;
      case Est::f1:
      case Est::f1_adj: dec_text = decision_text(decide_scored(Scored::f1, t, cfg)); break;
      case Est::mn_norm: dec_text = decision_text(decide_scored(Scored::mn, t, cfg)); break;
      case Est::mn_chi2:
        // exact binomial test of b vs c; undirected like MN
        dec_text = decision_text(
            decide(mcnemar_chi2(t), mcnemar_exact_test(t), cfg.alpha, true));
        break;
      default: break;
    }
    std::printf("%-16s %12s  %s\n", est_name(e), value.c_str(), dec_text.c_str());
  }
  if (args.test) {
    const Decision sac = decide_scored(Scored::sac, t, cfg);
    std::printf("%-16s %12s  %s\n", "sac", fmt_value_human(est[Est::g]).c_str(),
                decision_text(sac).c_str());
  }
  if (est[Est::kappa].ok() && std::abs(est[Est::kappa].value) <= 1.0) {
    const double k = est[Est::kappa].value;
    std::printf(
        "kappa categories: Landis-Koch=%s, Altman=%s, Fleiss=%s\n",
        classify_kappa(k, KappaScheme::landis_koch).label.c_str(),
        classify_kappa(k, KappaScheme::altman).label.c_str(),
        classify_kappa(k, KappaScheme::fleiss).label.c_str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------

int run_enumerate(std::int64_t from, std::int64_t to, const std::string& out) {
  std::int64_t expected = 0;
  try {
    expected = count_tables(from, to);
  } catch (const InvalidRange& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return kExitUsage;
  }
  try {
    std::ofstream os = open_out(out);
    Provenance prov;
    prov.add("tool", std::string("agree2x2 ") + kVersion);
    prov.add("subcommand", "enumerate");
    prov.add("from", std::to_string(from));
    prov.add("to", std::to_string(to));
    prov.write(os);
    os << kTableCsvHeader << '\n';
    std::int64_t rows = 0;
    for (std::int64_t n = from; n <= to; ++n) {
      TableEnumerator en(n);
      Table2x2 t;
      while (en.next(t)) {
        write_table_row(os, t);
        ++rows;
      }
    }
    os.flush();
    if (!os) throw IoError("write failed for " + out);
    std::printf("wrote %lld rows to %s (expected %lld)\n",
                static_cast<long long>(rows), out.c_str(),
                static_cast<long long>(expected));
  } catch (const IoError& err) {
    std::cerr << "io error: " << err.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// study
// ---------------------------------------------------------------------------

struct StudyArgs {
  StudyOptions opt;
  std::string out_dir = "study_out";
};

int run_study_cmd(const StudyArgs& args) {
  const StudyOptions& opt = args.opt;
  {
    const auto enabled = scored_enabled(opt);
    if (opt.inference &&
        !enabled[static_cast<std::size_t>(static_cast<int>(opt.benchmark))]) {
      std::cerr << "usage error: benchmark '" << scored_name(opt.benchmark)
                << "' has no decisions under this configuration (bootstrap "
                   "disabled?)\n";
      return kExitUsage;
    }
  }
  try {
    std::filesystem::create_directories(args.out_dir);
    const std::filesystem::path dir(args.out_dir);
    const Provenance prov = study_provenance(opt, "study");
    const std::array<bool, kScoredCount> enabled = scored_enabled(opt);

    std::ofstream study_os = open_out(dir / "study.csv");
    StudyCsvWriter writer(study_os, prov, enabled, opt.inference);

    MistakeCounter mistakes(opt.benchmark, enabled);
    const int nbins = static_cast<int>(std::min<std::int64_t>(opt.to, 100));
    DensityAccumulator density(opt.benchmark, enabled, nbins);
    BenchmarkRanking ranking(enabled);
    CorrelationAccumulator correlations;
    // default hexbin grids cover the [-1,1]-valued estimators; unbounded
    // ones (chi2, OR, risk ratios) stay available through `plot --kind
    // hexbin` on demand
    std::vector<HexbinAccumulator> hexbins;
    for (Est e : {Est::g, Est::kappa, Est::kappa_max, Est::kappa_corrected,
                  Est::pi, Est::ac1, Est::q, Est::y, Est::r, Est::cramer_v,
                  Est::pcc, Est::mn_norm, Est::f1, Est::f1_adj, Est::b,
                  Est::b_adj, Est::gamma}) {
      hexbins.emplace_back(e);
    }

    std::int64_t rows = 0;
    run_study(opt, [&](const StudyRecord& rec) {
      writer.write(rec);
      ++rows;
      correlations.add(rec);
      for (HexbinAccumulator& grid : hexbins) grid.add(rec.table, rec.est);
      if (rec.has_decisions) {
        mistakes.add(rec);
        density.add(rec);
        ranking.add(rec);
      }
    });
    correlations.finish();
    study_os.flush();
    if (!study_os) throw IoError("write failed for study.csv");

    {
      std::ofstream os = open_out(dir / "correlations.csv");
      write_correlations_csv(os, prov, correlations);
    }
    {
      std::ofstream os = open_out(dir / "correlations_by_n.csv");
      write_correlations_by_n_csv(os, prov, correlations);
    }
    {
      std::ofstream os = open_out(dir / "hexbin.csv");
      write_hexbin_csv(os, prov, hexbins);
    }
    if (opt.inference) {
      {
        std::ofstream os = open_out(dir / "mistakes.csv");
        write_mistakes_csv(os, prov, mistakes);
      }
      {
        std::ofstream os = open_out(dir / "density.csv");
        write_density_csv(os, prov, density, enabled,
                          g_h0_interval(opt.to, opt.infer.alpha));
      }
      {
        std::ofstream os = open_out(dir / "benchmark_ranking.csv");
        write_benchmark_csv(os, prov, ranking);
      }
    }
    std::printf("study complete: %lld tables -> %s\n",
                static_cast<long long>(rows), args.out_dir.c_str());
  } catch (const IoError& err) {
    std::cerr << "io error: " << err.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& err) {
    std::cerr << "io error: " << err.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// challenge
// ---------------------------------------------------------------------------

int run_challenge(const std::string& set_name) {
  const ChallengeSet set =
      set_name == "extreme" ? ChallengeSet::extreme : ChallengeSet::regular;
  const auto& columns = challenge_columns(set);
  std::printf("# tool: agree2x2 %s\n", kVersion);
  std::printf("# subcommand: challenge\n");
  std::printf("# set: %s\n", set_name.c_str());
  std::string labels = "# scenarios:";
  for (const ChallengeColumn& col : columns) labels += " " + col.label;
  std::printf("%s\n", labels.c_str());

  std::string header = "estimator";
  for (const ChallengeColumn& col : columns) {
    header += "," + std::to_string(col.table.a) + ":" +
              std::to_string(col.table.b) + ":" + std::to_string(col.table.c) +
              ":" + std::to_string(col.table.d);
  }
  std::printf("%s\n", header.c_str());
  for (Est row : challenge_rows()) {
    std::string line = est_name(row);
    for (const ChallengeColumn& col : columns) {
      line += "," + fmt_value_human(estimate_one(row, col.table));
    }
    std::printf("%s\n", line.c_str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// plot
// ---------------------------------------------------------------------------

struct PlotArgs {
  std::string input;
  std::string kind = "density";
  std::string estimator;
  std::string out;
  std::string filter;
};

Region region_from_cell(const std::optional<double>& v) {
  if (!v) return Region::fail;
  if (*v > 0.5) return Region::h1_plus;
  if (*v < -0.5) return Region::h1_minus;
  return Region::h0;
}

int run_plot(const PlotArgs& args) {
  StudyCsv csv;
  try {
    std::ifstream is(args.input, std::ios::binary);
    if (!is) throw IoError("cannot open " + args.input);
    csv = read_study_csv(is);
  } catch (const std::exception& err) {
    std::cerr << "io error: " << err.what() << "\n";
    return kExitIo;
  }

  std::string svg;
  if (args.kind == "density") {
    if (!scored_from_name(args.estimator) ||
        !csv.has_column("dec_" + args.estimator)) {
      std::cerr << "unknown estimator for density plot: " << args.estimator
                << "\n";
      return kExitUnknownEstimator;
    }
    std::string benchmark = "g";
    if (auto it = csv.provenance.find("benchmark"); it != csv.provenance.end())
      benchmark = it->second;
    double alpha = 0.05;
    if (auto it = csv.provenance.find("alpha"); it != csv.provenance.end())
      alpha = std::stod(it->second);
    if (!csv.has_column("dec_" + benchmark)) {
      std::cerr << "study CSV has no decision column for benchmark "
                << benchmark << "\n";
      return kExitUnknownEstimator;
    }
    const bool undirected = args.estimator == "mn";

    std::int64_t n_max = 1;
    for (const StudyCsvRow& row : csv.rows)
      n_max = std::max(n_max, row.table.n());
    const int nbins = static_cast<int>(std::min<std::int64_t>(n_max, 100));

    DensityPlotData data;
    data.estimator = args.estimator;
    data.benchmark = benchmark;
    data.nbins = nbins;
    data.band = g_h0_interval(n_max, alpha);
    data.correct_mass.assign(static_cast<std::size_t>(nbins) + 1, 0.0);
    data.mistake_mass.assign(static_cast<std::size_t>(nbins) + 1, 0.0);
    std::int64_t fails = 0, total = 0;
    const std::string est_col = "dec_" + args.estimator;
    const std::string bench_col = "dec_" + benchmark;
    for (const StudyCsvRow& row : csv.rows) {
      ++total;
      const Region bench = region_from_cell(row.columns.at(bench_col));
      if (bench == Region::fail) continue;
      const Region est = region_from_cell(row.columns.at(est_col));
      if (est == Region::fail) {
        ++fails;
        continue;
      }
      const bool mistake = undirected
                               ? (est == Region::h0) != (bench == Region::h0)
                               : est != bench;
      const int bin = std::min(
          nbins, static_cast<int>(std::lround(row.po * nbins)));
      if (mistake)
        data.mistake_mass[static_cast<std::size_t>(bin)] += 1.0;
      else
        data.correct_mass[static_cast<std::size_t>(bin)] += 1.0;
    }
    if (total > 0) {
      for (double& v : data.correct_mass) v /= static_cast<double>(total);
      for (double& v : data.mistake_mass) v /= static_cast<double>(total);
      data.fail_fraction = static_cast<double>(fails) / static_cast<double>(total);
    }
    data.total = total;
    svg = density_svg(data);
  } else if (args.kind == "hexbin") {
    const auto est = est_from_name(args.estimator);
    if (!est || !csv.has_column(args.estimator) || !csv.has_column("g")) {
      std::cerr << "unknown estimator for hexbin plot: " << args.estimator
                << "\n";
      return kExitUnknownEstimator;
    }
    std::optional<ExtremeFilter> filter;
    if (!args.filter.empty()) {
      ExtremeFilter f;
      if (!extreme_filter_from_name(args.filter, f)) {
        std::cerr << "unknown extreme filter: " << args.filter << "\n";
        return kExitUsage;
      }
      filter = f;
    }
    HexbinAccumulator grid(*est, 0.05, filter);
    for (const StudyCsvRow& row : csv.rows) {
      EstimateVector v{};
      const auto gval = row.columns.at("g");
      const auto eval = row.columns.at(args.estimator);
      v.values[static_cast<int>(Est::g)] =
          gval ? EstimateValue::of(*gval) : EstimateValue::div0();
      v.values[static_cast<int>(*est)] =
          eval ? EstimateValue::of(*eval) : EstimateValue::div0();
      grid.add(row.table, v);
    }
    HexbinPlotData data;
    data.estimator = args.estimator;
    data.filter = args.filter;
    data.hex_radius = grid.x_spacing() / std::sqrt(3.0);
    for (const HexCell& cell : grid.cells()) {
      const auto [x, y] = grid.center(cell.q, cell.r);
      data.cells.push_back({x, y, cell.count});
    }
    data.total = grid.seen();
    data.computable = grid.seen() - grid.uncomputable();
    svg = hexbin_svg(data);
  } else {
    std::cerr << "unknown plot kind: " << args.kind << "\n";
    return kExitUsage;
  }

  try {
    std::ofstream os = open_out(args.out);
    os << "<!-- tool: agree2x2 " << kVersion << "; subcommand: plot; kind: "
       << args.kind << "; estimator: " << args.estimator << "; filter: "
       << (args.filter.empty() ? "none" : args.filter) << " -->\n";
    os << svg;
    os.flush();
    if (!os) throw IoError("write failed for " + args.out);
  } catch (const IoError& err) {
    std::cerr << "io error: " << err.what() << "\n";
    return kExitIo;
  }
  std::printf("wrote %s\n", args.out.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"agreement statistics for 2x2 contingency tables"};
  app.require_subcommand(1);

  // compute
  ComputeArgs compute_args;
  CLI::App* compute = app.add_subcommand(
      "compute", "evaluate all estimators on one table");
  compute->add_option("cells", compute_args.cells, "cell counts a b c d")
      ->expected(4)
      ->required();
  compute->add_flag("--test", compute_args.test, "attach inferential decisions");
  compute->add_option("--alpha", compute_args.alpha, "two-sided level");
  compute->add_option("--boot", compute_args.boot, "bootstrap resamples");
  CLI::Option* compute_seed =
      compute->add_option("--seed", compute_args.seed, "bootstrap seed");
  compute->add_option("--mass", compute_args.mass, "HDI mass");

  // enumerate
  std::int64_t en_from = 1, en_to = 1;
  std::string en_out = "tables.csv";
  CLI::App* enumerate =
      app.add_subcommand("enumerate", "write all tables in an n range to CSV");
  enumerate->add_option("--from", en_from, "smallest n")->required();
  enumerate->add_option("--to", en_to, "largest n")->required();
  enumerate->add_option("--out", en_out, "output CSV path")->required();

  // study
  StudyArgs study_args;
  bool no_inference = false;
  CLI::App* study = app.add_subcommand(
      "study", "run estimators (and decisions) over all tables in a range");
  study->add_option("--from", study_args.opt.from, "smallest n")->required();
  study->add_option("--to", study_args.opt.to, "largest n")->required();
  study->add_option("--out", study_args.out_dir, "output directory");
  std::string benchmark_name = "g";
  study->add_option("--benchmark", benchmark_name, "benchmark estimator id");
  study->add_option("--alpha", study_args.opt.infer.alpha, "two-sided level");
  study->add_option("--boot", study_args.opt.infer.boot.resamples,
                    "bootstrap resamples (0 = asymptotic tests only)");
  CLI::Option* study_seed = study->add_option(
      "--seed", study_args.opt.infer.boot.seed, "bootstrap base seed");
  study->add_option("--mass", study_args.opt.infer.boot.mass, "HDI mass");
  study->add_option("--threads", study_args.opt.threads,
                    "worker threads (output is independent of this)");
  study->add_flag("--no-inference", no_inference,
                  "point estimates only, no decision columns");
  study->add_option("--sample", study_args.opt.sample,
                    "stratified subsample size (0 = all tables)");
  study->add_option("--sample-seed", study_args.opt.sample_seed,
                    "subsample selection seed");

  // challenge
  std::string set_name = "regular";
  CLI::App* challenge = app.add_subcommand(
      "challenge", "print the built-in challenge tables and all estimators");
  challenge->add_option("--set", set_name, "regular or extreme")
      ->check(CLI::IsMember({"regular", "extreme"}));

  // plot
  PlotArgs plot_args;
  CLI::App* plot =
      app.add_subcommand("plot", "render density or hexbin SVG from a study CSV");
  plot->add_option("--input", plot_args.input, "study.csv path")->required();
  plot->add_option("--kind", plot_args.kind, "density or hexbin")
      ->check(CLI::IsMember({"density", "hexbin"}));
  plot->add_option("--estimator", plot_args.estimator, "estimator id")
      ->required();
  plot->add_option("--out", plot_args.out, "output SVG path")->required();
  plot->add_option("--filter", plot_args.filter,
                   "extreme-table filter (hexbin only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (compute->parsed()) {
    compute_args.seed = seed_fallback(compute_seed, compute_args.seed);
    return run_compute(compute_args);
  }
  if (enumerate->parsed()) return run_enumerate(en_from, en_to, en_out);
  if (study->parsed()) {
    study_args.opt.inference = !no_inference;
    study_args.opt.infer.boot.seed =
        seed_fallback(study_seed, study_args.opt.infer.boot.seed);
    const auto bench = scored_from_name(benchmark_name);
    if (!bench) {
      std::cerr << "unknown benchmark estimator: " << benchmark_name << "\n";
      return kExitUnknownEstimator;
    }
    study_args.opt.benchmark = *bench;
    return run_study_cmd(study_args);
  }
  if (challenge->parsed()) return run_challenge(set_name);
  if (plot->parsed()) return run_plot(plot_args);
  return kExitUsage;
}
