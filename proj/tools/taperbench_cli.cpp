#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "taperbench/formats/conformance.hpp"
#include "taperbench/formats/format_id.hpp"
#include "taperbench/harness/experiment.hpp"
#include "taperbench/matrices/dataset.hpp"
#include "taperbench/orderings/plan.hpp"
#include "taperbench/solvers/mpir.hpp"
#include "taperbench/version.hpp"

namespace tb = taperbench;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<tb::FormatId> parse_formats(const std::string& list) {
  std::vector<tb::FormatId> out;
  for (const auto& name : split(list, ',')) {
    if (name == "all") {
      out.insert(out.end(), tb::all_formats.begin(), tb::all_formats.end());
      continue;
    }
    auto f = tb::parse_format(name);
    if (!f) throw UsageError("unknown format '" + name + "'");
    out.push_back(*f);
  }
  if (out.empty()) throw UsageError("empty format list");
  return out;
}

tb::PrecisionTriple parse_triple(tb::MpirFamily family, const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw UsageError("--mpir-config expects L,W,H");
  tb::PrecisionTriple t;
  t.family = family;
  try {
    t.low = std::stoi(parts[0]);
    t.working = std::stoi(parts[1]);
    t.high = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw UsageError("--mpir-config expects three integers");
  }
  if (!tb::is_valid_triple(t)) throw UsageError("invalid precision triple " + text + " (need L <= W <= H in {8,16,32,64})");
  return t;
}

void print_summary(const tb::RunSummary& s) {
  std::map<std::string, std::map<std::string, int>> counts;
  for (const auto& o : s.outcomes) ++counts[o.config][std::string(tb::status_name(o.status))];
  std::printf("matrices: %zu (excluded %zu), experiments: %lld computed, %lld reused\n", s.matrices.size(),
              s.excluded.size(), static_cast<long long>(s.computed), static_cast<long long>(s.reused));
  std::printf("%-22s %6s %8s %9s %9s\n", "config", "ok", "range", "singular", "max_iter");
  for (const auto& [config, c] : counts) {
    auto get = [&](const char* k) {
      auto it = c.find(k);
      return it == c.end() ? 0 : it->second;
    };
    std::printf("%-22s %6d %8d %9d %9d\n", config.c_str(), get("ok"), get("range_failure"), get("singular_failure"),
                get("max_iter_failure"));
  }
  for (const auto& [m, why] : s.excluded) std::printf("excluded %s: %s\n", m.c_str(), why.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse linear solver benchmark across IEEE, posit and takum number formats", "taperbench"};
  app.set_version_flag("--version", std::string(tb::kVersion));
  app.require_subcommand(1);
  const int default_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto* ingest = app.add_subcommand("ingest", "Filter a directory of Matrix Market files into a bundle");
  std::string in_dir, bundle_out;
  std::int64_t max_nnz = tb::kMaxNonzeros;
  int ingest_jobs = default_jobs;
  bool reject_pattern = false;
  ingest->add_option("--input", in_dir, "Directory of .mtx files")->required();
  ingest->add_option("--output", bundle_out, "Bundle file to write (.tsb)")->required();
  ingest->add_option("--max-nnz", max_nnz, "Largest admissible number of nonzeros")->capture_default_str();
  ingest->add_option("--jobs", ingest_jobs, "Worker threads")->capture_default_str();
  ingest->add_flag("--reject-pattern", reject_pattern, "Reject pattern-only matrices instead of reading ones");

  auto* plan = app.add_subcommand("plan", "Compute LU and QR plans for every matrix of a bundle");
  std::string plan_bundle, plan_dir;
  plan->add_option("--bundle", plan_bundle, "Bundle file")->required();
  plan->add_option("--out", plan_dir, "Plan directory (default: beside the bundle)");

  auto* run = app.add_subcommand("run", "Run experiments");
  std::string run_bundle, run_out, run_plans, solver_text, formats_text, family_text, config_text;
  std::uint64_t seed = tb::kDefaultSeed;
  std::optional<double> tol;
  int run_jobs = default_jobs;
  run->add_option("--bundle", run_bundle, "Bundle file")->required();
  run->add_option("--solver", solver_text, "lu | qr | gmres_ilu | mpir")->required();
  run->add_option("--formats", formats_text, "Comma-separated formats, or 'all'");
  run->add_option("--mpir-family", family_text, "float | bfloat | posit | takum");
  run->add_option("--mpir-config", config_text, "L,W,H bit widths, e.g. 16,32,64");
  run->add_option("--tol", tol, "MPIR tolerance (defaults from the configuration table)");
  run->add_option("--seed", seed, "Random seed")->capture_default_str();
  run->add_option("--out", run_out, "Output directory")->required();
  run->add_option("--plans", run_plans, "Plan directory (default: beside the bundle)");
  run->add_option("--jobs", run_jobs, "Worker threads")->capture_default_str();

  auto* report = app.add_subcommand("report", "Rebuild the sorted CSVs from stored outcomes");
  std::string report_dir;
  report->add_option("--out", report_dir, "Output directory of a previous run")->required();

  auto* dump = app.add_subcommand("dump-formats", "Write the code table of a format");
  std::string dump_format, dump_out;
  std::optional<std::uint64_t> sample;
  std::uint64_t dump_seed = tb::kDefaultSeed;
  dump->add_option("--format", dump_format, "Format name, e.g. posit16")->required();
  dump->add_option("--out", dump_out, "CSV file (default: standard output)");
  dump->add_option("--sample", sample, "Number of random codes instead of all");
  dump->add_option("--seed", dump_seed, "Seed for --sample")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  try {
    if (*ingest) {
      auto res = tb::filter_dataset(in_dir, ingest_jobs, reject_pattern ? tb::PatternPolicy::reject : tb::PatternPolicy::ones,
                                    max_nnz);
      const auto& c = res.bundle.counts;
      std::printf("files: %lld\nreal, nnz <= %lld: %lld\nsquare, full rank: %lld\nrejected: %zu\n",
                  static_cast<long long>(c.files), static_cast<long long>(max_nnz),
                  static_cast<long long>(c.real_and_small), static_cast<long long>(c.square_and_full_rank),
                  res.rejections.size());
      for (const auto& r : res.rejections) std::printf("  %s: %s\n", r.name.c_str(), r.reason.c_str());
      if (res.bundle.entries.empty()) {
        std::fprintf(stderr, "error: no matrix passed the filter\n");
        return kDataError;
      }
      tb::bundle_write(bundle_out, res.bundle);
      std::printf("wrote %s (%zu matrices)\n", bundle_out.c_str(), res.bundle.entries.size());
    } else if (*plan) {
      const auto bundle = tb::bundle_load(plan_bundle);
      const std::filesystem::path dir = plan_dir.empty() ? std::filesystem::path(plan_bundle).parent_path() : std::filesystem::path(plan_dir);
      if (!dir.empty()) std::filesystem::create_directories(dir);
      int failed = 0;
      for (const auto& e : bundle.entries) {
        for (auto kind : {tb::PlanKind::lu, tb::PlanKind::qr}) {
          try {
            auto p = kind == tb::PlanKind::lu ? tb::plan_lu(e.matrix) : tb::plan_qr(e.matrix);
            tb::write_plan(dir / tb::plan_file_name(e.metadata.name, kind), p);
          } catch (const tb::PlanError& ex) {
            ++failed;
            std::printf("%s: %s\n", e.metadata.name.c_str(), ex.what());
          }
        }
      }
      std::printf("plans written for %zu matrices, %d failures\n", bundle.entries.size(), failed);
    } else if (*run) {
      tb::RunConfig cfg;
      const auto solver = tb::parse_solver(solver_text);
      if (!solver) throw UsageError("unknown solver '" + solver_text + "'");
      cfg.solver = *solver;
      if (cfg.solver == tb::SolverKind::mpir) {
        if (family_text.empty() || config_text.empty()) throw UsageError("mpir needs --mpir-family and --mpir-config");
        const auto fam = tb::parse_family(family_text);
        if (!fam) throw UsageError("unknown MPIR family '" + family_text + "'");
        cfg.triples.push_back(parse_triple(*fam, config_text));
        cfg.tol = tol;
        const auto& t = cfg.triples.front();
        if (!tol && !tb::mpir_tolerance(t.low, t.working, t.high)) {
          throw UsageError("no default tolerance for " + config_text + "; pass --tol");
        }
      } else {
        if (formats_text.empty()) throw UsageError("--formats is required for " + solver_text);
        cfg.formats = parse_formats(formats_text);
      }
      cfg.seed = seed;
      cfg.bundle = run_bundle;
      cfg.plan_dir = run_plans;
      cfg.out_dir = run_out;
      cfg.jobs = run_jobs;
      print_summary(tb::run_experiment(cfg));
    } else if (*report) {
      int n = 0;
      for (const auto& de : std::filesystem::directory_iterator(report_dir)) {
        if (!de.is_directory() || !std::filesystem::exists(de.path() / "run.json")) continue;
        std::ifstream in(de.path() / "run.json");
        const auto j = nlohmann::json::parse(in);
        const auto solver = tb::parse_solver(j.at("solver").get<std::string>());
        if (!solver) continue;
        std::vector<std::pair<std::string, std::string>> columns;
        for (const auto& c : j.at("configs")) {
          const auto config = c.get<std::string>();
          if (auto f = tb::parse_format(config)) {
            columns.emplace_back(config, tb::display_name(*f));
          } else {
            columns.emplace_back(config, config);
          }
        }
        if (*solver == tb::SolverKind::mpir) {
          // keep the header written by run
          std::ifstream csv(de.path() / "relative_error.sorted.csv");
          std::string header;
          std::getline(csv, header);
          const auto parts = split(header, ',');
          if (parts.size() == 2) columns.front().second = parts[1];
        }
        tb::write_reports(de.path(), *solver, columns, j.at("matrices").get<std::vector<std::string>>());
        std::printf("rebuilt %s\n", de.path().filename().string().c_str());
        ++n;
      }
      if (n == 0) {
        std::fprintf(stderr, "error: no run directories under %s\n", report_dir.c_str());
        return kDataError;
      }
    } else if (*dump) {
      const auto f = tb::parse_format(dump_format);
      if (!f) throw UsageError("unknown format '" + dump_format + "'");
      if (f->width > 16 && !sample) throw UsageError(dump_format + " has more than 2^16 codes; pass --sample N");
      if (dump_out.empty()) {
        tb::write_code_table(std::cout, *f, sample, dump_seed);
      } else {
        std::ofstream out(dump_out, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + dump_out);
        tb::write_code_table(out, *f, sample, dump_seed);
      }
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsageError;
  } catch (const tb::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kDataError;
  }
  return 0;
}
