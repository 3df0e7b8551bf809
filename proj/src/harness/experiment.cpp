#include "taperbench/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "dispatch.hpp"
#include "json.hpp"
#include "taperbench/matrices/bundle.hpp"
#include "taperbench/version.hpp"

namespace taperbench {

namespace detail {
template <MpirFamily Fam>
ExperimentOutcome run_mpir_family(const TestSystem&, const PrecisionTriple&, double, const PlanSet&, int);
extern template ExperimentOutcome run_mpir_family<MpirFamily::ieee>(const TestSystem&, const PrecisionTriple&, double,
                                                                    const PlanSet&, int);
extern template ExperimentOutcome run_mpir_family<MpirFamily::bfloat>(const TestSystem&, const PrecisionTriple&,
                                                                      double, const PlanSet&, int);
extern template ExperimentOutcome run_mpir_family<MpirFamily::posit>(const TestSystem&, const PrecisionTriple&,
                                                                     double, const PlanSet&, int);
extern template ExperimentOutcome run_mpir_family<MpirFamily::takum>(const TestSystem&, const PrecisionTriple&,
                                                                     double, const PlanSet&, int);
}  // namespace detail

namespace {

using nlohmann::json;

std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::optional<SolveStatus> parse_status(std::string_view s) {
  for (auto st : {SolveStatus::ok, SolveStatus::range_failure, SolveStatus::singular_failure,
                  SolveStatus::max_iter_failure}) {
    if (status_name(st) == s) return st;
  }
  return std::nullopt;
}

json outcome_json(const ExperimentOutcome& o, std::uint64_t seed) {
  json j{{"matrix", o.matrix},
         {"config", o.config},
         {"seed", seed},
         {"status", std::string(status_name(o.status))},
         {"iterations", o.iterations}};
  if (o.status == SolveStatus::ok) {
    j["abs_err"] = json::array({o.abs_err.hi(), o.abs_err.lo()});
    j["rel_err"] = json::array({o.rel_err.hi(), o.rel_err.lo()});
    j["rel_err_decimal"] = o.rel_err.to_decimal();
  }
  return j;
}

// Direct solvers: singular before range. Iterative solvers: iteration limit
// (and range) before singular.
std::pair<int, std::string> failure_slot(SolverKind solver, SolveStatus s) {
  const bool direct = solver == SolverKind::lu || solver == SolverKind::qr;
  if (s == SolveStatus::singular_failure) return {direct ? 1 : 2, "inf_sigma"};
  return {direct ? 2 : 1, "inf_omega"};
}

StructuralPlan load_or_build(const std::filesystem::path& path, PlanKind kind, const CscMatrix<double>& a) {
  if (std::filesystem::exists(path)) {
    try {
      auto p = read_plan(path);
      if (p.kind == kind && p.size() == a.n_cols && static_cast<std::int64_t>(p.row_perm.size()) == a.n_rows) {
        return p;
      }
    } catch (const PlanError&) {
    }
  }
  auto p = kind == PlanKind::lu ? plan_lu(a) : plan_qr(a);
  write_plan(path, p);
  return p;
}

std::string family_display(MpirFamily f) {
  switch (f) {
    case MpirFamily::ieee:
      return "Float";
    case MpirFamily::bfloat:
      return "BFloat";
    case MpirFamily::posit:
      return "Posit";
    case MpirFamily::takum:
      return "LinearTakum";
  }
  return "?";
}

}  // namespace

std::string_view solver_name(SolverKind s) {
  switch (s) {
    case SolverKind::lu:
      return "lu";
    case SolverKind::qr:
      return "qr";
    case SolverKind::gmres_ilu:
      return "gmres_ilu";
    case SolverKind::mpir:
      return "mpir";
  }
  return "?";
}

std::optional<SolverKind> parse_solver(std::string_view name) {
  for (auto s : {SolverKind::lu, SolverKind::qr, SolverKind::gmres_ilu, SolverKind::mpir}) {
    if (solver_name(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view family_name(MpirFamily f) {
  switch (f) {
    case MpirFamily::ieee:
      return "float";
    case MpirFamily::bfloat:
      return "bfloat";
    case MpirFamily::posit:
      return "posit";
    case MpirFamily::takum:
      return "takum";
  }
  return "?";
}

std::optional<MpirFamily> parse_family(std::string_view name) {
  for (auto f : {MpirFamily::ieee, MpirFamily::bfloat, MpirFamily::posit, MpirFamily::takum}) {
    if (family_name(f) == name) return f;
  }
  if (name == "ieee") return MpirFamily::ieee;
  if (name == "takum_linear") return MpirFamily::takum;
  return std::nullopt;
}

std::optional<FormatId> family_format(MpirFamily f, int width) {
  if (width != 8 && width != 16 && width != 32 && width != 64) return std::nullopt;
  return detail::family_format_c(f, width);
}

bool is_valid_triple(const PrecisionTriple& t) {
  return family_format(t.family, t.low) && family_format(t.family, t.working) && family_format(t.family, t.high) &&
         t.low <= t.working && t.working <= t.high;
}

std::string triple_label(const PrecisionTriple& t) {
  auto two = [](int w) { return (w < 10 ? "0" : "") + std::to_string(w); };
  return std::string(family_name(t.family)) + "_" + two(t.low) + "_" + two(t.working) + "_" + two(t.high);
}

std::string solve_dir_name(SolverKind solver, const std::optional<PrecisionTriple>& triple) {
  std::string d = "solve_" + std::string(solver_name(solver));
  if (solver == SolverKind::mpir && triple) d += "_" + triple_label(*triple);
  return d;
}

ExperimentOutcome run_format(const TestSystem& sys, SolverKind solver, FormatId format, const PlanSet& plans) {
  return detail::visit_format(format, [&]<class T>(std::type_identity<T>) {
    ExperimentOutcome out;
    out.matrix = sys.name;
    out.config = format_name(format);
    const auto conv = convert_with_check<T>(sys.a, sys.b);
    if (conv.status != SolveStatus::ok) {
      out.status = conv.status;
      return out;
    }
    SolveResult<T> res;
    switch (solver) {
      case SolverKind::lu:
        res = solve_with_lu(conv.a, conv.b, plans.lu);
        break;
      case SolverKind::qr:
        res = solve_with_qr(conv.a, conv.b, plans.qr);
        break;
      case SolverKind::gmres_ilu: {
        const auto m = ilu0_factor(conv.a);
        if (!m.ok) {
          res.status = SolveStatus::singular_failure;
          break;
        }
        const auto p = gmres_parameters(conv.a.n_cols, format.width);
        res = gmres(conv.a, conv.b, m.factors, p.restart, p.max_iter, p.tol);
        break;
      }
      case SolverKind::mpir:
        throw ConfigError("mpir needs a precision triple");
    }
    detail::finish(out, sys, res);
    return out;
  });
}

ExperimentOutcome run_mpir(const TestSystem& sys, const PrecisionTriple& triple, double tol, const PlanSet& plans,
                           int max_iter) {
  if (!is_valid_triple(triple)) throw ConfigError("invalid precision triple " + triple_label(triple));
  ExperimentOutcome out;
  switch (triple.family) {
    case MpirFamily::ieee:
      out = detail::run_mpir_family<MpirFamily::ieee>(sys, triple, tol, plans, max_iter);
      break;
    case MpirFamily::bfloat:
      out = detail::run_mpir_family<MpirFamily::bfloat>(sys, triple, tol, plans, max_iter);
      break;
    case MpirFamily::posit:
      out = detail::run_mpir_family<MpirFamily::posit>(sys, triple, tol, plans, max_iter);
      break;
    case MpirFamily::takum:
      out = detail::run_mpir_family<MpirFamily::takum>(sys, triple, tol, plans, max_iter);
      break;
  }
  out.config = triple_label(triple);
  return out;
}

std::string emit_report(const std::vector<ExperimentOutcome>& outcomes, SolverKind solver, ReportMetric metric,
                        const std::vector<std::pair<std::string, std::string>>& columns) {
  std::vector<std::vector<std::string>> cells;
  std::size_t rows = 0;
  for (const auto& [config, header] : columns) {
    struct Item {
      int slot;
      double value;
      std::string matrix;
      std::string text;
    };
    std::vector<Item> items;
    for (const auto& o : outcomes) {
      if (o.config != config) continue;
      if (o.status == SolveStatus::ok) {
        const double v = metric == ReportMetric::relative_error ? o.rel_err.hi() : static_cast<double>(o.iterations);
        items.push_back({0, v, o.matrix, metric == ReportMetric::relative_error ? shortest(v) : std::to_string(o.iterations)});
      } else {
        auto [slot, token] = failure_slot(solver, o.status);
        items.push_back({slot, 0.0, o.matrix, token});
      }
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
      return std::tie(a.slot, a.value, a.matrix) < std::tie(b.slot, b.value, b.matrix);
    });
    std::vector<std::string> col;
    for (auto& it : items) col.push_back(std::move(it.text));
    rows = std::max(rows, col.size());
    cells.push_back(std::move(col));
  }
  std::ostringstream out;
  out << "percent";
  for (const auto& c : columns) out << ',' << c.second;
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    out << shortest(static_cast<double>(i + 1) / static_cast<double>(rows));
    for (const auto& col : cells) {
      out << ',';
      if (i < col.size()) out << col[i];
    }
    out << '\n';
  }
  return out.str();
}

std::vector<ExperimentOutcome> read_outcomes(const std::filesystem::path& jsonl, std::optional<std::uint64_t> seed) {
  std::vector<ExperimentOutcome> out;
  std::ifstream in(jsonl);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
      if (seed && j.at("seed").get<std::uint64_t>() != *seed) continue;
      ExperimentOutcome o;
      o.matrix = j.at("matrix").get<std::string>();
      o.config = j.at("config").get<std::string>();
      const auto st = parse_status(j.at("status").get<std::string>());
      if (!st) continue;
      o.status = *st;
      o.iterations = j.at("iterations").get<int>();
      if (o.status == SolveStatus::ok) {
        o.abs_err = ExtendedReal::from_pair(j.at("abs_err").at(0).get<double>(), j.at("abs_err").at(1).get<double>());
        o.rel_err = ExtendedReal::from_pair(j.at("rel_err").at(0).get<double>(), j.at("rel_err").at(1).get<double>());
      }
      out.push_back(std::move(o));
    } catch (const json::exception&) {
      // a torn final line from an interrupted run
    }
  }
  return out;
}

void write_reports(const std::filesystem::path& solve_dir, SolverKind solver,
                   const std::vector<std::pair<std::string, std::string>>& columns,
                   const std::vector<std::string>& matrices) {
  const std::set<std::string> keep(matrices.begin(), matrices.end());
  std::map<std::pair<std::string, std::string>, ExperimentOutcome> latest;
  for (auto& o : read_outcomes(solve_dir / "outcomes.jsonl")) {
    if (keep.count(o.matrix)) latest[{o.config, o.matrix}] = std::move(o);
  }
  std::vector<ExperimentOutcome> outcomes;
  for (auto& [k, o] : latest) outcomes.push_back(std::move(o));
  auto write = [&](ReportMetric metric, const char* file) {
    std::ofstream f(solve_dir / file, std::ios::binary | std::ios::trunc);
    f << emit_report(outcomes, solver, metric, columns);
  };
  write(ReportMetric::relative_error, "relative_error.sorted.csv");
  if (solver == SolverKind::gmres_ilu || solver == SolverKind::mpir) {
    write(ReportMetric::iteration_count, "iteration_count.sorted.csv");
  }
}

RunSummary run_experiment(const RunConfig& cfg) {
  struct Group {
    std::filesystem::path dir;
    std::vector<std::pair<std::string, std::string>> columns;
    std::optional<PrecisionTriple> triple;
    double tol = 0.0;
  };
  std::vector<Group> groups;
  if (cfg.solver == SolverKind::mpir) {
    if (cfg.triples.empty()) throw ConfigError("mpir needs at least one precision triple");
    for (const auto& t : cfg.triples) {
      if (!is_valid_triple(t)) throw ConfigError("invalid precision triple " + triple_label(t));
      auto tol = cfg.tol ? cfg.tol : mpir_tolerance(t.low, t.working, t.high);
      if (!tol) throw ConfigError("no default tolerance for " + triple_label(t) + "; pass --tol");
      groups.push_back({cfg.out_dir / solve_dir_name(cfg.solver, t),
                        {{triple_label(t), family_display(t.family) + "(" + std::to_string(t.low) + "," +
                                               std::to_string(t.working) + "," + std::to_string(t.high) + ")"}},
                        t,
                        *tol});
    }
  } else {
    if (cfg.formats.empty()) throw ConfigError("no formats given");
    auto formats = cfg.formats;
    std::sort(formats.begin(), formats.end(), [](FormatId a, FormatId b) { return format_index(a) < format_index(b); });
    formats.erase(std::unique(formats.begin(), formats.end()), formats.end());
    Group g{cfg.out_dir / solve_dir_name(cfg.solver), {}, std::nullopt, 0.0};
    for (auto f : formats) g.columns.emplace_back(format_name(f), display_name(f));
    groups.push_back(std::move(g));
  }

  const auto bundle = bundle_load(cfg.bundle);
  const auto plan_dir = cfg.plan_dir.empty() ? cfg.bundle.parent_path() : cfg.plan_dir;
  if (!plan_dir.empty()) std::filesystem::create_directories(plan_dir);
  const bool needs_lu = cfg.solver == SolverKind::lu || cfg.solver == SolverKind::mpir;
  const auto jobs = static_cast<std::size_t>(std::max(cfg.jobs, 1));

  auto pool = [&](std::size_t count, auto&& body) {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (auto i = next++; i < count; i = next++) body(i);
    };
    std::vector<std::thread> threads;
    for (std::size_t t = 1; t < std::min(jobs, count); ++t) threads.emplace_back(work);
    work();
    for (auto& t : threads) t.join();
  };

  // systems and plans, one per matrix
  const auto n_mat = bundle.entries.size();
  std::vector<std::optional<TestSystem>> systems(n_mat);
  std::vector<PlanSet> plans(n_mat);
  std::vector<std::string> errors(n_mat);
  pool(n_mat, [&](std::size_t i) {
    const auto& e = bundle.entries[i];
    const auto& name = e.metadata.name;
    try {
      plans[i].qr = load_or_build(plan_dir / plan_file_name(name, PlanKind::qr), PlanKind::qr, e.matrix);
      if (needs_lu) plans[i].lu = load_or_build(plan_dir / plan_file_name(name, PlanKind::lu), PlanKind::lu, e.matrix);
      systems[i] = build_system(name, e.matrix, cfg.seed, plans[i].qr);
    } catch (const std::exception& ex) {
      errors[i] = ex.what();
    }
  });

  RunSummary summary;
  for (std::size_t i = 0; i < n_mat; ++i) {
    if (systems[i]) {
      summary.matrices.push_back(bundle.entries[i].metadata.name);
    } else {
      summary.excluded.emplace_back(bundle.entries[i].metadata.name, errors[i]);
    }
  }

  for (const auto& g : groups) {
    std::filesystem::create_directories(g.dir);
    const auto store = g.dir / "outcomes.jsonl";
    std::set<std::pair<std::string, std::string>> done;
    for (const auto& o : read_outcomes(store, cfg.seed)) done.insert({o.config, o.matrix});

    struct Unit {
      std::size_t matrix;
      std::size_t column;
    };
    std::vector<Unit> units;
    for (std::size_t i = 0; i < n_mat; ++i) {
      if (!systems[i]) continue;
      for (std::size_t c = 0; c < g.columns.size(); ++c) {
        if (done.count({g.columns[c].first, systems[i]->name})) {
          ++summary.reused;
        } else {
          units.push_back({i, c});
        }
      }
    }
    std::ofstream out(store, std::ios::app);
    std::mutex mu;
    pool(units.size(), [&](std::size_t u) {
      const auto& sys = *systems[units[u].matrix];
      const auto& pl = plans[units[u].matrix];
      ExperimentOutcome o;
      if (g.triple) {
        o = run_mpir(sys, *g.triple, g.tol, pl);
      } else {
        o = run_format(sys, cfg.solver, *parse_format(g.columns[units[u].column].first), pl);
      }
      const auto line = outcome_json(o, cfg.seed).dump();
      std::lock_guard lock(mu);
      out << line << '\n';
      out.flush();
    });
    summary.computed += static_cast<std::int64_t>(units.size());
    out.close();

    write_reports(g.dir, cfg.solver, g.columns, summary.matrices);

    const std::set<std::string> keep(summary.matrices.begin(), summary.matrices.end());
    std::map<std::pair<std::string, std::string>, ExperimentOutcome> latest;
    for (auto& o : read_outcomes(store, cfg.seed)) {
      if (keep.count(o.matrix)) latest[{o.config, o.matrix}] = std::move(o);
    }
    json counts = json::object();
    for (const auto& [k, o] : latest) {
      summary.outcomes.push_back(o);
      auto& c = counts[k.first][std::string(status_name(o.status))];
      c = c.is_null() ? 1 : c.get<int>() + 1;
    }

    json run{{"version", std::string(kVersion)},
             {"solver", std::string(solver_name(cfg.solver))},
             {"seed", cfg.seed},
             {"seed_hex", [&] {
                std::ostringstream s;
                s << "0x" << std::hex << cfg.seed;
                return s.str();
              }()},
             {"bundle", cfg.bundle.filename().string()},
             {"matrices", summary.matrices},
             {"status_counts", counts},
             {"percent_convention", "i/N"}};
    json cols = json::array();
    for (const auto& c : g.columns) cols.push_back(c.first);
    run["configs"] = cols;
    json excl = json::array();
    for (const auto& [m, why] : summary.excluded) excl.push_back({{"matrix", m}, {"reason", why}});
    run["excluded"] = excl;
    if (g.triple) {
      run["triple"] = {{"family", std::string(family_name(g.triple->family))},
                       {"low", g.triple->low},
                       {"working", g.triple->working},
                       {"high", g.triple->high}};
      run["tolerance"] = g.tol;
      run["max_iterations"] = kMpirMaxIterations;
    }
    if (cfg.solver == SolverKind::gmres_ilu) {
      run["restart"] = "min(20, n)";
      run["max_iterations"] = "n";
      json tols = json::object();
      for (int w : {8, 16, 32, 64}) tols[std::to_string(w)] = gmres_tolerance(w);
      run["tolerance_by_width"] = tols;
    }
    std::ofstream rj(g.dir / "run.json", std::ios::trunc);
    rj << run.dump(2) << '\n';
  }
  return summary;
}

}  // namespace taperbench
