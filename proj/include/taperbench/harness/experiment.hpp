#ifndef TAPERBENCH_HARNESS_EXPERIMENT_HPP
#define TAPERBENCH_HARNESS_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taperbench/formats/format_id.hpp"
#include "taperbench/harness/system.hpp"
#include "taperbench/orderings/plan.hpp"
#include "taperbench/solvers/status.hpp"

namespace taperbench {

enum class SolverKind { lu, qr, gmres_ilu, mpir };

std::string_view solver_name(SolverKind s);
std::optional<SolverKind> parse_solver(std::string_view name);

enum class MpirFamily { ieee, bfloat, posit, takum };

std::string_view family_name(MpirFamily f);
std::optional<MpirFamily> parse_family(std::string_view name);

/// Format of the given width in an MPIR family. The ieee family uses float8
/// (E4M3) at width 8; the bfloat family differs from it only at width 16.
std::optional<FormatId> family_format(MpirFamily f, int width);

struct PrecisionTriple {
  MpirFamily family = MpirFamily::ieee;
  int low = 16;
  int working = 32;
  int high = 64;

  bool operator==(const PrecisionTriple&) const = default;
};

bool is_valid_triple(const PrecisionTriple& t);
/// e.g. "posit_16_32_64" (widths zero-padded to two digits: "posit_08_16_32").
std::string triple_label(const PrecisionTriple& t);

struct PlanSet {
  StructuralPlan lu;
  StructuralPlan qr;
};

struct ExperimentOutcome {
  std::string matrix;
  std::string config;  // format name or triple label
  SolveStatus status = SolveStatus::ok;
  ExtendedReal abs_err{0.0};
  ExtendedReal rel_err{0.0};
  int iterations = 0;
};

/// One experiment with a single target format (lu, qr or gmres_ilu).
ExperimentOutcome run_format(const TestSystem& sys, SolverKind solver, FormatId format, const PlanSet& plans);

/// One MPIR experiment; tol defaults to the configured tolerance table.
ExperimentOutcome run_mpir(const TestSystem& sys, const PrecisionTriple& triple, double tol, const PlanSet& plans,
                           int max_iter = 100);

struct RunConfig {
  SolverKind solver = SolverKind::lu;
  std::vector<FormatId> formats;
  std::vector<PrecisionTriple> triples;
  std::optional<double> tol;  // MPIR only; required for triples outside the table
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path bundle;
  std::filesystem::path plan_dir;  // empty: beside the bundle
  std::filesystem::path out_dir;
  int jobs = 1;
};

struct RunSummary {
  std::vector<ExperimentOutcome> outcomes;  // sorted by (config, matrix)
  std::vector<std::string> matrices;
  std::vector<std::pair<std::string, std::string>> excluded;  // (matrix, reason)
  std::int64_t reused = 0;
  std::int64_t computed = 0;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output directory name for one column group, e.g. "solve_lu" or
/// "solve_mpir_takum_08_16_32".
std::string solve_dir_name(SolverKind solver, const std::optional<PrecisionTriple>& triple = std::nullopt);

/// Loads or builds plans, fans experiments out over cfg.jobs workers, appends
/// each result to outcomes.jsonl (skipping ones already stored for the same
/// seed) and writes the sorted CSVs and run.json.
RunSummary run_experiment(const RunConfig& cfg);

enum class ReportMetric { relative_error, iteration_count };

/// Cumulative-distribution table: `percent,<col>...`, each column sorted
/// ascending with failures after all finite values. columns holds
/// (config, header) pairs.
std::string emit_report(const std::vector<ExperimentOutcome>& outcomes, SolverKind solver, ReportMetric metric,
                        const std::vector<std::pair<std::string, std::string>>& columns);

/// Writes the CSVs of one solve directory from its outcomes.jsonl.
void write_reports(const std::filesystem::path& solve_dir, SolverKind solver,
                   const std::vector<std::pair<std::string, std::string>>& columns,
                   const std::vector<std::string>& matrices);

/// Records of outcomes.jsonl; with a seed, only those produced under it.
std::vector<ExperimentOutcome> read_outcomes(const std::filesystem::path& jsonl,
                                             std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace taperbench

#endif
