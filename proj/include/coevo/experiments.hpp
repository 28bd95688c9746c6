#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "coevo/engine.hpp"
#include "coevo/greater_than.hpp"
#include "coevo/wellbeing/domain.hpp"

namespace coevo {

enum class DomainKind { greater_than, wellbeing };
enum class GridKind { coarse, full };

const char* domain_name(DomainKind d);
DomainKind domain_from_name(const std::string& name);

// Everything needed to reproduce a data-producing invocation; serialized as
// the run manifest.
struct RunOptions {
    std::string subcommand = "run";  // run | sweep | month | threshold
    DomainKind domain = DomainKind::greater_than;
    EngineMode mode = EngineMode::coevolution;
    MitigationStrategy mitigation;
    std::vector<MitigationStrategy::Kind> techniques;  // sweep
    GridKind grid = GridKind::coarse;
    std::vector<std::size_t> pop_sizes = {30, 60, 130, 260, 510};
    int trials = 20;
    std::size_t n = 25;
    std::size_t S = 5;
    int generations = 1000;
    std::uint64_t seed = 1;
    GtConfig gt;
    wellbeing::OperatorConfig op;
    std::string catalog_path;
    std::string users_path;
    std::size_t synthetic_users = 28;
    double fitness_threshold = 0.33;
    double diversity_threshold = std::numeric_limits<double>::quiet_NaN();
    bool log_generations = false;
    int jobs = 1;
};

// Paper-default parameters per subcommand/domain.
RunOptions default_options(const std::string& subcommand, DomainKind domain);

nlohmann::json options_to_json(const RunOptions& opt);
RunOptions options_from_json(const nlohmann::json& j);

struct TrialRecord {
    double beta_h = 0, beta_p = 0;  // greater-than cell key
    std::size_t n = 0;              // well-being cell key
    MitigationStrategy::Kind technique = MitigationStrategy::Kind::baseline;
    int trial = 0;
    std::uint64_t seed = 0;
    bool ever_disengaged = false;
    int disengaged_generations = 0;
    double best_objective = 0;
    bool reached_optimum = false;
    std::vector<GenerationStats> generations;  // kept only when logging
    wellbeing::WellbeingPlan best_plan{};      // well-being only
};

struct CellSummary {
    double beta_h = 0, beta_p = 0;
    std::size_t n = 0;
    MitigationStrategy::Kind technique = MitigationStrategy::Kind::baseline;
    int trials = 0;
    int engaged_run_count = 0;
    int reached_optimum_count = 0;
    double mean_best_objective = 0;
    double mean_disengaged_generations = 0;
    double diversity_error = std::numeric_limits<double>::quiet_NaN();  // well-being
    bool thresholds_met = false;                                       // well-being
};

// Aggregates one cell's trial records (all sharing the same key/technique).
CellSummary summarize(const std::vector<TrialRecord>& cell_trials);

struct SweepOutcome {
    std::vector<CellSummary> cells;
    std::vector<TrialRecord> trials;
};

struct MonthCondition {
    std::string name;  // single | coevolution | coevolution_sf
    std::vector<TrialRecord> trials;
    double median_best_error = 0;
    double diversity_error = 0;
};

struct MonthOutcome {
    std::vector<MonthCondition> conditions;
    double diversity_threshold = std::numeric_limits<double>::quiet_NaN();
};

// Deterministic per-trial seed; adding techniques or cells never shifts the
// streams of other cells.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t cell_a, std::uint64_t cell_b,
                         std::uint64_t technique, std::uint64_t trial);

// Bias pairs (beta_h, beta_p) with beta_p >= beta_h: 15 for the coarse grid,
// 55 for the full one.
std::vector<std::pair<double, double>> bias_grid(GridKind grid);

SweepOutcome run_bias_sweep(const RunOptions& opt);

SweepOutcome run_popsize_sweep(const RunOptions& opt, const wellbeing::Catalog& catalog,
                               const std::vector<wellbeing::UserProfile>& users,
                               double diversity_threshold);

MonthOutcome run_month_comparison(const RunOptions& opt, const wellbeing::Catalog& catalog,
                                  const std::vector<wellbeing::UserProfile>& users);

// Mirrors the single-population month procedure: 28 evolutionary runs, one
// 28-plan diversity error over their best plans.
double compute_diversity_threshold(std::uint64_t seed, const wellbeing::Catalog& catalog,
                                   const std::vector<wellbeing::UserProfile>& users,
                                   int generations = 500, std::size_t n = 250, int jobs = 1);

// Runs the invocation and writes all output files plus manifest.json under
// out_dir. Returns the manifest.
nlohmann::json execute(const RunOptions& opt, const std::string& out_dir);

// Re-executes a manifest into a scratch directory and byte-compares outputs.
// Returns 0 on identical outputs, 1 on divergence, 2 on a bad manifest.
int verify_manifest(const std::string& manifest_path);

}  // namespace coevo
