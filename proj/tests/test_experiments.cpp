#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "coevo/experiments.hpp"
#include "coevo/export.hpp"

using namespace coevo;
namespace fs = std::filesystem;

namespace {

const std::string kDemoCatalog = std::string(COEVO_SOURCE_DIR) + "/data/catalog.json";

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

TrialRecord record(bool dis, double best, int dis_gens = 0, bool optimum = false) {
    TrialRecord r;
    r.ever_disengaged = dis;
    r.disengaged_generations = dis_gens;
    r.best_objective = best;
    r.reached_optimum = optimum;
    return r;
}

}  // namespace

TEST_CASE("bias_grid sizes and ordering constraint") {
    auto coarse = bias_grid(GridKind::coarse);
    auto full = bias_grid(GridKind::full);
    CHECK(coarse.size() == 15);
    CHECK(full.size() == 55);
    for (const auto& [h, p] : full) {
        CHECK(p >= h);
        CHECK(h >= 0.1);
        CHECK(p <= 1.0);
    }
    // the coarse grid is a subset of the full one
    for (const auto& cell : coarse)
        CHECK(std::find(full.begin(), full.end(), cell) != full.end());
}

TEST_CASE("summarize aggregates a cell") {
    std::vector<TrialRecord> cell = {record(false, 100, 0, true), record(true, 90, 12),
                                     record(false, 95, 0, true)};
    CellSummary s = summarize(cell);
    CHECK(s.trials == 3);
    CHECK(s.engaged_run_count == 2);
    CHECK(s.reached_optimum_count == 2);
    CHECK(s.mean_best_objective == doctest::Approx(95.0));
    CHECK(s.mean_disengaged_generations == doctest::Approx(4.0));

    CellSummary one = summarize({record(true, 42.5, 7)});
    CHECK(one.trials == 1);
    CHECK(one.engaged_run_count == 0);
    CHECK(one.mean_best_objective == doctest::Approx(42.5));
    CHECK(one.mean_disengaged_generations == doctest::Approx(7.0));

    CHECK_THROWS_AS(summarize({}), ConfigError);
}

TEST_CASE("trial_seed is deterministic and key-sensitive") {
    auto s = trial_seed(1, 2, 3, 4, 5);
    CHECK(s == trial_seed(1, 2, 3, 4, 5));
    CHECK(s != trial_seed(2, 2, 3, 4, 5));
    CHECK(s != trial_seed(1, 3, 3, 4, 5));
    CHECK(s != trial_seed(1, 2, 4, 4, 5));
    CHECK(s != trial_seed(1, 2, 3, 5, 5));
    CHECK(s != trial_seed(1, 2, 3, 4, 6));
}

TEST_CASE("options round trip through json") {
    RunOptions opt = default_options("sweep", DomainKind::wellbeing);
    opt.techniques = {MitigationStrategy::Kind::baseline, MitigationStrategy::Kind::sf};
    opt.pop_sizes = {10, 20};
    opt.trials = 3;
    opt.generations = 7;
    opt.seed = 99;
    opt.catalog_path = kDemoCatalog;
    opt.synthetic_users = 5;
    opt.diversity_threshold = 0.5;
    opt.mitigation.kind = MitigationStrategy::Kind::rv;
    opt.mitigation.rv.upsilon = 0.75;
    opt.gt.beta_host = 0.6;
    opt.op.p_c = 0.7;

    RunOptions back = options_from_json(options_to_json(opt));
    CHECK(back.subcommand == opt.subcommand);
    CHECK(back.domain == opt.domain);
    CHECK(back.mode == opt.mode);
    CHECK(back.techniques == opt.techniques);
    CHECK(back.pop_sizes == opt.pop_sizes);
    CHECK(back.trials == opt.trials);
    CHECK(back.generations == opt.generations);
    CHECK(back.seed == opt.seed);
    CHECK(back.catalog_path == opt.catalog_path);
    CHECK(back.synthetic_users == opt.synthetic_users);
    CHECK(back.diversity_threshold == doctest::Approx(opt.diversity_threshold));
    CHECK(back.mitigation.kind == opt.mitigation.kind);
    CHECK(back.mitigation.rv.upsilon == doctest::Approx(opt.mitigation.rv.upsilon));
    CHECK(back.gt.beta_host == doctest::Approx(opt.gt.beta_host));
    CHECK(back.op.p_c == doctest::Approx(opt.op.p_c));
}

TEST_CASE("execute run writes a replayable trial") {
    TempDir dir_a("coevo_test_run_a"), dir_b("coevo_test_run_b");

    RunOptions opt = default_options("run", DomainKind::greater_than);
    opt.generations = 50;
    opt.gt.beta_host = 0.5;
    opt.gt.beta_parasite = 0.5;
    opt.seed = 7;

    nlohmann::json manifest = execute(opt, dir_a.str());
    CHECK(fs::exists(dir_a.file("trial.csv")));
    CHECK(fs::exists(dir_a.file("manifest.json")));
    REQUIRE(manifest.contains("outputs"));
    CHECK(manifest["outputs"].size() == 1);
    CHECK(manifest["outputs"][0] == "trial.csv");
    CHECK(manifest.contains("options"));
    CHECK(manifest["summary"].contains("best_objective_overall"));

    auto lines = read_lines(dir_a.file("trial.csv"));
    REQUIRE(lines.size() == 51);  // header + one row per generation
    CHECK(lines[0] ==
          "gen,sigma_host,sigma_parasite,delta,disengaged,kappa_applied,virulence_host,"
          "virulence_parasite,best_objective_host,best_objective_parasite,"
          "mean_objective_host,mean_objective_parasite");

    // same options, fresh directory, byte-identical output
    execute(opt, dir_b.str());
    CHECK(files_identical(dir_a.file("trial.csv"), dir_b.file("trial.csv")));

    SUBCASE("verify_manifest accepts, detects corruption, rejects garbage") {
        CHECK(verify_manifest(dir_a.file("manifest.json")) == 0);
        std::ofstream(dir_a.file("trial.csv"), std::ios::app) << "tampered\n";
        CHECK(verify_manifest(dir_a.file("manifest.json")) == 1);
        CHECK(verify_manifest(dir_a.file("missing.json")) == 2);
        std::ofstream(dir_a.file("bad.json")) << "{not json";
        CHECK(verify_manifest(dir_a.file("bad.json")) == 2);
    }
}

TEST_CASE("execute sweep on the greater-than grid") {
    TempDir dir("coevo_test_sweep_gt");
    RunOptions opt = default_options("sweep", DomainKind::greater_than);
    opt.grid = GridKind::coarse;
    opt.trials = 1;
    opt.generations = 20;
    opt.techniques = {MitigationStrategy::Kind::baseline};
    execute(opt, dir.str());

    auto grid = read_lines(dir.file("grid.csv"));
    CHECK(grid.size() == 16);  // header + 15 cells
    CHECK(grid[0].rfind("beta_h,beta_p,technique,", 0) == 0);

    opt.techniques = {MitigationStrategy::Kind::baseline, MitigationStrategy::Kind::sf};
    TempDir dir2("coevo_test_sweep_gt2");
    execute(opt, dir2.str());
    CHECK(read_lines(dir2.file("grid.csv")).size() == 31);
    CHECK(verify_manifest(dir2.file("manifest.json")) == 0);
}

TEST_CASE("execute sweep on the well-being domain") {
    TempDir dir("coevo_test_sweep_wb");
    RunOptions opt = default_options("sweep", DomainKind::wellbeing);
    opt.pop_sizes = {10};
    opt.trials = 2;
    opt.generations = 5;
    opt.synthetic_users = 5;
    opt.techniques = {MitigationStrategy::Kind::baseline};
    opt.catalog_path = kDemoCatalog;
    opt.diversity_threshold = 0.5;
    nlohmann::json manifest = execute(opt, dir.str());

    auto grid = read_lines(dir.file("grid.csv"));
    REQUIRE(grid.size() == 2);
    CHECK(grid[0].rfind("n,technique,", 0) == 0);
    CHECK(grid[0].find("fitness_threshold") != std::string::npos);
    CHECK(grid[0].find("diversity_error") != std::string::npos);
    CHECK(manifest.contains("diversity_threshold"));
    CHECK(verify_manifest(dir.file("manifest.json")) == 0);
}

TEST_CASE("execute month comparison") {
    TempDir dir("coevo_test_month");
    RunOptions opt = default_options("month", DomainKind::wellbeing);
    opt.n = 12;
    opt.generations = 5;
    opt.trials = 3;
    opt.synthetic_users = 4;
    opt.catalog_path = kDemoCatalog;
    execute(opt, dir.str());

    auto month = read_lines(dir.file("month.csv"));
    CHECK(month.size() == 10);  // header + 3 conditions x 3 trials
    auto summary = read_lines(dir.file("month_summary.csv"));
    REQUIRE(summary.size() == 4);
    CHECK(summary[1].rfind("single,", 0) == 0);
    CHECK(summary[2].rfind("coevolution,", 0) == 0);
    CHECK(summary[3].rfind("coevolution_sf,", 0) == 0);

    TempDir dir2("coevo_test_month2");
    execute(opt, dir2.str());
    CHECK(files_identical(dir.file("month.csv"), dir2.file("month.csv")));
    CHECK(files_identical(dir.file("month_summary.csv"), dir2.file("month_summary.csv")));
}
