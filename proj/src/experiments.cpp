#include "coevo/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "coevo/export.hpp"

#ifdef COEVO_HAVE_OPENMP
#include <omp.h>
#endif

namespace coevo {

namespace fs = std::filesystem;
using wellbeing::Catalog;
using wellbeing::UserProfile;
using wellbeing::WellbeingDomain;
using wellbeing::WellbeingPlan;

const char* domain_name(DomainKind d) {
    return d == DomainKind::greater_than ? "greater-than" : "wellbeing";
}

DomainKind domain_from_name(const std::string& name) {
    if (name == "greater-than" || name == "greater_than") return DomainKind::greater_than;
    if (name == "wellbeing" || name == "well-being") return DomainKind::wellbeing;
    throw ConfigError("unknown domain: " + name);
}

RunOptions default_options(const std::string& subcommand, DomainKind domain) {
    RunOptions opt;
    opt.subcommand = subcommand;
    opt.domain = domain;
    if (domain == DomainKind::greater_than) {
        opt.n = 25;
        opt.generations = 1000;
        opt.trials = 20;
    } else {
        opt.n = 130;
        opt.generations = 500;
        opt.trials = 10;
        opt.op.p_c = 0.8;
        opt.op.p_m = 0.1;
        opt.catalog_path = "data/catalog.json";
    }
    if (subcommand == "month" || subcommand == "threshold") {
        // web-application configuration
        opt.domain = DomainKind::wellbeing;
        opt.n = 250;
        opt.generations = subcommand == "month" ? 150 : 500;
        opt.trials = 28;
        opt.op.p_c = 0.6;
        opt.op.p_m = 0.1;
        opt.catalog_path = "data/catalog.json";
    }
    return opt;
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t cell_a, std::uint64_t cell_b,
                         std::uint64_t technique, std::uint64_t trial) {
    return mix_seed({base, cell_a, cell_b, technique, trial});
}

std::vector<std::pair<double, double>> bias_grid(GridKind grid) {
    std::vector<double> levels;
    if (grid == GridKind::coarse)
        levels = {0.1, 0.3, 0.5, 0.7, 0.9};
    else
        for (int i = 1; i <= 10; ++i) levels.push_back(i / 10.0);
    std::vector<std::pair<double, double>> cells;
    for (double bh : levels)
        for (double bp : levels)
            if (bp >= bh) cells.emplace_back(bh, bp);
    return cells;
}

CellSummary summarize(const std::vector<TrialRecord>& cell_trials) {
    if (cell_trials.empty()) throw ConfigError("summarize: no trials");
    CellSummary s;
    s.beta_h = cell_trials.front().beta_h;
    s.beta_p = cell_trials.front().beta_p;
    s.n = cell_trials.front().n;
    s.technique = cell_trials.front().technique;
    s.trials = static_cast<int>(cell_trials.size());
    double best_sum = 0, dis_sum = 0;
    for (const auto& t : cell_trials) {
        if (!t.ever_disengaged) ++s.engaged_run_count;
        if (t.reached_optimum) ++s.reached_optimum_count;
        best_sum += t.best_objective;
        dis_sum += t.disengaged_generations;
    }
    s.mean_best_objective = best_sum / s.trials;
    s.mean_disengaged_generations = dis_sum / s.trials;
    return s;
}

namespace {

template <class F>
void for_each_job(std::size_t count, int jobs, F&& fn) {
#ifdef COEVO_HAVE_OPENMP
    if (jobs > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
        for (long long i = 0; i < static_cast<long long>(count); ++i)
            fn(static_cast<std::size_t>(i));
        return;
    }
#endif
    for (std::size_t i = 0; i < count; ++i) fn(i);
}

MitigationStrategy make_strategy(MitigationStrategy::Kind kind, const RunOptions& opt) {
    MitigationStrategy s = opt.mitigation;
    s.kind = kind;
    return s;
}

std::uint64_t bias_key(double beta) {
    return static_cast<std::uint64_t>(std::llround(beta * 10.0));
}

template <class G>
void fill_record(TrialRecord& rec, const TrialResult<G>& res, bool keep_gens) {
    rec.ever_disengaged = res.summary.ever_disengaged;
    rec.disengaged_generations = res.summary.disengaged_generation_count;
    rec.best_objective = res.summary.best_objective_overall;
    rec.reached_optimum = res.summary.reached_optimum;
    if (keep_gens) rec.generations = res.per_generation;
}

TrialRecord run_gt_record(const RunOptions& opt, double beta_h, double beta_p,
                          MitigationStrategy::Kind tech, int trial, std::uint64_t seed) {
    GtConfig g = opt.gt;
    g.beta_host = beta_h;
    g.beta_parasite = beta_p;
    GreaterThanDomain domain(g);

    EngineConfig ec;
    ec.n = opt.n;
    ec.S = opt.S;
    ec.generations = opt.generations;
    ec.mitigation = make_strategy(tech, opt);
    ec.seed = seed;

    TrialRecord rec;
    rec.beta_h = beta_h;
    rec.beta_p = beta_p;
    rec.technique = tech;
    rec.trial = trial;
    rec.seed = seed;
    Rng rng(seed);
    fill_record(rec, run_trial(ec, domain, rng), opt.log_generations);
    return rec;
}

TrialRecord run_wb_record(const RunOptions& opt, std::size_t n, MitigationStrategy::Kind tech,
                          bool single_population, int trial, std::uint64_t seed,
                          const Catalog& catalog, const std::vector<UserProfile>& users) {
    WellbeingDomain domain(&catalog, &users, static_cast<std::size_t>(trial) % users.size(),
                           opt.op);
    EngineConfig ec;
    ec.n = n;
    ec.S = opt.S;
    ec.generations = opt.generations;
    ec.seed = seed;
    ec.mode = single_population ? EngineMode::single_population : EngineMode::coevolution;
    ec.mitigation = single_population ? MitigationStrategy::baseline() : make_strategy(tech, opt);

    TrialRecord rec;
    rec.n = n;
    rec.technique = tech;
    rec.trial = trial;
    rec.seed = seed;
    Rng rng(seed);
    auto res = single_population ? run_single_population(ec, domain, rng)
                                 : run_trial(ec, domain, rng);
    fill_record(rec, res, opt.log_generations);
    rec.best_plan = res.best_genome_host;
    return rec;
}

double cell_diversity(const std::vector<TrialRecord>& cell_trials, const Catalog& catalog) {
    std::vector<WellbeingPlan> plans;
    for (const auto& t : cell_trials) {
        plans.push_back(t.best_plan);
        if (plans.size() == 28) break;
    }
    return plans.size() == 28 ? wellbeing::diversity_error(plans, catalog)
                              : wellbeing::diversity_error_any(plans, catalog);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

SweepOutcome run_bias_sweep(const RunOptions& opt) {
    auto cells = bias_grid(opt.grid);
    struct Job {
        std::size_t cell;
        std::size_t tech;
        int trial;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (std::size_t c = 0; c < cells.size(); ++c)
        for (std::size_t q = 0; q < opt.techniques.size(); ++q)
            for (int i = 0; i < opt.trials; ++i)
                jobs.push_back({c, q, i,
                                trial_seed(opt.seed, bias_key(cells[c].first),
                                           bias_key(cells[c].second),
                                           static_cast<std::uint64_t>(opt.techniques[q]),
                                           static_cast<std::uint64_t>(i))});

    std::vector<TrialRecord> records(jobs.size());
    for_each_job(jobs.size(), opt.jobs, [&](std::size_t j) {
        const Job& job = jobs[j];
        records[j] = run_gt_record(opt, cells[job.cell].first, cells[job.cell].second,
                                   opt.techniques[job.tech], job.trial, job.seed);
    });

    SweepOutcome out;
    out.trials = std::move(records);
    for (std::size_t c = 0; c < cells.size(); ++c)
        for (std::size_t q = 0; q < opt.techniques.size(); ++q) {
            std::vector<TrialRecord> cell_trials;
            for (const auto& r : out.trials)
                if (r.beta_h == cells[c].first && r.beta_p == cells[c].second &&
                    r.technique == opt.techniques[q])
                    cell_trials.push_back(r);
            out.cells.push_back(summarize(cell_trials));
        }
    return out;
}

SweepOutcome run_popsize_sweep(const RunOptions& opt, const Catalog& catalog,
                               const std::vector<UserProfile>& users,
                               double diversity_threshold) {
    struct Job {
        std::size_t cell;
        std::size_t tech;
        int trial;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (std::size_t c = 0; c < opt.pop_sizes.size(); ++c)
        for (std::size_t q = 0; q < opt.techniques.size(); ++q)
            for (int i = 0; i < opt.trials; ++i)
                jobs.push_back({c, q, i,
                                trial_seed(opt.seed, opt.pop_sizes[c], 0,
                                           static_cast<std::uint64_t>(opt.techniques[q]),
                                           static_cast<std::uint64_t>(i))});

    std::vector<TrialRecord> records(jobs.size());
    for_each_job(jobs.size(), opt.jobs, [&](std::size_t j) {
        const Job& job = jobs[j];
        records[j] = run_wb_record(opt, opt.pop_sizes[job.cell], opt.techniques[job.tech], false,
                                   job.trial, job.seed, catalog, users);
    });

    SweepOutcome out;
    out.trials = std::move(records);
    for (std::size_t c = 0; c < opt.pop_sizes.size(); ++c)
        for (std::size_t q = 0; q < opt.techniques.size(); ++q) {
            std::vector<TrialRecord> cell_trials;
            for (const auto& r : out.trials)
                if (r.n == opt.pop_sizes[c] && r.technique == opt.techniques[q])
                    cell_trials.push_back(r);
            CellSummary s = summarize(cell_trials);
            s.diversity_error = cell_diversity(cell_trials, catalog);
            s.thresholds_met = s.mean_best_objective <= opt.fitness_threshold &&
                               !std::isnan(diversity_threshold) &&
                               s.diversity_error <= diversity_threshold;
            out.cells.push_back(s);
        }
    return out;
}

MonthOutcome run_month_comparison(const RunOptions& opt, const Catalog& catalog,
                                  const std::vector<UserProfile>& users) {
    struct Condition {
        std::string name;
        bool single;
        MitigationStrategy::Kind tech;
    };
    const std::vector<Condition> conditions = {
        {"single", true, MitigationStrategy::Kind::baseline},
        {"coevolution", false, MitigationStrategy::Kind::baseline},
        {"coevolution_sf", false, MitigationStrategy::Kind::sf},
    };

    struct Job {
        std::size_t cond;
        int trial;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (std::size_t c = 0; c < conditions.size(); ++c)
        for (int i = 0; i < opt.trials; ++i)
            jobs.push_back({c, i,
                            trial_seed(opt.seed, 0x6d6f6e7468ULL, c,
                                       static_cast<std::uint64_t>(conditions[c].tech),
                                       static_cast<std::uint64_t>(i))});

    std::vector<TrialRecord> records(jobs.size());
    for_each_job(jobs.size(), opt.jobs, [&](std::size_t j) {
        const Job& job = jobs[j];
        const auto& cond = conditions[job.cond];
        records[j] = run_wb_record(opt, opt.n, cond.tech, cond.single, job.trial, job.seed,
                                   catalog, users);
    });

    MonthOutcome out;
    for (std::size_t c = 0; c < conditions.size(); ++c) {
        MonthCondition mc;
        mc.name = conditions[c].name;
        for (std::size_t j = 0; j < jobs.size(); ++j)
            if (jobs[j].cond == c) mc.trials.push_back(records[j]);
        std::vector<double> best;
        std::vector<WellbeingPlan> plans;
        for (const auto& t : mc.trials) {
            best.push_back(t.best_objective);
            plans.push_back(t.best_plan);
        }
        mc.median_best_error = median(best);
        mc.diversity_error = plans.size() == 28 ? wellbeing::diversity_error(plans, catalog)
                                                : wellbeing::diversity_error_any(plans, catalog);
        out.conditions.push_back(std::move(mc));
    }
    return out;
}

double compute_diversity_threshold(std::uint64_t seed, const Catalog& catalog,
                                   const std::vector<UserProfile>& users, int generations,
                                   std::size_t n, int jobs) {
    RunOptions opt = default_options("threshold", DomainKind::wellbeing);
    opt.generations = generations;
    opt.n = n;
    opt.seed = seed;
    std::vector<TrialRecord> records(28);
    for_each_job(28, jobs, [&](std::size_t i) {
        std::uint64_t s = trial_seed(seed, 0x7468726573ULL, 0, 0, i);
        records[i] = run_wb_record(opt, n, MitigationStrategy::Kind::baseline, true,
                                   static_cast<int>(i), s, catalog, users);
    });
    std::vector<WellbeingPlan> plans;
    for (const auto& r : records) plans.push_back(r.best_plan);
    return wellbeing::diversity_error(plans, catalog);
}

// ---------------------------------------------------------------------------
// manifest (de)serialization

nlohmann::json options_to_json(const RunOptions& opt) {
    nlohmann::json j;
    j["subcommand"] = opt.subcommand;
    j["domain"] = domain_name(opt.domain);
    j["mode"] = opt.mode == EngineMode::coevolution ? "coevolution" : "single";
    j["mitigation"] = mitigation_name(opt.mitigation.kind);
    j["rv_virulence"] = opt.mitigation.rv.upsilon;
    j["rv_target"] = opt.mitigation.rv.target == RvTarget::host      ? "host"
                     : opt.mitigation.rv.target == RvTarget::parasite ? "parasite"
                                                                      : "both";
    j["ava_alpha"] = opt.mitigation.ava.alpha;
    j["ava_mu"] = opt.mitigation.ava.mu;
    j["ava_tau"] = opt.mitigation.ava.tau;
    j["ava_upsilon0"] = opt.mitigation.ava.upsilon0;
    std::vector<std::string> techs;
    for (auto t : opt.techniques) techs.push_back(mitigation_name(t));
    j["techniques"] = techs;
    j["grid"] = opt.grid == GridKind::coarse ? "coarse" : "full";
    j["pop_sizes"] = opt.pop_sizes;
    j["trials"] = opt.trials;
    j["n"] = opt.n;
    j["S"] = opt.S;
    j["generations"] = opt.generations;
    j["seed"] = opt.seed;
    j["l"] = opt.gt.l;
    j["m"] = opt.gt.m;
    j["beta_host"] = opt.gt.beta_host;
    j["beta_parasite"] = opt.gt.beta_parasite;
    j["p_c"] = opt.op.p_c;
    j["p_m"] = opt.op.p_m;
    j["p_b"] = opt.op.p_b;
    j["catalog"] = opt.catalog_path;
    j["users"] = opt.users_path;
    j["synthetic_users"] = opt.synthetic_users;
    j["fitness_threshold"] = opt.fitness_threshold;
    if (!std::isnan(opt.diversity_threshold))
        j["diversity_threshold"] = opt.diversity_threshold;
    j["log_generations"] = opt.log_generations;
    return j;
}

RunOptions options_from_json(const nlohmann::json& j) {
    RunOptions opt = default_options(j.at("subcommand").get<std::string>(),
                                     domain_from_name(j.at("domain").get<std::string>()));
    opt.mode = j.value("mode", "coevolution") == "single" ? EngineMode::single_population
                                                          : EngineMode::coevolution;
    opt.mitigation.kind = mitigation_kind_from_name(j.at("mitigation").get<std::string>());
    opt.mitigation.rv.upsilon = j.value("rv_virulence", 0.75);
    std::string target = j.value("rv_target", "parasite");
    opt.mitigation.rv.target = target == "host"   ? RvTarget::host
                               : target == "both" ? RvTarget::both
                                                  : RvTarget::parasite;
    opt.mitigation.ava.alpha = j.value("ava_alpha", 0.0125);
    opt.mitigation.ava.mu = j.value("ava_mu", 0.3);
    opt.mitigation.ava.tau = j.value("ava_tau", 0.56);
    opt.mitigation.ava.upsilon0 = j.value("ava_upsilon0", 0.75);
    opt.techniques.clear();
    for (const auto& t : j.value("techniques", std::vector<std::string>{}))
        opt.techniques.push_back(mitigation_kind_from_name(t));
    opt.grid = j.value("grid", "coarse") == "full" ? GridKind::full : GridKind::coarse;
    opt.pop_sizes = j.value("pop_sizes", opt.pop_sizes);
    opt.trials = j.value("trials", opt.trials);
    opt.n = j.value("n", opt.n);
    opt.S = j.value("S", opt.S);
    opt.generations = j.value("generations", opt.generations);
    opt.seed = j.value("seed", std::uint64_t{1});
    opt.gt.l = j.value("l", std::size_t{100});
    opt.gt.m = j.value("m", 0.005);
    opt.gt.beta_host = j.value("beta_host", 0.5);
    opt.gt.beta_parasite = j.value("beta_parasite", 0.5);
    opt.op.p_c = j.value("p_c", opt.op.p_c);
    opt.op.p_m = j.value("p_m", opt.op.p_m);
    opt.op.p_b = j.value("p_b", opt.op.p_b);
    opt.catalog_path = j.value("catalog", opt.catalog_path);
    opt.users_path = j.value("users", std::string{});
    opt.synthetic_users = j.value("synthetic_users", std::size_t{28});
    opt.fitness_threshold = j.value("fitness_threshold", 0.33);
    if (j.contains("diversity_threshold"))
        opt.diversity_threshold = j["diversity_threshold"].get<double>();
    opt.log_generations = j.value("log_generations", false);
    return opt;
}

// ---------------------------------------------------------------------------
// file export

namespace {

std::string plan_food_ids(const WellbeingPlan& plan, const Catalog& catalog) {
    std::ostringstream s;
    bool first = true;
    for (const auto& b : plan.bundles) {
        for (std::size_t item : {b.main.item, b.sides[0].item, b.sides[1].item, b.sides[2].item}) {
            if (!first) s << ';';
            s << catalog.foods[item].id;
            first = false;
        }
    }
    return s.str();
}

std::string plan_exercise_ids(const WellbeingPlan& plan, const Catalog& catalog) {
    std::ostringstream s;
    bool first = true;
    for (const auto& b : plan.bundles) {
        if (!first) s << ';';
        s << catalog.exercises[b.exercise.item].id;
        first = false;
    }
    return s.str();
}

void write_generation_rows(CsvWriter& csv, const TrialRecord& r, bool gt_cell) {
    for (const auto& g : r.generations) {
        if (gt_cell)
            csv.field(r.beta_h).field(r.beta_p);
        else
            csv.field(r.n);
        csv.field(std::string(mitigation_name(r.technique)))
            .field(r.trial)
            .field(r.seed)
            .field(g.gen)
            .field(g.sigma_host)
            .field(g.sigma_parasite)
            .field(g.delta)
            .field(g.disengaged)
            .field(g.kappa_applied)
            .field(g.virulence_host)
            .field(g.virulence_parasite)
            .field(g.best_objective_host)
            .field(g.best_objective_parasite)
            .field(g.mean_objective_host)
            .field(g.mean_objective_parasite);
        csv.end_row();
    }
}

void write_trials_csv(const std::string& path, const std::vector<TrialRecord>& records,
                      DomainKind domain, bool log_generations, const Catalog* catalog) {
    bool gt = domain == DomainKind::greater_than;
    std::vector<std::string> cell_cols =
        gt ? std::vector<std::string>{"beta_h", "beta_p"} : std::vector<std::string>{"n"};

    if (log_generations) {
        std::vector<std::string> header = cell_cols;
        for (const char* c :
             {"technique", "trial", "seed", "gen", "sigma_host", "sigma_parasite", "delta",
              "disengaged", "kappa_applied", "virulence_host", "virulence_parasite",
              "best_objective_host", "best_objective_parasite", "mean_objective_host",
              "mean_objective_parasite"})
            header.push_back(c);
        CsvWriter csv(path, header);
        for (const auto& r : records) write_generation_rows(csv, r, gt);
        return;
    }

    std::vector<std::string> header = cell_cols;
    for (const char* c : {"technique", "trial", "seed", "ever_disengaged",
                          "disengaged_generations", "best_objective", "reached_optimum"})
        header.push_back(c);
    if (!gt) {
        header.push_back("best_plan_foods");
        header.push_back("best_plan_exercises");
    }
    CsvWriter csv(path, header);
    for (const auto& r : records) {
        if (gt)
            csv.field(r.beta_h).field(r.beta_p);
        else
            csv.field(r.n);
        csv.field(std::string(mitigation_name(r.technique)))
            .field(r.trial)
            .field(r.seed)
            .field(r.ever_disengaged)
            .field(r.disengaged_generations)
            .field(r.best_objective)
            .field(r.reached_optimum);
        if (!gt) {
            csv.field(plan_food_ids(r.best_plan, *catalog));
            csv.field(plan_exercise_ids(r.best_plan, *catalog));
        }
        csv.end_row();
    }
}

void write_grid_csv(const std::string& path, const std::vector<CellSummary>& cells,
                    DomainKind domain, double fitness_threshold, double diversity_threshold) {
    if (domain == DomainKind::greater_than) {
        CsvWriter csv(path, {"beta_h", "beta_p", "technique", "engaged_runs", "reached_optimum",
                             "mean_best_objective", "mean_disengaged_gens"});
        for (const auto& c : cells) {
            csv.field(c.beta_h)
                .field(c.beta_p)
                .field(std::string(mitigation_name(c.technique)))
                .field(c.engaged_run_count)
                .field(c.reached_optimum_count)
                .field(c.mean_best_objective)
                .field(c.mean_disengaged_generations);
            csv.end_row();
        }
        return;
    }
    CsvWriter csv(path, {"n", "technique", "engaged_runs", "reached_optimum",
                         "mean_best_objective", "mean_disengaged_gens", "diversity_error",
                         "fitness_threshold", "diversity_threshold", "thresholds_met"});
    for (const auto& c : cells) {
        csv.field(c.n)
            .field(std::string(mitigation_name(c.technique)))
            .field(c.engaged_run_count)
            .field(c.reached_optimum_count)
            .field(c.mean_best_objective)
            .field(c.mean_disengaged_generations)
            .field(c.diversity_error)
            .field(fitness_threshold)
            .field(diversity_threshold)
            .field(c.thresholds_met);
        csv.end_row();
    }
}

void write_single_trial_csv(const std::string& path, const std::vector<GenerationStats>& gens) {
    CsvWriter csv(path, {"gen", "sigma_host", "sigma_parasite", "delta", "disengaged",
                         "kappa_applied", "virulence_host", "virulence_parasite",
                         "best_objective_host", "best_objective_parasite",
                         "mean_objective_host", "mean_objective_parasite"});
    for (const auto& g : gens) {
        csv.field(g.gen)
            .field(g.sigma_host)
            .field(g.sigma_parasite)
            .field(g.delta)
            .field(g.disengaged)
            .field(g.kappa_applied)
            .field(g.virulence_host)
            .field(g.virulence_parasite)
            .field(g.best_objective_host)
            .field(g.best_objective_parasite)
            .field(g.mean_objective_host)
            .field(g.mean_objective_parasite);
        csv.end_row();
    }
}

struct WellbeingContext {
    Catalog catalog;
    std::vector<UserProfile> users;
};

WellbeingContext load_wellbeing_context(const RunOptions& opt) {
    WellbeingContext ctx;
    ctx.catalog = wellbeing::load_catalog(opt.catalog_path);
    if (!opt.users_path.empty())
        ctx.users = wellbeing::load_users(opt.users_path);
    else
        ctx.users = wellbeing::generate_synthetic_users(opt.synthetic_users, opt.seed,
                                                        ctx.catalog);
    return ctx;
}

}  // namespace

nlohmann::json execute(const RunOptions& opt, const std::string& out_dir) {
    fs::create_directories(out_dir);
    nlohmann::json manifest;
    manifest["schema"] = 1;
    manifest["options"] = options_to_json(opt);
    std::vector<std::string> outputs;

    WellbeingContext ctx;
    bool needs_wellbeing = opt.domain == DomainKind::wellbeing || opt.subcommand == "month" ||
                           opt.subcommand == "threshold";
    if (needs_wellbeing) {
        ctx = load_wellbeing_context(opt);
        manifest["catalog_hash"] = wellbeing::file_hash(opt.catalog_path);
        if (!opt.users_path.empty())
            manifest["users_hash"] = wellbeing::file_hash(opt.users_path);
    }

    auto path_of = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };

    if (opt.subcommand == "run") {
        if (opt.domain == DomainKind::greater_than) {
            GreaterThanDomain domain(opt.gt);
            EngineConfig ec;
            ec.n = opt.n;
            ec.S = opt.S;
            ec.generations = opt.generations;
            ec.mitigation = opt.mitigation;
            ec.seed = opt.seed;
            ec.mode = opt.mode;
            Rng rng(opt.seed);
            auto res = opt.mode == EngineMode::single_population
                           ? run_single_population(ec, domain, rng)
                           : run_trial(ec, domain, rng);
            write_single_trial_csv(path_of("trial.csv"), res.per_generation);
            manifest["summary"] = {
                {"ever_disengaged", res.summary.ever_disengaged},
                {"disengaged_generation_count", res.summary.disengaged_generation_count},
                {"reached_optimum", res.summary.reached_optimum},
                {"best_objective_overall", res.summary.best_objective_overall}};
        } else {
            WellbeingDomain domain(&ctx.catalog, &ctx.users, 0, opt.op);
            EngineConfig ec;
            ec.n = opt.n;
            ec.S = opt.S;
            ec.generations = opt.generations;
            ec.mitigation = opt.mitigation;
            ec.seed = opt.seed;
            ec.mode = opt.mode;
            Rng rng(opt.seed);
            auto res = opt.mode == EngineMode::single_population
                           ? run_single_population(ec, domain, rng)
                           : run_trial(ec, domain, rng);
            write_single_trial_csv(path_of("trial.csv"), res.per_generation);
            manifest["summary"] = {
                {"ever_disengaged", res.summary.ever_disengaged},
                {"disengaged_generation_count", res.summary.disengaged_generation_count},
                {"best_objective_overall", res.summary.best_objective_overall},
                {"best_plan_foods", plan_food_ids(res.best_genome_host, ctx.catalog)},
                {"best_plan_exercises", plan_exercise_ids(res.best_genome_host, ctx.catalog)}};
        }
        outputs.push_back("trial.csv");
    } else if (opt.subcommand == "sweep") {
        SweepOutcome outcome;
        double div_threshold = opt.diversity_threshold;
        if (opt.domain == DomainKind::greater_than) {
            outcome = run_bias_sweep(opt);
        } else {
            if (std::isnan(div_threshold))
                div_threshold = compute_diversity_threshold(opt.seed, ctx.catalog, ctx.users,
                                                            500, 250, opt.jobs);
            manifest["diversity_threshold"] = div_threshold;
            outcome = run_popsize_sweep(opt, ctx.catalog, ctx.users, div_threshold);
        }
        write_grid_csv(path_of("grid.csv"), outcome.cells, opt.domain, opt.fitness_threshold,
                       div_threshold);
        write_trials_csv(path_of("trials.csv"), outcome.trials, opt.domain, opt.log_generations,
                         needs_wellbeing ? &ctx.catalog : nullptr);
        outputs.push_back("grid.csv");
        outputs.push_back("trials.csv");
    } else if (opt.subcommand == "month") {
        MonthOutcome outcome = run_month_comparison(opt, ctx.catalog, ctx.users);
        {
            CsvWriter csv(path_of("month.csv"),
                          {"condition", "trial", "seed", "best_error", "best_plan_foods",
                           "best_plan_exercises"});
            for (const auto& cond : outcome.conditions)
                for (const auto& t : cond.trials) {
                    csv.field(cond.name)
                        .field(t.trial)
                        .field(t.seed)
                        .field(t.best_objective)
                        .field(plan_food_ids(t.best_plan, ctx.catalog))
                        .field(plan_exercise_ids(t.best_plan, ctx.catalog));
                    csv.end_row();
                }
        }
        {
            CsvWriter csv(path_of("month_summary.csv"),
                          {"condition", "trials", "median_best_error", "diversity_error"});
            for (const auto& cond : outcome.conditions) {
                csv.field(cond.name)
                    .field(static_cast<int>(cond.trials.size()))
                    .field(cond.median_best_error)
                    .field(cond.diversity_error);
                csv.end_row();
            }
        }
        outputs.push_back("month.csv");
        outputs.push_back("month_summary.csv");
    } else if (opt.subcommand == "threshold") {
        double threshold = compute_diversity_threshold(opt.seed, ctx.catalog, ctx.users,
                                                       opt.generations, opt.n, opt.jobs);
        manifest["diversity_threshold"] = threshold;
        CsvWriter csv(path_of("threshold.csv"),
                      {"diversity_threshold", "trials", "generations", "n"});
        csv.field(threshold).field(28).field(opt.generations).field(opt.n);
        csv.end_row();
        outputs.push_back("threshold.csv");
    } else {
        throw ConfigError("unknown subcommand: " + opt.subcommand);
    }

    manifest["outputs"] = outputs;
    write_manifest(manifest, path_of("manifest.json"));
    return manifest;
}

int verify_manifest(const std::string& manifest_path) {
    nlohmann::json manifest;
    try {
        manifest = read_manifest(manifest_path);
    } catch (const std::exception& e) {
        fprintf(stderr, "verify: %s\n", e.what());
        return 2;
    }

    RunOptions opt;
    try {
        opt = options_from_json(manifest.at("options"));
    } catch (const std::exception& e) {
        fprintf(stderr, "verify: bad manifest: %s\n", e.what());
        return 2;
    }

    fs::path orig_dir = fs::path(manifest_path).parent_path();
    fs::path scratch = fs::temp_directory_path() /
                       ("coevo-verify-" + std::to_string(wellbeing::file_hash(manifest_path)));
    fs::remove_all(scratch);

    try {
        execute(opt, scratch.string());
    } catch (const std::exception& e) {
        fprintf(stderr, "verify: re-execution failed: %s\n", e.what());
        fs::remove_all(scratch);
        return 1;
    }

    int rc = 0;
    for (const auto& name : manifest.at("outputs")) {
        std::string file = name.get<std::string>();
        if (!files_identical((orig_dir / file).string(), (scratch / file).string())) {
            fprintf(stderr, "verify: output differs: %s\n", file.c_str());
            rc = 1;
            break;
        }
    }
    fs::remove_all(scratch);
    return rc;
}

}  // namespace coevo
