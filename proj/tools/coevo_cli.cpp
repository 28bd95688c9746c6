#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coevo/experiments.hpp"

namespace {

using coevo::DomainKind;
using coevo::RunOptions;

// Flags are optional so that paper defaults (which differ per domain and
// subcommand) apply only where the user did not override them.
struct Flags {
    std::optional<std::string> domain;
    std::optional<std::string> mode;
    std::optional<std::string> mitigation;
    std::optional<double> rv_virulence;
    std::optional<std::string> rv_target;
    std::optional<double> ava_alpha, ava_mu, ava_tau, ava_upsilon0;
    std::optional<std::string> techniques;  // comma-separated
    std::optional<std::string> grid;
    std::optional<std::string> pop_sizes;  // comma-separated
    std::optional<int> trials;
    std::optional<std::size_t> n;
    std::optional<std::size_t> sample_size;
    std::optional<int> generations;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> l;
    std::optional<double> m, beta_host, beta_parasite;
    std::optional<double> p_c, p_m, p_b;
    std::optional<std::string> catalog, users;
    std::optional<std::size_t> synthetic_users;
    std::optional<double> fitness_threshold, diversity_threshold;
    bool log_generations = false;
    int jobs = 1;
    std::string out = "results";
};

void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--domain", f.domain, "greater-than | wellbeing");
    cmd->add_option("--mode", f.mode, "coevolution | single");
    cmd->add_option("--mitigation", f.mitigation, "baseline | rv | ava | sf");
    cmd->add_option("--rv-virulence", f.rv_virulence, "RV virulence, in [0.5, 1.0]");
    cmd->add_option("--rv-target", f.rv_target, "host | parasite | both");
    cmd->add_option("--ava-alpha", f.ava_alpha, "AVA learning rate");
    cmd->add_option("--ava-mu", f.ava_mu, "AVA momentum");
    cmd->add_option("--ava-tau", f.ava_tau, "AVA target value");
    cmd->add_option("--ava-upsilon0", f.ava_upsilon0, "AVA initial virulence");
    cmd->add_option("--trials", f.trials, "trials per cell/condition");
    cmd->add_option("--n", f.n, "population size");
    cmd->add_option("--sample-size", f.sample_size, "opponent sample size S");
    cmd->add_option("--generations", f.generations, "generations per trial");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--l", f.l, "bit-string length (greater-than)");
    cmd->add_option("--m", f.m, "per-bit mutation probability (greater-than)");
    cmd->add_option("--beta-host", f.beta_host, "host mutation bias (greater-than)");
    cmd->add_option("--beta-parasite", f.beta_parasite, "parasite mutation bias (greater-than)");
    cmd->add_option("--p-c", f.p_c, "crossover probability (well-being)");
    cmd->add_option("--p-m", f.p_m, "mutation probability (well-being)");
    cmd->add_option("--p-b", f.p_b, "per-bundle injection probability (well-being)");
    cmd->add_option("--catalog", f.catalog, "catalog JSON path (well-being)");
    cmd->add_option("--users", f.users, "user pool JSON path (well-being)");
    cmd->add_option("--synthetic-users", f.synthetic_users,
                    "synthetic pool size when --users is absent");
    cmd->add_option("--fitness-threshold", f.fitness_threshold, "acceptable error bound");
    cmd->add_option("--diversity-threshold", f.diversity_threshold,
                    "diversity bound (recomputed when absent)");
    cmd->add_flag("--log-generations", f.log_generations, "per-generation rows in trial CSV");
    cmd->add_option("--jobs", f.jobs, "parallel worker count (default 1, sequential)");
    cmd->add_option("--out", f.out, "output directory");
    cmd->set_config("--config");
}

std::vector<std::size_t> parse_sizes(const std::string& csv) {
    std::vector<std::size_t> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoul(tok));
    return out;
}

RunOptions build_options(const std::string& subcommand, const Flags& f) {
    DomainKind domain = subcommand == "month" || subcommand == "threshold"
                            ? DomainKind::wellbeing
                            : coevo::domain_from_name(f.domain.value_or("greater-than"));
    RunOptions opt = coevo::default_options(subcommand, domain);

    if (f.mode) {
        if (*f.mode == "single" || *f.mode == "single_population")
            opt.mode = coevo::EngineMode::single_population;
        else if (*f.mode == "coevolution")
            opt.mode = coevo::EngineMode::coevolution;
        else
            throw coevo::ConfigError("unknown mode: " + *f.mode);
    }
    if (f.mitigation) opt.mitigation.kind = coevo::mitigation_kind_from_name(*f.mitigation);
    if (f.rv_virulence) {
        if (*f.rv_virulence < 0.5 || *f.rv_virulence > 1.0)
            throw coevo::ConfigError("rv-virulence must lie in [0.5, 1.0]");
        opt.mitigation.rv.upsilon = *f.rv_virulence;
    }
    if (f.rv_target) {
        if (*f.rv_target == "host")
            opt.mitigation.rv.target = coevo::RvTarget::host;
        else if (*f.rv_target == "parasite")
            opt.mitigation.rv.target = coevo::RvTarget::parasite;
        else if (*f.rv_target == "both")
            opt.mitigation.rv.target = coevo::RvTarget::both;
        else
            throw coevo::ConfigError("unknown rv-target: " + *f.rv_target);
    }
    if (f.ava_alpha) opt.mitigation.ava.alpha = *f.ava_alpha;
    if (f.ava_mu) opt.mitigation.ava.mu = *f.ava_mu;
    if (f.ava_tau) opt.mitigation.ava.tau = *f.ava_tau;
    if (f.ava_upsilon0) opt.mitigation.ava.upsilon0 = *f.ava_upsilon0;
    if (f.techniques) {
        opt.techniques.clear();
        std::stringstream ss(*f.techniques);
        std::string tok;
        while (std::getline(ss, tok, ','))
            opt.techniques.push_back(coevo::mitigation_kind_from_name(tok));
    }
    if (f.grid) {
        if (*f.grid == "coarse")
            opt.grid = coevo::GridKind::coarse;
        else if (*f.grid == "full")
            opt.grid = coevo::GridKind::full;
        else
            throw coevo::ConfigError("grid must be coarse or full");
    }
    if (f.pop_sizes) opt.pop_sizes = parse_sizes(*f.pop_sizes);
    if (f.trials) opt.trials = *f.trials;
    if (f.n) opt.n = *f.n;
    if (f.sample_size) opt.S = *f.sample_size;
    if (f.generations) opt.generations = *f.generations;
    if (f.seed) opt.seed = *f.seed;
    if (f.l) opt.gt.l = *f.l;
    if (f.m) opt.gt.m = *f.m;
    if (f.beta_host) opt.gt.beta_host = *f.beta_host;
    if (f.beta_parasite) opt.gt.beta_parasite = *f.beta_parasite;
    if (f.p_c) opt.op.p_c = *f.p_c;
    if (f.p_m) opt.op.p_m = *f.p_m;
    if (f.p_b) opt.op.p_b = *f.p_b;
    if (f.catalog) opt.catalog_path = *f.catalog;
    if (f.users) opt.users_path = *f.users;
    if (f.synthetic_users) opt.synthetic_users = *f.synthetic_users;
    if (f.fitness_threshold) opt.fitness_threshold = *f.fitness_threshold;
    if (f.diversity_threshold) opt.diversity_threshold = *f.diversity_threshold;
    opt.log_generations = f.log_generations;
    opt.jobs = f.jobs;

    if (subcommand == "sweep" && opt.techniques.empty())
        opt.techniques = {coevo::MitigationStrategy::Kind::baseline,
                          coevo::MitigationStrategy::Kind::sf};
    opt.gt.validate();
    opt.op.validate();
    return opt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SF/RV/AVA coevolution laboratory"};
    app.require_subcommand(1);

    Flags run_flags, sweep_flags, month_flags, threshold_flags;
    auto* run_cmd = app.add_subcommand("run", "single trial");
    add_common_flags(run_cmd, run_flags);

    auto* sweep_cmd = app.add_subcommand("sweep", "bias or population-size sweep");
    add_common_flags(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--grid", sweep_flags.grid, "coarse | full (greater-than)");
    sweep_cmd->add_option("--techniques", sweep_flags.techniques,
                          "comma-separated subset of baseline,rv,ava,sf");
    sweep_cmd->add_option("--pop-sizes", sweep_flags.pop_sizes,
                          "comma-separated population sizes (well-being)");

    auto* month_cmd = app.add_subcommand("month", "one-month comparison of the three systems");
    add_common_flags(month_cmd, month_flags);

    auto* threshold_cmd =
        app.add_subcommand("threshold", "recompute the diversity threshold (28 single runs)");
    add_common_flags(threshold_cmd, threshold_flags);

    std::string manifest_path;
    auto* verify_cmd = app.add_subcommand("verify", "replay a manifest and compare outputs");
    verify_cmd->add_option("manifest", manifest_path, "path to manifest.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (verify_cmd->parsed()) return coevo::verify_manifest(manifest_path);

        std::string sub;
        const Flags* flags = nullptr;
        if (run_cmd->parsed()) { sub = "run"; flags = &run_flags; }
        else if (sweep_cmd->parsed()) { sub = "sweep"; flags = &sweep_flags; }
        else if (month_cmd->parsed()) { sub = "month"; flags = &month_flags; }
        else { sub = "threshold"; flags = &threshold_flags; }

        RunOptions opt = build_options(sub, *flags);
        fprintf(stderr, "coevo %s: writing to %s\n", sub.c_str(), flags->out.c_str());
        coevo::execute(opt, flags->out);
        fprintf(stderr, "coevo %s: done\n", sub.c_str());
        return 0;
    } catch (const coevo::ConfigError& e) {
        fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
