#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairsched/workload.hpp"

namespace {

using namespace fairsched;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Empty path means stdout.
void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << content;
}

long long budget_from_env() {
    const char* raw = std::getenv("FAIRSCHED_BUDGET");
    if (raw == nullptr || *raw == '\0') return kDefaultEnumerationBudget;
    char* end = nullptr;
    const long long value = std::strtoll(raw, &end, 10);
    if (end == nullptr || *end != '\0' || value < 1)
        throw InputError("FAIRSCHED_BUDGET must be a positive integer");
    return value;
}

struct CliOptions {
    std::string instance_path;
    std::string schedule_path;
    std::string algorithm = "greedy";
    std::string objective = "makespan";
    std::string out_path;
    std::string csv_path;
    std::string claim;
    std::string kind = "equal-length";
    bool use_oracle = false;
    bool include_idling = false;
    bool exact_oracle = false;
    int oracle_limit = kDefaultOracleJobLimit;
    int users = 0;
    int machines = 0;
    long long job_length = 1;
    int jobs_per_user = 1;
    std::vector<int> uniform_jobs;
    long long p_min = 1;
    long long p_max = 1;
    std::uint64_t seed = 0;
    long long budget = 0;  // 0: take FAIRSCHED_BUDGET or the default
    std::vector<long long> oracle_jobs;
};

EqualLengthFamily family_from(const CliOptions& opt) {
    if (opt.users == 0 || opt.machines == 0)
        throw InputError("--k and --m are required for this command");
    return EqualLengthFamily{opt.users, opt.machines, opt.job_length, opt.jobs_per_user};
}

int run_simulate(const CliOptions& opt) {
    const auto instance =
        std::make_shared<const ProblemInstance>(parse_instance(read_file(opt.instance_path)));
    const auto algorithm = make_algorithm(opt.algorithm);
    const Schedule schedule = simulate(instance, *algorithm);
    write_output(opt.out_path, serialize_schedule(schedule, opt.algorithm));
    if (!opt.out_path.empty()) {
        std::cout << "schedule written to " << opt.out_path << " (overall makespan "
                  << schedule.overall_makespan << ")\n";
    }
    return 0;
}

int run_metrics(const CliOptions& opt) {
    const NamedSchedule named = parse_schedule(read_file(opt.schedule_path));
    const Objective objective = parse_objective(opt.objective);
    const OracleOptions oracle{opt.use_oracle, opt.oracle_limit};
    const FairnessReport report = fairness_report(named.schedule, objective, oracle);

    const std::string payload =
        report_to_json(report, named.algorithm, summarize(*named.schedule.instance));
    if (opt.out_path.empty() && opt.csv_path.empty()) {
        std::cout << payload;
        return 0;
    }
    if (!opt.out_path.empty()) write_output(opt.out_path, payload);
    if (!opt.csv_path.empty()) write_output(opt.csv_path, report_to_csv(report));
    std::cout << "GF " << decimal_string(report.fairness_index.global, 2) << "  GDI "
              << decimal_string(report.discrimination_index.gdi, 2) << "  fairness level "
              << decimal_string(report.fairness_level, 2)
              << (report.absolute_fair ? "  (absolute fairness)" : "") << "\n";
    return 0;
}

int run_generate(const CliOptions& opt) {
    GeneratorSpec spec;
    if (opt.kind == "equal-length") {
        spec = family_from(opt);
    } else if (opt.kind == "uniform") {
        UniformRandomSpec uniform;
        uniform.users = opt.users;
        uniform.machines = opt.machines;
        uniform.jobs_per_user = opt.uniform_jobs;
        if (uniform.jobs_per_user.empty() && opt.jobs_per_user > 0)
            uniform.jobs_per_user.assign(static_cast<std::size_t>(opt.users), opt.jobs_per_user);
        uniform.p_min = opt.p_min;
        uniform.p_max = opt.p_max;
        uniform.seed = opt.seed;
        spec = std::move(uniform);
    } else {
        throw InputError("unknown generator kind '" + opt.kind +
                         "'; valid: equal-length, uniform");
    }
    write_output(opt.out_path, serialize_instance(generate(spec)));
    return 0;
}

int run_verify(const CliOptions& opt) {
    const long long budget = opt.budget > 0 ? opt.budget : budget_from_env();

    std::vector<VerificationVerdict> verdicts;
    if (opt.claim == "theorem1-cases") {
        verdicts = replay_theorem1_cases();
    } else if (opt.claim == "lemma2") {
        verdicts.push_back(verify_lemma2(family_from(opt), budget, opt.include_idling));
    } else if (opt.claim == "lemma4") {
        verdicts.push_back(verify_lemma4(family_from(opt), budget, opt.include_idling));
    } else if (opt.claim == "theorem2") {
        verdicts.push_back(
            verify_theorem2(family_from(opt), budget, opt.include_idling, opt.exact_oracle));
    } else {
        throw InputError("unknown claim '" + opt.claim +
                         "'; valid: lemma2, lemma4, theorem2, theorem1-cases");
    }

    write_output(opt.out_path,
                 verdicts.size() == 1 ? verdict_to_json(verdicts.front())
                                      : verdicts_to_json(verdicts));
    for (const VerificationVerdict& verdict : verdicts) {
        if (!verdict.holds) {
            std::cerr << "verification failed: claim '" << verdict.claim
                      << "' does not hold (witness in output)\n";
            return 2;
        }
    }
    return 0;
}

int run_oracle(const CliOptions& opt) {
    if (opt.machines == 0) throw InputError("--m is required");
    const std::vector<Time> jobs(opt.oracle_jobs.begin(), opt.oracle_jobs.end());
    std::cout << exact_optimal_makespan(jobs, opt.machines, opt.oracle_limit) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fairsched: multi-user online scheduling simulator and fairness analyzer"};
    app.require_subcommand(1);
    CliOptions opt;

    CLI::App* simulate = app.add_subcommand("simulate", "run an online algorithm over an instance");
    simulate->add_option("--instance", opt.instance_path, "instance JSON file")->required();
    simulate->add_option("--algorithm", opt.algorithm,
                         "greedy | rr-user | dedicated | scripted:<file>");
    simulate->add_option("--out", opt.out_path, "schedule JSON output (default: stdout)");

    CLI::App* metrics = app.add_subcommand("metrics", "fairness report for a schedule");
    metrics->add_option("--schedule", opt.schedule_path, "schedule JSON file")->required();
    metrics->add_option("--objective", opt.objective,
                        "makespan | sum_completion | weighted_completion | sum_flow");
    metrics->add_flag("--oracle", opt.use_oracle,
                      "use the exact single-user optimum instead of the averaged bound");
    metrics->add_option("--oracle-limit", opt.oracle_limit, "exact-search job limit");
    metrics->add_option("--json-out", opt.out_path, "report JSON output (default: stdout)");
    metrics->add_option("--csv-out", opt.csv_path, "per-user CSV output");

    CLI::App* generate = app.add_subcommand("generate", "produce an instance file");
    generate->add_option("--kind", opt.kind, "equal-length | uniform");
    generate->add_option("--k", opt.users, "number of users");
    generate->add_option("--m", opt.machines, "number of machines");
    generate->add_option("--x", opt.job_length, "equal-length: processing time per job");
    generate->add_option("--y", opt.jobs_per_user, "jobs per user");
    generate->add_option("--jobs-per-user", opt.uniform_jobs, "uniform: per-user job counts")
        ->delimiter(',');
    generate->add_option("--p-min", opt.p_min, "uniform: smallest processing time");
    generate->add_option("--p-max", opt.p_max, "uniform: largest processing time");
    generate->add_option("--seed", opt.seed, "uniform: RNG seed");
    generate->add_option("--out", opt.out_path, "instance JSON output (default: stdout)");

    CLI::App* verify = app.add_subcommand("verify-bounds", "exhaustively check a bound claim");
    verify->add_option("--claim", opt.claim, "lemma2 | lemma4 | theorem2 | theorem1-cases")
        ->required();
    verify->add_option("--k", opt.users, "users in the equal-length family");
    verify->add_option("--m", opt.machines, "machines");
    verify->add_option("--x", opt.job_length, "processing time per job");
    verify->add_option("--y", opt.jobs_per_user, "jobs per user");
    verify->add_flag("--include-idling", opt.include_idling,
                     "evaluate idling schedules too (the bound claims then fail)");
    verify->add_flag("--exact-oracle", opt.exact_oracle,
                     "also report min RF against the exact single-user optimum");
    verify->add_option("--budget", opt.budget, "schedule enumeration budget");
    verify->add_option("--out", opt.out_path, "verdict JSON output (default: stdout)");

    CLI::App* oracle = app.add_subcommand("oracle", "exact optimum makespan of a job list");
    oracle->add_option("--jobs", opt.oracle_jobs, "processing times, comma separated")
        ->required()
        ->delimiter(',');
    oracle->add_option("--m", opt.machines, "number of machines")->required();
    oracle->add_option("--limit", opt.oracle_limit, "exact-search job limit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (simulate->parsed()) return run_simulate(opt);
        if (metrics->parsed()) return run_metrics(opt);
        if (generate->parsed()) return run_generate(opt);
        if (verify->parsed()) return run_verify(opt);
        if (oracle->parsed()) return run_oracle(opt);
        throw InputError("no subcommand given");
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what()
                  << " (set FAIRSCHED_BUDGET or --budget to at least " << e.required_budget
                  << ")\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
