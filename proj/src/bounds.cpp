#include "fairsched/bounds.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace fairsched {

namespace {

Time ceil_div(Time numerator, Time denominator) {
    return (numerator + denominator - 1) / denominator;
}

Time lpt_makespan(const std::vector<Time>& jobs_desc, int machines) {
    std::vector<Time> loads(static_cast<std::size_t>(machines), 0);
    for (Time p : jobs_desc) *std::min_element(loads.begin(), loads.end()) += p;
    return *std::max_element(loads.begin(), loads.end());
}

struct MakespanSearch {
    const std::vector<Time>& jobs;  // nonincreasing
    Time lower;                     // global lower bound; search stops when reached
    Time best;
    std::vector<Time> loads;

    void dfs(std::size_t index, Time current_max) {
        if (best == lower || current_max >= best) return;
        if (index == jobs.size()) {
            best = current_max;
            return;
        }
        std::vector<Time> tried;
        tried.reserve(loads.size());
        for (Time& load : loads) {
            if (std::find(tried.begin(), tried.end(), load) != tried.end())
                continue;  // identical load => identical subtree
            tried.push_back(load);
            const Time saved = load;
            load += jobs[index];
            dfs(index + 1, std::max(current_max, load));
            load = saved;
            if (best == lower) return;
        }
    }
};

}  // namespace

std::string EqualLengthFamily::label() const {
    std::ostringstream os;
    os << "k=" << users << " m=" << machines << " x=" << job_length << " y=" << jobs_per_user;
    if (machines > 0 && users_multiple_of_machines()) os << " (b=" << users_per_machine() << ")";
    return os.str();
}

ProblemInstance make_equal_length_instance(const EqualLengthFamily& family) {
    if (family.machines < 2) throw InputError("equal-length family: m >= 2 required");
    if (family.users < family.machines)
        throw InputError("equal-length family: k >= m required");
    if (family.job_length < 1) throw InputError("equal-length family: x >= 1 required");
    if (family.jobs_per_user < 1) throw InputError("equal-length family: y >= 1 required");
    const std::vector<std::vector<Time>> times(
        static_cast<std::size_t>(family.users),
        std::vector<Time>(static_cast<std::size_t>(family.jobs_per_user), family.job_length));
    return make_instance(family.machines, times);
}

Time exact_optimal_makespan(std::vector<Time> jobs, int machines, int job_limit) {
    if (jobs.empty()) throw InputError("oracle: empty job list");
    if (machines < 1) throw InputError("oracle: machines >= 1 required");
    if (static_cast<int>(jobs.size()) > job_limit)
        throw InputError("oracle: " + std::to_string(jobs.size()) +
                         " jobs exceed the exact-search limit of " + std::to_string(job_limit) +
                         "; use the averaged bound instead");
    for (Time p : jobs)
        if (p < 1) throw InputError("oracle: processing times must be >= 1");

    std::sort(jobs.begin(), jobs.end(), std::greater<Time>());
    const Time total = std::accumulate(jobs.begin(), jobs.end(), Time{0});
    const Time lower = std::max(ceil_div(total, machines), jobs.front());
    const Time upper = lpt_makespan(jobs, machines);
    if (upper == lower) return lower;

    MakespanSearch search{jobs, lower, upper,
                          std::vector<Time>(static_cast<std::size_t>(machines), 0)};
    search.dfs(0, 0);
    return search.best;
}

Time min_sum_completion_time(std::vector<Time> jobs, int machines) {
    if (jobs.empty()) throw InputError("oracle: empty job list");
    if (machines < 1) throw InputError("oracle: machines >= 1 required");
    for (Time p : jobs)
        if (p < 1) throw InputError("oracle: processing times must be >= 1");

    std::sort(jobs.begin(), jobs.end());
    std::vector<Time> loads(static_cast<std::size_t>(machines), 0);
    Time sum = 0;
    for (Time p : jobs) {
        Time& load = *std::min_element(loads.begin(), loads.end());
        load += p;
        sum += load;
    }
    return sum;
}

namespace {

struct WeightedSearch {
    std::vector<std::pair<Time, Rat>> jobs;  // nonincreasing w/p (Smith order)
    std::vector<Rat> suffix_wp;              // sum of w*p from index on
    std::vector<Rat> suffix_w;               // sum of w from index on
    std::vector<Time> loads;
    Rat best;

    void dfs(std::size_t index, const Rat& current) {
        if (index == jobs.size()) {
            if (current < best) best = current;
            return;
        }
        const Time min_load = *std::min_element(loads.begin(), loads.end());
        // Each remaining job completes no earlier than min_load + its length.
        const Rat bound =
            current + suffix_wp[index] + suffix_w[index] * Rat(static_cast<long>(min_load));
        if (bound >= best) return;

        std::vector<Time> tried;
        tried.reserve(loads.size());
        for (Time& load : loads) {
            if (std::find(tried.begin(), tried.end(), load) != tried.end()) continue;
            tried.push_back(load);
            const Time saved = load;
            load += jobs[index].first;
            dfs(index + 1, current + jobs[index].second * Rat(static_cast<long>(load)));
            load = saved;
        }
    }
};

}  // namespace

Rat min_weighted_completion_time(const std::vector<std::pair<Time, Rat>>& jobs, int machines,
                                 int job_limit) {
    if (jobs.empty()) throw InputError("oracle: empty job list");
    if (machines < 1) throw InputError("oracle: machines >= 1 required");
    if (static_cast<int>(jobs.size()) > job_limit)
        throw InputError("oracle: " + std::to_string(jobs.size()) +
                         " jobs exceed the exact-search limit of " + std::to_string(job_limit));
    for (const auto& [p, w] : jobs) {
        if (p < 1) throw InputError("oracle: processing times must be >= 1");
        if (w < 0) throw InputError("oracle: weights must be non-negative");
    }

    WeightedSearch search;
    search.jobs = jobs;
    // w_a/p_a >= w_b/p_b  <=>  w_a*p_b >= w_b*p_a; sequencing each machine in
    // this order is optimal for any fixed job partition.
    std::sort(search.jobs.begin(), search.jobs.end(),
              [](const std::pair<Time, Rat>& a, const std::pair<Time, Rat>& b) {
                  return a.second * Rat(static_cast<long>(b.first)) >
                         b.second * Rat(static_cast<long>(a.first));
              });

    const std::size_t n = search.jobs.size();
    search.suffix_wp.assign(n + 1, Rat(0));
    search.suffix_w.assign(n + 1, Rat(0));
    for (std::size_t i = n; i-- > 0;) {
        search.suffix_wp[i] =
            search.suffix_wp[i + 1] +
            search.jobs[i].second * Rat(static_cast<long>(search.jobs[i].first));
        search.suffix_w[i] = search.suffix_w[i + 1] + search.jobs[i].second;
    }

    // Greedy upper bound: Smith order, cheapest marginal cost machine.
    {
        std::vector<Time> loads(static_cast<std::size_t>(machines), 0);
        Rat greedy = 0;
        for (const auto& [p, w] : search.jobs) {
            Time& load = *std::min_element(loads.begin(), loads.end());
            load += p;
            greedy += w * Rat(static_cast<long>(load));
        }
        search.best = greedy;
    }

    search.loads.assign(static_cast<std::size_t>(machines), 0);
    search.dfs(0, Rat(0));
    return search.best;
}

long long schedule_space_size(const ProblemInstance& instance) {
    long long size = 1;
    for (int i = 0; i < instance.total_jobs(); ++i) {
        if (size > std::numeric_limits<long long>::max() / instance.machine_count())
            return std::numeric_limits<long long>::max();
        size *= instance.machine_count();
    }
    return size;
}

long long enumerate_schedules(std::shared_ptr<const ProblemInstance> instance, bool non_idling,
                              long long budget,
                              const std::function<bool(const Schedule&)>& visit) {
    if (!instance) throw InputError("enumerate: null instance");
    if (!non_idling)
        throw InputError("enumerate: idling placements are unsupported (start times would be "
                         "unbounded); pass non_idling=true");

    const long long space = schedule_space_size(*instance);
    if (space > budget)
        throw BudgetError("enumeration needs " + std::to_string(space) +
                              " schedules but the budget is " + std::to_string(budget),
                          space);

    std::vector<Job> order;
    std::vector<int> rounds;
    order.reserve(static_cast<std::size_t>(instance->total_jobs()));
    for (const Batch& batch : build_batches(*instance)) {
        for (const Job& job : batch.jobs) {
            order.push_back(job);
            rounds.push_back(batch.round);
        }
    }
    const std::size_t n = order.size();
    const int machine_count = instance->machine_count();

    Schedule buffer;
    buffer.instance = instance;
    buffer.assignments.resize(n);
    std::vector<Time> loads(static_cast<std::size_t>(machine_count), 0);

    long long visited = 0;
    bool stop = false;

    const std::function<void(std::size_t)> recurse = [&](std::size_t index) {
        if (index == n) {
            ++visited;
            buffer.per_user_makespan.clear();
            buffer.overall_makespan = 0;
            for (const Assignment& a : buffer.assignments) {
                Time& best = buffer.per_user_makespan[a.job.user_id];
                best = std::max(best, a.completion_time);
                buffer.overall_makespan = std::max(buffer.overall_makespan, a.completion_time);
            }
            if (!visit(buffer)) stop = true;
            return;
        }
        for (int machine = 1; machine <= machine_count; ++machine) {
            Time& load = loads[static_cast<std::size_t>(machine) - 1];
            Assignment& a = buffer.assignments[index];
            a.job = order[index];
            a.machine = machine;
            a.start_time = load;
            a.completion_time = load + order[index].processing_time;
            a.decided_in_round = rounds[index];
            load = a.completion_time;
            recurse(index + 1);
            load = a.start_time;
            if (stop) return;
        }
    };
    recurse(0);
    return visited;
}

namespace {

std::vector<std::string> verifier_assumptions(bool include_idling) {
    if (include_idling)
        return {"all batch-respecting schedules, including those that leave a machine idle "
                "while a revealed job waits"};
    return {"non-idling schedules only: no machine idle past a job's reveal time while that "
            "job starts later"};
}

// Shared scan for the per-user makespan bound claims.
VerificationVerdict verify_makespan_bound(const std::string& claim,
                                          const EqualLengthFamily& family, Time bound,
                                          long long budget, bool include_idling) {
    VerificationVerdict verdict;
    verdict.claim = claim;
    verdict.family = family;
    verdict.assumptions = verifier_assumptions(include_idling);

    const auto instance =
        std::make_shared<const ProblemInstance>(make_equal_length_instance(family));
    verdict.instances_checked =
        enumerate_schedules(instance, true, budget, [&](const Schedule& schedule) {
            if (!include_idling && !is_non_idling(schedule)) return true;
            ++verdict.evaluated_schedules;
            for (const auto& [user, makespan] : schedule.per_user_makespan) {
                if (!verdict.max_user_makespan || makespan > *verdict.max_user_makespan)
                    verdict.max_user_makespan = makespan;
                if (makespan > bound) {
                    verdict.holds = false;
                    verdict.witness = schedule;
                    return false;  // first counterexample in lexicographic order
                }
            }
            return true;
        });
    return verdict;
}

}  // namespace

std::vector<ProofInstance> theorem1_proof_instances() {
    std::vector<ProofInstance> cases;

    {
        // Unequal sequence lengths; first job pair split across machines.
        ProofInstance pi;
        pi.name = "theorem1-case-1a";
        pi.instance = std::make_shared<const ProblemInstance>(make_instance(2, {{1, 2}, {1}}));
        pi.scripted_assignments = {{1, 1, 1}, {2, 1, 2}, {1, 2, 1}};
        pi.expected_per_user_makespan = {{1, 3}, {2, 1}};
        pi.expected_opt_bound = {{1, make_rat(3, 2)}, {2, make_rat(1, 2)}};
        cases.push_back(std::move(pi));
    }
    {
        // Unequal sequence lengths; first job pair stacked on one machine.
        ProofInstance pi;
        pi.name = "theorem1-case-1b";
        pi.instance =
            std::make_shared<const ProblemInstance>(make_instance(2, {{1, 1, 2}, {1, 2}}));
        pi.scripted_assignments = {{1, 1, 1}, {2, 1, 1}, {1, 2, 2}, {2, 2, 2}, {1, 3, 1}};
        pi.expected_per_user_makespan = {{1, 4}, {2, 3}};
        pi.expected_opt_bound = {{1, make_rat(2)}, {2, make_rat(3, 2)}};
        cases.push_back(std::move(pi));
    }
    {
        // Equal sequence lengths; first job pair split across machines.
        ProofInstance pi;
        pi.name = "theorem1-case-2a";
        pi.instance =
            std::make_shared<const ProblemInstance>(make_instance(2, {{1, 1, 2}, {1, 2, 2}}));
        pi.scripted_assignments = {{1, 1, 1}, {2, 1, 2}, {1, 2, 1},
                                   {2, 2, 2}, {1, 3, 1}, {2, 3, 2}};
        pi.expected_per_user_makespan = {{1, 4}, {2, 5}};
        pi.expected_opt_bound = {{1, make_rat(2)}, {2, make_rat(5, 2)}};
        cases.push_back(std::move(pi));
    }
    {
        // Equal sequence lengths; first job pair stacked on one machine.
        ProofInstance pi;
        pi.name = "theorem1-case-2b";
        pi.instance =
            std::make_shared<const ProblemInstance>(make_instance(2, {{1, 1, 2}, {1, 2, 2}}));
        pi.scripted_assignments = {{1, 1, 1}, {2, 1, 1}, {1, 2, 2},
                                   {2, 2, 2}, {1, 3, 1}, {2, 3, 2}};
        pi.expected_per_user_makespan = {{1, 4}, {2, 5}};
        pi.expected_opt_bound = {{1, make_rat(2)}, {2, make_rat(5, 2)}};
        cases.push_back(std::move(pi));
    }

    return cases;
}

std::vector<VerificationVerdict> replay_theorem1_cases() {
    std::vector<VerificationVerdict> verdicts;
    const Rat floor = make_rat(1, 2);

    for (const ProofInstance& pi : theorem1_proof_instances()) {
        VerificationVerdict verdict;
        verdict.claim = pi.name;
        verdict.assumptions = {"scripted adversarial schedule"};
        verdict.instances_checked = 1;
        verdict.evaluated_schedules = 1;

        const auto algorithm = scripted_algorithm(pi.scripted_assignments);
        const Schedule schedule = simulate(pi.instance, *algorithm);

        if (schedule.per_user_makespan != pi.expected_per_user_makespan) verdict.holds = false;
        for (const auto& [user, makespan] : schedule.per_user_makespan) {
            if (!verdict.max_user_makespan || makespan > *verdict.max_user_makespan)
                verdict.max_user_makespan = makespan;
            const Rat rf = pi.expected_opt_bound.at(user) / Rat(static_cast<long>(makespan));
            if (!verdict.min_rf || rf < *verdict.min_rf) verdict.min_rf = rf;
            if (rf < floor) verdict.holds = false;
        }
        if (!verdict.holds) verdict.witness = schedule;
        verdicts.push_back(std::move(verdict));
    }
    return verdicts;
}

VerificationVerdict verify_lemma2(const EqualLengthFamily& family, long long budget,
                                  bool include_idling) {
    if (!family.users_multiple_of_machines())
        throw InputError("lemma2 needs k = b*m (got " + family.label() + ")");
    const Time bound = static_cast<Time>(family.users_per_machine()) * family.job_length *
                       family.jobs_per_user;
    return verify_makespan_bound("lemma2", family, bound, budget, include_idling);
}

VerificationVerdict verify_lemma4(const EqualLengthFamily& family, long long budget,
                                  bool include_idling) {
    if (family.users <= family.machines || family.users_multiple_of_machines())
        throw InputError("lemma4 needs k > m with k not a multiple of m (got " + family.label() +
                         ")");
    const Time bound =
        ceil_div(family.total_jobs(), family.machines) * family.job_length;
    return verify_makespan_bound("lemma4", family, bound, budget, include_idling);
}

VerificationVerdict verify_theorem2(const EqualLengthFamily& family, long long budget,
                                    bool include_idling, bool exact_oracle_comparison) {
    VerificationVerdict verdict;
    verdict.claim = "theorem2";
    verdict.family = family;
    verdict.assumptions = verifier_assumptions(include_idling);

    const Rat rf_floor = make_rat(1, family.users);
    // Averaged fair-optimum bound, identical for every user of the family.
    const Rat opt_avg = make_rat(family.job_length * family.jobs_per_user, family.machines);
    Rat opt_exact = 0;
    if (exact_oracle_comparison) {
        const std::vector<Time> alone(static_cast<std::size_t>(family.jobs_per_user),
                                      family.job_length);
        opt_exact = Rat(static_cast<long>(exact_optimal_makespan(alone, family.machines,
                                                                 family.jobs_per_user)));
    }

    const auto instance =
        std::make_shared<const ProblemInstance>(make_equal_length_instance(family));
    // Full scan: min_rf is the global minimum, not a prefix minimum.
    verdict.instances_checked =
        enumerate_schedules(instance, true, budget, [&](const Schedule& schedule) {
            if (!include_idling && !is_non_idling(schedule)) return true;
            ++verdict.evaluated_schedules;
            for (const auto& [user, makespan] : schedule.per_user_makespan) {
                if (!verdict.max_user_makespan || makespan > *verdict.max_user_makespan)
                    verdict.max_user_makespan = makespan;
                const Rat rf = opt_avg / Rat(static_cast<long>(makespan));
                if (!verdict.min_rf || rf < *verdict.min_rf) verdict.min_rf = rf;
                if (rf < rf_floor && verdict.holds) {
                    verdict.holds = false;
                    verdict.witness = schedule;
                }
                if (exact_oracle_comparison) {
                    const Rat rf_exact = opt_exact / Rat(static_cast<long>(makespan));
                    if (!verdict.min_rf_exact_oracle || rf_exact < *verdict.min_rf_exact_oracle)
                        verdict.min_rf_exact_oracle = rf_exact;
                }
            }
            return true;
        });
    return verdict;
}

}  // namespace fairsched
