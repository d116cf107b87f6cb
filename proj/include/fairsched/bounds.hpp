#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fairsched/engine.hpp"
#include "fairsched/model.hpp"
#include "fairsched/rational.hpp"

namespace fairsched {

inline constexpr long long kDefaultEnumerationBudget = 10'000'000;
inline constexpr int kDefaultOracleJobLimit = 14;

// Workload family with k users, y jobs per user, every processing time x.
struct EqualLengthFamily {
    int users = 0;         // k
    int machines = 0;      // m
    Time job_length = 1;   // x
    int jobs_per_user = 1; // y

    int total_jobs() const { return users * jobs_per_user; }
    bool users_multiple_of_machines() const { return users % machines == 0; }
    int users_per_machine() const { return users / machines; }  // b, when k = b*m
    std::string label() const;
};

ProblemInstance make_equal_length_instance(const EqualLengthFamily& family);

// Exact offline optimum makespan of `jobs` alone on `machines` identical
// machines, by branch and bound over machine loads; refuses more than
// job_limit jobs. Always >= max(ceil(total/m), max p).
Time exact_optimal_makespan(std::vector<Time> jobs, int machines,
                            int job_limit = kDefaultOracleJobLimit);

// Exact minimum sum of completion times of `jobs` alone on `machines`
// machines: shortest-processing-time list order, which is optimal for this
// objective.
Time min_sum_completion_time(std::vector<Time> jobs, int machines);

// Exact minimum weighted sum of completion times: branch and bound over
// machine subsets with each machine sequenced in nonincreasing w/p order.
Rat min_weighted_completion_time(const std::vector<std::pair<Time, Rat>>& jobs, int machines,
                                 int job_limit = kDefaultOracleJobLimit);

// Number of batch-respecting assignment vectors, m^n, clamped on overflow.
long long schedule_space_size(const ProblemInstance& instance);

// Streams every batch-respecting assignment of jobs to machines, in
// lexicographic order of the per-job machine choices (jobs in decision
// order). With non_idling, every job is placed at its machine's load front;
// enumerating idling placements is unsupported (unbounded start times).
// The visitor returns false to stop early; the yielded Schedule is a reused
// buffer, so it must be copied to be kept. Returns the number of schedules
// visited; throws BudgetError when m^n exceeds the budget.
long long enumerate_schedules(std::shared_ptr<const ProblemInstance> instance, bool non_idling,
                              long long budget, const std::function<bool(const Schedule&)>& visit);

// A scripted adversarial schedule together with the exact outcome it must
// reproduce.
struct ProofInstance {
    std::string name;
    std::shared_ptr<const ProblemInstance> instance;
    std::vector<Placement> scripted_assignments;
    std::map<int, Time> expected_per_user_makespan;
    std::map<int, Rat> expected_opt_bound;  // averaged fair-optimum bound per user
};

// The four built-in two-user adversarial cases behind the 1/2-fairness floor
// on two machines.
std::vector<ProofInstance> theorem1_proof_instances();

struct VerificationVerdict {
    std::string claim;
    std::optional<EqualLengthFamily> family;
    long long instances_checked = 0;  // schedules enumerated (m^n when complete)
    bool holds = true;
    std::optional<Schedule> witness;  // first counterexample, lexicographic order
    std::vector<std::string> assumptions;

    // Measurements over the schedules the claim was evaluated on.
    long long evaluated_schedules = 0;       // after the non-idling filter
    std::optional<Time> max_user_makespan;
    std::optional<Rat> min_rf;               // worst RF under the averaged bound
    std::optional<Rat> min_rf_exact_oracle;  // worst RF under the exact optimum
};

// Replays each proof instance through the engine and checks both the exact
// per-user makespans and RF >= 1/2 under the averaged bounds.
std::vector<VerificationVerdict> replay_theorem1_cases();

// For k = b*m: every evaluated schedule must satisfy C^r <= b*x*y for every
// user. Idling schedules break the bound trivially and are filtered out
// unless include_idling is set.
VerificationVerdict verify_lemma2(const EqualLengthFamily& family,
                                  long long budget = kDefaultEnumerationBudget,
                                  bool include_idling = false);

// For k > m with m not dividing k: every evaluated schedule must satisfy
// C^r <= ceil(n/m) * x for every user.
VerificationVerdict verify_lemma4(const EqualLengthFamily& family,
                                  long long budget = kDefaultEnumerationBudget,
                                  bool include_idling = false);

// For k >= m: every evaluated schedule must give every user
// RF = (x*y/m) / C^r >= 1/k, the averaged bound used verbatim. Scans the
// whole space (no early stop) so min_rf is global; with
// exact_oracle_comparison it also tracks RF against the exact single-user
// optimum for the same schedules.
VerificationVerdict verify_theorem2(const EqualLengthFamily& family,
                                    long long budget = kDefaultEnumerationBudget,
                                    bool include_idling = false,
                                    bool exact_oracle_comparison = false);

}  // namespace fairsched
