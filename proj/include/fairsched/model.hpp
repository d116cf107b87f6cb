#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fairsched/errors.hpp"
#include "fairsched/rational.hpp"

namespace fairsched {

using Time = long long;

// One job J^r_i: the i-th arrival of user r.
struct Job {
    int user_id = 0;
    int index_in_user = 0;  // 1-based position in the user's arrival sequence
    Time processing_time = 1;
    std::optional<Rat> weight;          // weighted-completion objective only
    std::optional<Time> desired_flow;   // target flow time; defaults to processing_time
};

struct UserSequence {
    int user_id = 0;
    std::vector<Job> jobs;  // arrival order
    Time total_processing() const;
};

// Immutable multi-user workload: k >= 2 user sequences on m >= 2 identical
// machines. The constructor fills in user_id/index_in_user when left at 0 and
// rejects anything violating the model invariants.
class ProblemInstance {
public:
    ProblemInstance(int machine_count, std::vector<UserSequence> users);

    int machine_count() const { return machine_count_; }
    const std::vector<UserSequence>& users() const { return users_; }
    int user_count() const { return static_cast<int>(users_.size()); }
    int total_jobs() const { return total_jobs_; }
    int max_jobs_per_user() const { return max_jobs_per_user_; }  // = batch count

    const UserSequence& user(int user_id) const;
    const Job& job(int user_id, int index_in_user) const;

private:
    int machine_count_;
    std::vector<UserSequence> users_;
    int total_jobs_;
    int max_jobs_per_user_;
};

// Convenience: user r gets processing_times[r-1].
ProblemInstance make_instance(int machine_count,
                              const std::vector<std::vector<Time>>& processing_times);

// One online round: at most one job per user that still has work, ordered by
// ascending user id.
struct Batch {
    int round = 0;  // 1-based
    std::vector<Job> jobs;
};

// Batch b holds J^r_b for every user with at least b jobs; batch count equals
// the longest user sequence.
std::vector<Batch> build_batches(const ProblemInstance& instance);

struct Assignment {
    Job job;
    int machine = 0;        // 1..m
    Time start_time = 0;
    Time completion_time = 0;  // start_time + processing_time
    int decided_in_round = 0;  // batch round in which the choice became irrevocable
};

struct MachineState {
    int machine = 0;
    Time available_at = 0;  // load front; next non-idling start on this machine
};

struct Schedule {
    std::shared_ptr<const ProblemInstance> instance;
    std::vector<Assignment> assignments;  // decision order
    std::map<int, Time> per_user_makespan;
    Time overall_makespan = 0;
};

// Fills per_user_makespan / overall_makespan from the assignments.
Schedule make_schedule(std::shared_ptr<const ProblemInstance> instance,
                       std::vector<Assignment> assignments);

// Recomputes user makespans from the assignments. Throws if some instance
// user has no assignment (corrupted schedule).
std::map<int, Time> per_user_makespans(const Schedule& schedule);

struct ValidationResult {
    bool ok = true;
    std::vector<std::string> violations;
};

// Checks every schedule invariant: each job assigned exactly once, completion
// arithmetic, no overlap per machine, stored makespans, machine range, and
// decided_in_round matching each job's batch round.
ValidationResult validate_schedule(const Schedule& schedule);

// A schedule is non-idling when no machine sits idle after a job's reveal
// time while that job starts later elsewhere; a round-b job is revealed at
// time b-1. Verifier bound claims are evaluated on this class.
bool is_non_idling(const Schedule& schedule);

}  // namespace fairsched
