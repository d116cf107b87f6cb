#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fairsched/model.hpp"

namespace fairsched {

// A machine choice for one job of the current batch.
struct Placement {
    int user_id = 0;
    int index_in_user = 0;
    int machine = 0;
};

// Online scheduling policy. decide() sees only the current batch, the machine
// load fronts and the already-fixed prefix of the schedule; it must return
// exactly one placement per batch job. Implementations hold no mutable state
// across runs.
class OnlineAlgorithm {
public:
    virtual ~OnlineAlgorithm() = default;
    virtual std::string name() const = 0;
    virtual std::vector<Placement> decide(const Batch& batch,
                                          const std::vector<MachineState>& machines,
                                          const std::vector<Assignment>& history) const = 0;
};

struct EngineConfig {
    // false pins every start time to the machine's load front. The engine has
    // no idling placement rule; true is rejected.
    bool idling_allowed = false;
};

// Runs the algorithm batch by batch. Within a batch, placements are applied
// in ascending user id order; each job starts at its machine's load front.
// Deterministic in (instance, algorithm, config).
Schedule simulate(std::shared_ptr<const ProblemInstance> instance,
                  const OnlineAlgorithm& algorithm,
                  const EngineConfig& config = {});

// Each batch job goes to the machine with the smallest load front, ties to
// the lowest machine index.
std::unique_ptr<OnlineAlgorithm> greedy_least_loaded();

// User r's jobs always go to machine ((r-1) mod m) + 1.
std::unique_ptr<OnlineAlgorithm> round_robin_user();

// Same machine map as round_robin_user; meant for k = b*m, where each machine
// serves b whole users and per-user completion stays within b times the
// user's total work when all users bring equal totals.
std::unique_ptr<OnlineAlgorithm> dedicated_machines();

// Replays a fixed (user, index) -> machine table; used to reproduce exact
// adversarial schedules.
std::unique_ptr<OnlineAlgorithm> scripted_algorithm(std::vector<Placement> table);

}  // namespace fairsched
