#include "fairsched/engine.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

namespace fairsched {

namespace {

std::string job_tag(int user_id, int index_in_user) {
    std::ostringstream os;
    os << "u" << user_id << "#" << index_in_user;
    return os.str();
}

class GreedyLeastLoaded final : public OnlineAlgorithm {
public:
    std::string name() const override { return "greedy"; }

    std::vector<Placement> decide(const Batch& batch, const std::vector<MachineState>& machines,
                                  const std::vector<Assignment>&) const override {
        std::vector<Time> fronts;
        fronts.reserve(machines.size());
        for (const MachineState& m : machines) fronts.push_back(m.available_at);

        std::vector<Placement> placements;
        placements.reserve(batch.jobs.size());
        for (const Job& job : batch.jobs) {
            const auto it = std::min_element(fronts.begin(), fronts.end());
            const int machine = static_cast<int>(it - fronts.begin()) + 1;
            placements.push_back({job.user_id, job.index_in_user, machine});
            *it += job.processing_time;
        }
        return placements;
    }
};

class UserModuloMachine : public OnlineAlgorithm {
public:
    std::vector<Placement> decide(const Batch& batch, const std::vector<MachineState>& machines,
                                  const std::vector<Assignment>&) const override {
        const int m = static_cast<int>(machines.size());
        std::vector<Placement> placements;
        placements.reserve(batch.jobs.size());
        for (const Job& job : batch.jobs)
            placements.push_back({job.user_id, job.index_in_user, (job.user_id - 1) % m + 1});
        return placements;
    }
};

class RoundRobinUser final : public UserModuloMachine {
public:
    std::string name() const override { return "rr-user"; }
};

class DedicatedMachines final : public UserModuloMachine {
public:
    std::string name() const override { return "dedicated"; }
};

class Scripted final : public OnlineAlgorithm {
public:
    explicit Scripted(std::vector<Placement> table) {
        for (const Placement& p : table) table_[{p.user_id, p.index_in_user}] = p.machine;
    }

    std::string name() const override { return "scripted"; }

    std::vector<Placement> decide(const Batch& batch, const std::vector<MachineState>&,
                                  const std::vector<Assignment>&) const override {
        std::vector<Placement> placements;
        placements.reserve(batch.jobs.size());
        for (const Job& job : batch.jobs) {
            const auto it = table_.find({job.user_id, job.index_in_user});
            if (it == table_.end()) continue;  // engine reports the missing choice
            placements.push_back({job.user_id, job.index_in_user, it->second});
        }
        return placements;
    }

private:
    std::map<std::pair<int, int>, int> table_;
};

}  // namespace

Schedule simulate(std::shared_ptr<const ProblemInstance> instance,
                  const OnlineAlgorithm& algorithm, const EngineConfig& config) {
    if (!instance) throw InputError("simulate: null instance");
    if (config.idling_allowed)
        throw InputError("idling_allowed=true is not supported: the engine places every job "
                         "at its machine's load front");

    const int machine_count = instance->machine_count();
    std::vector<MachineState> machines;
    machines.reserve(static_cast<std::size_t>(machine_count));
    for (int m = 1; m <= machine_count; ++m) machines.push_back({m, 0});

    std::vector<Assignment> assignments;
    assignments.reserve(static_cast<std::size_t>(instance->total_jobs()));

    for (const Batch& batch : build_batches(*instance)) {
        const std::vector<Placement> placements = algorithm.decide(batch, machines, assignments);

        auto context = [&](const std::string& detail) {
            return "algorithm '" + algorithm.name() + "', round " + std::to_string(batch.round) +
                   ": " + detail;
        };

        std::map<std::pair<int, int>, int> chosen;
        for (const Placement& p : placements) {
            const bool in_batch =
                std::any_of(batch.jobs.begin(), batch.jobs.end(), [&](const Job& job) {
                    return job.user_id == p.user_id && job.index_in_user == p.index_in_user;
                });
            if (!in_batch)
                throw SimulationError(context("choice for job " +
                                              job_tag(p.user_id, p.index_in_user) +
                                              " which is not in this batch"));
            if (p.machine < 1 || p.machine > machine_count)
                throw SimulationError(context("machine " + std::to_string(p.machine) +
                                              " out of range 1.." + std::to_string(machine_count) +
                                              " for job " + job_tag(p.user_id, p.index_in_user)));
            if (!chosen.emplace(std::make_pair(p.user_id, p.index_in_user), p.machine).second)
                throw SimulationError(context("duplicate choice for job " +
                                              job_tag(p.user_id, p.index_in_user)));
        }

        // Apply in ascending user order (batch.jobs is already ordered).
        for (const Job& job : batch.jobs) {
            const auto it = chosen.find({job.user_id, job.index_in_user});
            if (it == chosen.end())
                throw SimulationError(context("no choice for job " +
                                              job_tag(job.user_id, job.index_in_user)));
            MachineState& machine = machines[static_cast<std::size_t>(it->second) - 1];
            Assignment a;
            a.job = job;
            a.machine = it->second;
            a.start_time = machine.available_at;
            a.completion_time = machine.available_at + job.processing_time;
            a.decided_in_round = batch.round;
            machine.available_at = a.completion_time;
            assignments.push_back(a);
        }
    }

    return make_schedule(std::move(instance), std::move(assignments));
}

std::unique_ptr<OnlineAlgorithm> greedy_least_loaded() {
    return std::make_unique<GreedyLeastLoaded>();
}

std::unique_ptr<OnlineAlgorithm> round_robin_user() { return std::make_unique<RoundRobinUser>(); }

std::unique_ptr<OnlineAlgorithm> dedicated_machines() {
    return std::make_unique<DedicatedMachines>();
}

std::unique_ptr<OnlineAlgorithm> scripted_algorithm(std::vector<Placement> table) {
    return std::make_unique<Scripted>(std::move(table));
}

}  // namespace fairsched
