#include <doctest.h>

#include <random>

#include "fairsched/engine.hpp"
#include "fairsched/workload.hpp"
#include "support.hpp"

using namespace fairsched;
using namespace fairsched::testsupport;

namespace {

// Deliberately broken policies for the engine contract checks.
class BadMachine final : public OnlineAlgorithm {
public:
    std::string name() const override { return "bad-machine"; }
    std::vector<Placement> decide(const Batch& batch, const std::vector<MachineState>&,
                                  const std::vector<Assignment>&) const override {
        std::vector<Placement> out;
        for (const Job& job : batch.jobs)
            out.push_back({job.user_id, job.index_in_user, 99});
        return out;
    }
};

class DropsOne final : public OnlineAlgorithm {
public:
    std::string name() const override { return "drops-one"; }
    std::vector<Placement> decide(const Batch& batch, const std::vector<MachineState>&,
                                  const std::vector<Assignment>&) const override {
        std::vector<Placement> out;
        for (std::size_t i = 0; i + 1 < batch.jobs.size(); ++i)
            out.push_back({batch.jobs[i].user_id, batch.jobs[i].index_in_user, 1});
        return out;
    }
};

class Duplicates final : public OnlineAlgorithm {
public:
    std::string name() const override { return "duplicates"; }
    std::vector<Placement> decide(const Batch& batch, const std::vector<MachineState>&,
                                  const std::vector<Assignment>&) const override {
        std::vector<Placement> out;
        for (const Job& job : batch.jobs) {
            out.push_back({job.user_id, job.index_in_user, 1});
            out.push_back({job.user_id, job.index_in_user, 2});
        }
        return out;
    }
};

class InventsJobs final : public OnlineAlgorithm {
public:
    std::string name() const override { return "invents-jobs"; }
    std::vector<Placement> decide(const Batch& batch, const std::vector<MachineState>&,
                                  const std::vector<Assignment>&) const override {
        std::vector<Placement> out;
        for (const Job& job : batch.jobs)
            out.push_back({job.user_id, job.index_in_user, 1});
        out.push_back({42, 42, 1});
        return out;
    }
};

}  // namespace

TEST_CASE("greedy places each job on the least loaded machine") {
    SUBCASE("adversarial two-user case lands on the proof values") {
        const auto instance = instance_of(2, {{1, 2}, {1}});
        const auto schedule = simulate(instance, *greedy_least_loaded());
        // u1#1 -> M1 (tie, lowest index), u2#1 -> M2, u1#2 -> M1 (tie again).
        CHECK(schedule.assignments[0].machine == 1);
        CHECK(schedule.assignments[1].machine == 2);
        CHECK(schedule.assignments[2].machine == 1);
        CHECK(schedule.per_user_makespan == std::map<int, Time>{{1, 3}, {2, 1}});
    }

    SUBCASE("one job per machine when the batch matches the machine count") {
        const auto instance = instance_of(2, {{1}, {1}});
        const auto schedule = simulate(instance, *greedy_least_loaded());
        CHECK(schedule.per_user_makespan == std::map<int, Time>{{1, 1}, {2, 1}});
        CHECK(schedule.assignments[0].machine != schedule.assignments[1].machine);
    }

    SUBCASE("unit jobs fill both machines round after round") {
        const auto instance = instance_of(2, {{1, 1, 1}, {1, 1, 1}});
        const auto schedule = simulate(instance, *greedy_least_loaded());
        CHECK(schedule.per_user_makespan == std::map<int, Time>{{1, 3}, {2, 3}});
    }
}

TEST_CASE("round_robin_user pins users to machines by id") {
    SUBCASE("two users, two rounds of unit jobs") {
        const auto instance = instance_of(2, {{1, 1}, {1, 1}});
        const auto schedule = simulate(instance, *round_robin_user());
        CHECK(schedule.per_user_makespan == std::map<int, Time>{{1, 2}, {2, 2}});
    }

    SUBCASE("four users share two machines in id order") {
        const auto instance = instance_of(2, {{1}, {1}, {1}, {1}});
        const auto schedule = simulate(instance, *round_robin_user());
        CHECK(schedule.per_user_makespan ==
              std::map<int, Time>{{1, 1}, {2, 1}, {3, 2}, {4, 2}});
    }

    SUBCASE("unbalanced totals are not rebalanced") {
        const auto instance = instance_of(2, {{5}, {1}});
        const auto schedule = simulate(instance, *round_robin_user());
        CHECK(schedule.per_user_makespan == std::map<int, Time>{{1, 5}, {2, 1}});
    }
}

TEST_CASE("dedicated_machines serves each user's whole sequence on one machine") {
    SUBCASE("k = 2m: each machine serves two users within twice their work") {
        const auto instance = instance_of(2, {{1, 1}, {1, 1}, {1, 1}, {1, 1}});
        const auto schedule = simulate(instance, *dedicated_machines());
        CHECK(schedule.per_user_makespan ==
              std::map<int, Time>{{1, 3}, {2, 3}, {3, 4}, {4, 4}});
        for (const auto& [user, makespan] : schedule.per_user_makespan)
            CHECK(makespan <= 2 * instance->user(user).total_processing());
    }

    SUBCASE("k = m runs every user serially on its own machine") {
        const auto instance = instance_of(2, {{1, 2}, {3, 4}});
        const auto schedule = simulate(instance, *dedicated_machines());
        CHECK(schedule.per_user_makespan == std::map<int, Time>{{1, 3}, {2, 7}});
    }
}

TEST_CASE("scripted_algorithm replays an exact assignment table") {
    const auto instance = instance_of(2, {{1, 2}, {3, 4}, {5, 6}});

    SUBCASE("demo script reaches the profile 7, 8, 13") {
        const auto algorithm = scripted_algorithm(
            {{1, 1, 1}, {2, 1, 1}, {3, 1, 2}, {1, 2, 2}, {2, 2, 1}, {3, 2, 2}});
        const auto schedule = simulate(instance, *algorithm);
        CHECK(schedule.per_user_makespan == std::map<int, Time>{{1, 7}, {2, 8}, {3, 13}});
        CHECK(validate_schedule(schedule).ok);
    }

    SUBCASE("missing table entries are engine errors naming the round") {
        const auto algorithm = scripted_algorithm({{1, 1, 1}, {2, 1, 1}, {3, 1, 2}});
        CHECK_THROWS_WITH_AS(simulate(instance, *algorithm), doctest::Contains("round 2"),
                             SimulationError);
    }
}

TEST_CASE("engine rejects contract-breaking algorithms") {
    const auto instance = instance_of(2, {{1, 1}, {1}});
    CHECK_THROWS_WITH_AS(simulate(instance, BadMachine{}), doctest::Contains("out of range"),
                         SimulationError);
    CHECK_THROWS_WITH_AS(simulate(instance, BadMachine{}), doctest::Contains("bad-machine"),
                         SimulationError);
    CHECK_THROWS_WITH_AS(simulate(instance, DropsOne{}), doctest::Contains("no choice"),
                         SimulationError);
    CHECK_THROWS_WITH_AS(simulate(instance, Duplicates{}), doctest::Contains("duplicate choice"),
                         SimulationError);
    CHECK_THROWS_WITH_AS(simulate(instance, InventsJobs{}), doctest::Contains("not in this batch"),
                         SimulationError);
}

TEST_CASE("engine config rejects idling placement") {
    const auto instance = instance_of(2, {{1}, {1}});
    EngineConfig config;
    config.idling_allowed = true;
    CHECK_THROWS_AS(simulate(instance, *greedy_least_loaded(), config), InputError);
}

TEST_CASE("simulation is deterministic") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto instance = random_instance(rng);
        const auto a = simulate(instance, *greedy_least_loaded());
        const auto b = simulate(instance, *greedy_least_loaded());
        CHECK(serialize_schedule(a, "greedy") == serialize_schedule(b, "greedy"));
    }
}

TEST_CASE("non-idling placement leaves no gaps on any machine") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 60; ++trial) {
        const auto instance = random_instance(rng);
        const auto algorithm = trial % 3 == 0   ? greedy_least_loaded()
                               : trial % 3 == 1 ? round_robin_user()
                                                : dedicated_machines();
        const auto schedule = simulate(instance, *algorithm);
        std::map<int, std::vector<std::pair<Time, Time>>> by_machine;
        for (const Assignment& a : schedule.assignments)
            by_machine[a.machine].emplace_back(a.start_time, a.completion_time);
        for (auto& [machine, intervals] : by_machine) {
            std::sort(intervals.begin(), intervals.end());
            Time front = 0;
            for (const auto& [start, completion] : intervals) {
                CHECK(start == front);
                front = completion;
            }
        }
        CHECK(validate_schedule(schedule).ok);
    }
}

TEST_CASE("online contract: altering later batches never changes earlier decisions") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const auto instance = random_instance(rng);
        const int rounds = instance->max_jobs_per_user();
        if (rounds < 2) continue;
        const int cut = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(rounds - 1));

        // Perturb every job revealed after `cut`.
        std::vector<std::vector<Time>> mutated;
        for (const UserSequence& seq : instance->users()) {
            std::vector<Time> times;
            for (const Job& job : seq.jobs) {
                times.push_back(job.index_in_user <= cut ? job.processing_time
                                                         : job.processing_time + 1 + trial % 3);
            }
            mutated.push_back(std::move(times));
        }
        const auto altered = instance_of(instance->machine_count(), mutated);

        const auto algorithm = trial % 3 == 0   ? greedy_least_loaded()
                               : trial % 3 == 1 ? round_robin_user()
                                                : dedicated_machines();
        const auto before = simulate(instance, *algorithm);
        const auto after = simulate(altered, *algorithm);

        for (std::size_t i = 0; i < before.assignments.size(); ++i) {
            const Assignment& a = before.assignments[i];
            if (a.decided_in_round > cut) continue;
            const Assignment& b = after.assignments[i];
            CHECK(a.job.user_id == b.job.user_id);
            CHECK(a.job.index_in_user == b.job.index_in_user);
            CHECK(a.machine == b.machine);
            CHECK(a.start_time == b.start_time);
        }
    }
}
