#include "fairsched/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fairsched {

namespace {

std::string job_tag(int user_id, int index_in_user) {
    std::ostringstream os;
    os << "u" << user_id << "#" << index_in_user;
    return os.str();
}

std::string job_tag(const Job& job) { return job_tag(job.user_id, job.index_in_user); }

}  // namespace

Time UserSequence::total_processing() const {
    Time total = 0;
    for (const Job& job : jobs) total += job.processing_time;
    return total;
}

ProblemInstance::ProblemInstance(int machine_count, std::vector<UserSequence> users)
    : machine_count_(machine_count), users_(std::move(users)), total_jobs_(0), max_jobs_per_user_(0) {
    if (machine_count_ < 2) throw InputError("m >= 2 required");
    if (users_.size() < 2) throw InputError("k >= 2 required");

    std::set<int> seen_ids;
    for (std::size_t i = 0; i < users_.size(); ++i) {
        UserSequence& seq = users_[i];
        const int expected_id = static_cast<int>(i) + 1;
        if (seq.user_id == 0) seq.user_id = expected_id;
        if (!seen_ids.insert(seq.user_id).second)
            throw InputError("duplicate user id " + std::to_string(seq.user_id));
        if (seq.user_id != expected_id)
            throw InputError("user ids must be 1..k consecutive (got " +
                             std::to_string(seq.user_id) + " at position " +
                             std::to_string(expected_id) + ")");
        if (seq.jobs.empty())
            throw InputError("user " + std::to_string(seq.user_id) + " has no jobs");
        for (std::size_t j = 0; j < seq.jobs.size(); ++j) {
            Job& job = seq.jobs[j];
            const int expected_index = static_cast<int>(j) + 1;
            if (job.user_id == 0) job.user_id = seq.user_id;
            if (job.index_in_user == 0) job.index_in_user = expected_index;
            if (job.user_id != seq.user_id || job.index_in_user != expected_index)
                throw InputError("job " + job_tag(job) + " is out of place in user " +
                                 std::to_string(seq.user_id) + "'s sequence");
            if (job.processing_time < 1)
                throw InputError("processing_time must be >= 1 (job " + job_tag(job) + ")");
            if (job.weight && *job.weight < 0)
                throw InputError("weight must be non-negative (job " + job_tag(job) + ")");
            if (job.desired_flow && *job.desired_flow < 1)
                throw InputError("desired_flow must be >= 1 (job " + job_tag(job) + ")");
        }
        total_jobs_ += static_cast<int>(seq.jobs.size());
        max_jobs_per_user_ = std::max(max_jobs_per_user_, static_cast<int>(seq.jobs.size()));
    }
}

const UserSequence& ProblemInstance::user(int user_id) const {
    if (user_id < 1 || user_id > user_count())
        throw InputError("no such user: " + std::to_string(user_id));
    return users_[static_cast<std::size_t>(user_id) - 1];
}

const Job& ProblemInstance::job(int user_id, int index_in_user) const {
    const UserSequence& seq = user(user_id);
    if (index_in_user < 1 || index_in_user > static_cast<int>(seq.jobs.size()))
        throw InputError("no such job: " + job_tag(user_id, index_in_user));
    return seq.jobs[static_cast<std::size_t>(index_in_user) - 1];
}

ProblemInstance make_instance(int machine_count,
                              const std::vector<std::vector<Time>>& processing_times) {
    std::vector<UserSequence> users;
    users.reserve(processing_times.size());
    for (const auto& times : processing_times) {
        UserSequence seq;
        for (Time p : times) {
            Job job;
            job.processing_time = p;
            seq.jobs.push_back(job);
        }
        users.push_back(std::move(seq));
    }
    return ProblemInstance(machine_count, std::move(users));
}

std::vector<Batch> build_batches(const ProblemInstance& instance) {
    std::vector<Batch> batches;
    batches.reserve(static_cast<std::size_t>(instance.max_jobs_per_user()));
    for (int round = 1; round <= instance.max_jobs_per_user(); ++round) {
        Batch batch;
        batch.round = round;
        for (const UserSequence& seq : instance.users()) {
            if (static_cast<int>(seq.jobs.size()) >= round)
                batch.jobs.push_back(seq.jobs[static_cast<std::size_t>(round) - 1]);
        }
        batches.push_back(std::move(batch));
    }
    return batches;
}

Schedule make_schedule(std::shared_ptr<const ProblemInstance> instance,
                       std::vector<Assignment> assignments) {
    Schedule schedule;
    schedule.instance = std::move(instance);
    schedule.assignments = std::move(assignments);
    for (const Assignment& a : schedule.assignments) {
        Time& best = schedule.per_user_makespan[a.job.user_id];
        best = std::max(best, a.completion_time);
        schedule.overall_makespan = std::max(schedule.overall_makespan, a.completion_time);
    }
    return schedule;
}

std::map<int, Time> per_user_makespans(const Schedule& schedule) {
    if (!schedule.instance) throw Error("schedule has no instance");
    std::map<int, Time> result;
    for (const Assignment& a : schedule.assignments) {
        Time& best = result[a.job.user_id];
        best = std::max(best, a.completion_time);
    }
    for (const UserSequence& seq : schedule.instance->users()) {
        if (result.find(seq.user_id) == result.end())
            throw Error("corrupted schedule: user " + std::to_string(seq.user_id) +
                        " has no assignments");
    }
    if (result.size() != schedule.instance->users().size())
        throw Error("corrupted schedule: assignments for unknown users present");
    return result;
}

ValidationResult validate_schedule(const Schedule& schedule) {
    ValidationResult result;
    auto fail = [&result](const std::string& message) {
        result.ok = false;
        result.violations.push_back(message);
    };

    if (!schedule.instance) {
        fail("schedule has no instance");
        return result;
    }
    const ProblemInstance& instance = *schedule.instance;

    std::map<std::pair<int, int>, int> times_assigned;
    for (const Assignment& a : schedule.assignments)
        ++times_assigned[{a.job.user_id, a.job.index_in_user}];
    for (const UserSequence& seq : instance.users()) {
        for (const Job& job : seq.jobs) {
            const auto it = times_assigned.find({job.user_id, job.index_in_user});
            const int count = it == times_assigned.end() ? 0 : it->second;
            if (count != 1)
                fail("job " + job_tag(job) + " assigned " + std::to_string(count) +
                     " times (expected exactly once)");
        }
    }
    if (times_assigned.size() > static_cast<std::size_t>(instance.total_jobs()))
        fail("schedule contains assignments for jobs outside the instance");

    for (const Assignment& a : schedule.assignments) {
        if (a.machine < 1 || a.machine > instance.machine_count())
            fail("job " + job_tag(a.job) + ": machine " + std::to_string(a.machine) +
                 " out of range 1.." + std::to_string(instance.machine_count()));
        if (a.start_time < 0)
            fail("job " + job_tag(a.job) + ": negative start time");
        if (a.completion_time != a.start_time + a.job.processing_time)
            fail("job " + job_tag(a.job) + ": completion_time != start_time + processing_time");
        // A job's batch round equals its index in the user's sequence.
        if (a.decided_in_round != a.job.index_in_user)
            fail("job " + job_tag(a.job) + ": decided in round " +
                 std::to_string(a.decided_in_round) + " but revealed in batch " +
                 std::to_string(a.job.index_in_user));
    }

    std::map<int, std::vector<const Assignment*>> by_machine;
    for (const Assignment& a : schedule.assignments) by_machine[a.machine].push_back(&a);
    for (auto& [machine, list] : by_machine) {
        std::sort(list.begin(), list.end(), [](const Assignment* a, const Assignment* b) {
            return a->start_time < b->start_time;
        });
        for (std::size_t i = 1; i < list.size(); ++i) {
            if (list[i]->start_time < list[i - 1]->completion_time)
                fail("overlap on machine " + std::to_string(machine) + ": jobs " +
                     job_tag(list[i - 1]->job) + " and " + job_tag(list[i]->job));
        }
    }

    std::map<int, Time> recomputed;
    Time overall = 0;
    for (const Assignment& a : schedule.assignments) {
        Time& best = recomputed[a.job.user_id];
        best = std::max(best, a.completion_time);
        overall = std::max(overall, a.completion_time);
    }
    if (schedule.per_user_makespan != recomputed)
        fail("stored per_user_makespan disagrees with assignments");
    if (schedule.overall_makespan != overall)
        fail("stored overall_makespan disagrees with assignments");

    return result;
}

bool is_non_idling(const Schedule& schedule) {
    if (!schedule.instance) return false;
    const int machine_count = schedule.instance->machine_count();

    // Busy intervals per machine, merged.
    std::vector<std::vector<std::pair<Time, Time>>> busy(static_cast<std::size_t>(machine_count) + 1);
    for (const Assignment& a : schedule.assignments) {
        if (a.machine < 1 || a.machine > machine_count) return false;
        busy[static_cast<std::size_t>(a.machine)].emplace_back(a.start_time, a.completion_time);
    }
    for (auto& intervals : busy) {
        std::sort(intervals.begin(), intervals.end());
        std::vector<std::pair<Time, Time>> merged;
        for (const auto& iv : intervals) {
            if (!merged.empty() && iv.first <= merged.back().second)
                merged.back().second = std::max(merged.back().second, iv.second);
            else
                merged.push_back(iv);
        }
        intervals = std::move(merged);
    }

    auto covered = [](const std::vector<std::pair<Time, Time>>& intervals, Time from, Time to) {
        for (const auto& iv : intervals) {
            if (iv.first <= from && to <= iv.second) return true;
            if (iv.first > from) break;
            if (iv.second > from) from = iv.second;  // partial cover; keep scanning
            if (from >= to) return true;
        }
        return from >= to;
    };

    for (const Assignment& a : schedule.assignments) {
        const Time reveal = static_cast<Time>(a.decided_in_round) - 1;
        if (a.start_time <= reveal) continue;
        for (int machine = 1; machine <= machine_count; ++machine) {
            if (!covered(busy[static_cast<std::size_t>(machine)], reveal, a.start_time))
                return false;  // that machine sat idle while this job waited
        }
    }
    return true;
}

}  // namespace fairsched
