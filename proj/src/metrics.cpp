#include "fairsched/metrics.hpp"

#include <algorithm>

#include "fairsched/bounds.hpp"

namespace fairsched {

std::string objective_name(Objective objective) {
    switch (objective) {
        case Objective::makespan: return "makespan";
        case Objective::sum_completion: return "sum_completion";
        case Objective::weighted_completion: return "weighted_completion";
        case Objective::sum_flow: return "sum_flow";
    }
    throw Error("unreachable objective");
}

Objective parse_objective(const std::string& name) {
    if (name == "makespan") return Objective::makespan;
    if (name == "sum_completion") return Objective::sum_completion;
    if (name == "weighted_completion") return Objective::weighted_completion;
    if (name == "sum_flow") return Objective::sum_flow;
    throw InputError("unknown objective '" + name +
                     "'; valid: makespan, sum_completion, weighted_completion, sum_flow");
}

Rat optimum_makespan_bound(const UserSequence& user, int machine_count) {
    if (machine_count < 2) throw InputError("m >= 2 required");
    if (user.jobs.empty())
        throw InputError("user " + std::to_string(user.user_id) + " has an empty sequence");
    return make_rat(user.total_processing(), machine_count);
}

Rat relative_fairness(const UserOutcome& outcome) {
    if (outcome.achieved <= 0)
        throw MetricError("achieved value must be positive (user " +
                          std::to_string(outcome.user_id) + ")");
    if (outcome.optimum <= 0)
        throw MetricError("optimum value must be positive (user " +
                          std::to_string(outcome.user_id) + ")");
    return outcome.optimum / outcome.achieved;
}

Rat relative_fairness_percent(const Rat& rf) { return rf * 100; }

Rat global_fairness(const std::map<int, Rat>& rfs) {
    if (rfs.empty()) throw MetricError("global fairness of an empty user set");
    Rat sum = 0;
    for (const auto& [user, rf] : rfs) sum += rf;
    return sum / static_cast<int>(rfs.size());
}

Rat user_discrimination(const Rat& rf) { return Rat(1) - rf; }

Rat global_discrimination(const Rat& gf) { return Rat(1) - gf; }

Rat relative_discrimination(const Rat& rf, const Rat& gf) {
    return rf < gf ? Rat(gf - rf) : Rat(0);
}

Rat jain_index(const std::vector<Rat>& values) {
    if (values.empty()) throw MetricError("Jain index of an empty value list");
    Rat sum = 0, sum_sq = 0;
    for (const Rat& value : values) {
        if (value < 0) throw MetricError("Jain index requires non-negative values");
        sum += value;
        sum_sq += value * value;
    }
    if (sum_sq == 0) throw MetricError("Jain index requires at least one positive value");
    return (sum * sum) / (static_cast<int>(values.size()) * sum_sq);
}

Rat stretch(const Rat& achieved, const Rat& optimum) {
    if (optimum <= 0) throw MetricError("stretch requires a positive optimum");
    return achieved / optimum;
}

namespace {

struct UserRows {
    std::vector<const Assignment*> assignments;  // in decision order
};

std::map<int, UserRows> group_by_user(const Schedule& schedule) {
    std::map<int, UserRows> rows;
    for (const Assignment& a : schedule.assignments)
        rows[a.job.user_id].assignments.push_back(&a);
    for (const UserSequence& seq : schedule.instance->users()) {
        const auto it = rows.find(seq.user_id);
        if (it == rows.end() || it->second.assignments.size() != seq.jobs.size())
            throw MetricError("corrupted schedule: user " + std::to_string(seq.user_id) +
                              " is missing assignments");
    }
    return rows;
}

}  // namespace

std::map<int, UserOutcome> objective_values(const Schedule& schedule, Objective objective,
                                            const OracleOptions& oracle) {
    if (!schedule.instance) throw InputError("schedule has no instance");
    const ProblemInstance& instance = *schedule.instance;
    const int m = instance.machine_count();
    const auto rows = group_by_user(schedule);

    if (objective == Objective::weighted_completion) {
        const bool any_weight = std::any_of(
            instance.users().begin(), instance.users().end(), [](const UserSequence& seq) {
                return std::any_of(seq.jobs.begin(), seq.jobs.end(),
                                   [](const Job& job) { return job.weight.has_value(); });
            });
        if (!any_weight)
            throw MetricError("weighted_completion objective requires job weights in the instance");
    }

    std::map<int, UserOutcome> outcomes;
    for (const UserSequence& seq : instance.users()) {
        const UserRows& row = rows.at(seq.user_id);
        UserOutcome outcome;
        outcome.user_id = seq.user_id;

        switch (objective) {
            case Objective::makespan: {
                Time makespan = 0;
                for (const Assignment* a : row.assignments)
                    makespan = std::max(makespan, a->completion_time);
                outcome.achieved = Rat(static_cast<long>(makespan));
                if (oracle.use_exact_oracle) {
                    std::vector<Time> times;
                    for (const Job& job : seq.jobs) times.push_back(job.processing_time);
                    outcome.optimum = Rat(static_cast<long>(
                        exact_optimal_makespan(std::move(times), m, oracle.oracle_job_limit)));
                } else {
                    outcome.optimum = optimum_makespan_bound(seq, m);
                }
                break;
            }
            case Objective::sum_completion: {
                Time sum = 0;
                for (const Assignment* a : row.assignments) sum += a->completion_time;
                std::vector<Time> times;
                for (const Job& job : seq.jobs) times.push_back(job.processing_time);
                outcome.achieved = Rat(static_cast<long>(sum));
                outcome.optimum = Rat(static_cast<long>(min_sum_completion_time(std::move(times), m)));
                break;
            }
            case Objective::weighted_completion: {
                // Unset weights default to 1; the objective still needs the
                // instance to carry weights at all (checked below).
                Rat sum = 0;
                std::vector<std::pair<Time, Rat>> weighted_jobs;
                for (const Assignment* a : row.assignments) {
                    const Rat w = a->job.weight.value_or(Rat(1));
                    sum += w * Rat(static_cast<long>(a->completion_time));
                    weighted_jobs.emplace_back(a->job.processing_time, w);
                }
                outcome.achieved = sum;
                if (static_cast<int>(weighted_jobs.size()) <= oracle.oracle_job_limit) {
                    outcome.optimum =
                        min_weighted_completion_time(weighted_jobs, m, oracle.oracle_job_limit);
                } else {
                    // No-waiting bound: every completion is at least the processing time.
                    Rat bound = 0;
                    for (const auto& [p, w] : weighted_jobs) bound += w * Rat(static_cast<long>(p));
                    outcome.optimum = bound;
                }
                break;
            }
            case Objective::sum_flow: {
                Time flow = 0, desired = 0;
                for (const Assignment* a : row.assignments) {
                    const Time arrival = static_cast<Time>(a->decided_in_round) - 1;
                    flow += a->completion_time - arrival;
                    desired += a->job.desired_flow.value_or(a->job.processing_time);
                }
                outcome.achieved = Rat(static_cast<long>(flow));
                outcome.optimum = Rat(static_cast<long>(desired));
                break;
            }
        }

        if (outcome.achieved <= 0)
            throw MetricError(objective_name(objective) + " achieved value must be positive "
                              "(user " + std::to_string(seq.user_id) + ")");
        outcomes[seq.user_id] = std::move(outcome);
    }
    return outcomes;
}

FairnessReport fairness_report(const std::map<int, UserOutcome>& outcomes, Objective objective) {
    if (outcomes.empty()) throw MetricError("fairness report over an empty outcome set");

    FairnessReport report;
    report.objective = objective;
    report.outcomes = outcomes;

    std::vector<Rat> rf_values;
    for (const auto& [user, outcome] : outcomes) {
        const Rat rf = relative_fairness(outcome);
        report.fairness_index.relative[user] = rf;
        report.rf_percent[user] = relative_fairness_percent(rf);
        report.stretch_per_user[user] = stretch(outcome.achieved, outcome.optimum);
        rf_values.push_back(rf);
    }

    report.fairness_index.global = global_fairness(report.fairness_index.relative);
    report.gf_percent = relative_fairness_percent(report.fairness_index.global);
    report.discrimination_index.gdi = global_discrimination(report.fairness_index.global);
    for (const auto& [user, rf] : report.fairness_index.relative) {
        report.discrimination_index.udi[user] = user_discrimination(rf);
        report.discrimination_index.rdi[user] =
            relative_discrimination(rf, report.fairness_index.global);
    }

    report.fairness_level = *std::min_element(rf_values.begin(), rf_values.end());
    report.absolute_fair =
        std::all_of(rf_values.begin(), rf_values.end(),
                    [&](const Rat& rf) { return rf == rf_values.front(); });
    report.jain = jain_index(rf_values);
    return report;
}

FairnessReport fairness_report(const Schedule& schedule, Objective objective,
                               const OracleOptions& oracle) {
    return fairness_report(objective_values(schedule, objective, oracle), objective);
}

}  // namespace fairsched
