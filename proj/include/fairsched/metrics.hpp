#pragma once

#include <map>
#include <string>
#include <vector>

#include "fairsched/model.hpp"
#include "fairsched/rational.hpp"

namespace fairsched {

// Per-user objective being judged for fairness.
enum class Objective { makespan, sum_completion, weighted_completion, sum_flow };

std::string objective_name(Objective objective);
// Accepts the names above (snake_case); lists the valid ones on error.
Objective parse_objective(const std::string& name);

// What user r achieved versus the fair optimum it is measured against.
struct UserOutcome {
    int user_id = 0;
    Rat achieved;  // > 0
    Rat optimum;   // > 0
};

// Fair optimum bound for a user's makespan: total work / m, exact.
Rat optimum_makespan_bound(const UserSequence& user, int machine_count);

// RF = optimum / achieved.
Rat relative_fairness(const UserOutcome& outcome);

// RFP = RF * 100.
Rat relative_fairness_percent(const Rat& rf);

// GF = arithmetic mean of the users' RF values.
Rat global_fairness(const std::map<int, Rat>& rfs);

// UDI = 1 - RF.
Rat user_discrimination(const Rat& rf);

// GDI = 1 - GF.
Rat global_discrimination(const Rat& gf);

// RDI = GF - RF when RF < GF, else 0.
Rat relative_discrimination(const Rat& rf, const Rat& gf);

// (sum x)^2 / (k * sum x^2) over non-negative values, in (0, 1].
Rat jain_index(const std::vector<Rat>& values);

// achieved / optimum; reciprocal of RF.
Rat stretch(const Rat& achieved, const Rat& optimum);

struct OracleOptions {
    // Replace the averaged makespan bound with the exact single-user optimum.
    bool use_exact_oracle = false;
    // Beyond this many jobs the weighted-completion optimum falls back to the
    // no-waiting bound sum(w*p); the exact makespan oracle refuses instead.
    int oracle_job_limit = 14;
};

// Achieved and optimum values per user for the chosen objective.
//   makespan:            C^r, against total/m (or the exact oracle)
//   sum_completion:      sum of completion times, against the SPT optimum
//   weighted_completion: sum of w*c, against the exact partition optimum
//   sum_flow:            sum of (completion - arrival), arrival = round - 1,
//                        against the per-job desired flows (default: p)
std::map<int, UserOutcome> objective_values(const Schedule& schedule, Objective objective,
                                            const OracleOptions& oracle = {});

struct FairnessIndex {
    std::map<int, Rat> relative;  // RF per user
    Rat global;                   // GF
};

struct DiscriminationIndex {
    std::map<int, Rat> udi;
    Rat gdi;
    std::map<int, Rat> rdi;
};

struct FairnessReport {
    Objective objective = Objective::makespan;
    std::map<int, UserOutcome> outcomes;
    FairnessIndex fairness_index;
    DiscriminationIndex discrimination_index;
    std::map<int, Rat> rf_percent;
    Rat gf_percent;
    Rat fairness_level;        // min RF; the algorithm is at-least-this fair
    bool absolute_fair = false;  // all RF equal; exact b-fairness needs this
    Rat jain;                  // Jain index over the RF values
    std::map<int, Rat> stretch_per_user;
};

FairnessReport fairness_report(const std::map<int, UserOutcome>& outcomes, Objective objective);
FairnessReport fairness_report(const Schedule& schedule, Objective objective,
                               const OracleOptions& oracle = {});

}  // namespace fairsched
