#include <doctest.h>

#include "fairsched/metrics.hpp"
#include "support.hpp"

using namespace fairsched;
using namespace fairsched::testsupport;

TEST_CASE("optimum_makespan_bound is the exact averaged total") {
    const auto instance = instance_of(2, {{1, 2}, {3, 4}, {5, 6}});
    CHECK(optimum_makespan_bound(instance->user(1), 2) == make_rat(3, 2));
    CHECK(optimum_makespan_bound(instance->user(3), 2) == make_rat(11, 2));

    const auto unit = instance_of(2, {{1, 1}, {1, 1}});
    CHECK(optimum_makespan_bound(unit->user(1), 2) == 1);

    CHECK_THROWS_AS(optimum_makespan_bound(instance->user(1), 1), InputError);
    CHECK_THROWS_AS(optimum_makespan_bound(UserSequence{}, 2), InputError);
}

TEST_CASE("relative fairness and its percentage") {
    CHECK(relative_fairness({1, make_rat(11), make_rat(3, 2)}) == make_rat(3, 22));
    CHECK(relative_fairness({2, make_rat(9), make_rat(7, 2)}) == make_rat(7, 18));
    CHECK(relative_fairness({3, make_rat(5), make_rat(5)}) == 1);
    CHECK_THROWS_AS(relative_fairness({1, Rat(0), Rat(1)}), MetricError);

    CHECK(relative_fairness_percent(make_rat(11, 20)) == 55);
    CHECK(relative_fairness_percent(Rat(1)) == 100);
    // 3/22 is 13.6363..%; the displayed two-digit value truncates to 13%.
    CHECK(relative_fairness_percent(make_rat(3, 22)) == make_rat(150, 11));
}

TEST_CASE("global fairness is the mean of the users' RF") {
    const std::map<int, Rat> example1 = {
        {1, make_rat(3, 22)}, {2, make_rat(7, 18)}, {3, make_rat(11, 20)}};
    CHECK(global_fairness(example1) == make_rat(2129, 5940));  // 0.3584...

    const std::map<int, Rat> example2 = {{1, make_rat(3, 5)},
                                         {2, make_rat(3, 5)},
                                         {3, make_rat(3, 5)},
                                         {4, make_rat(1, 5)}};
    CHECK(global_fairness(example2) == make_rat(1, 2));

    CHECK(global_fairness({{1, Rat(1)}, {2, Rat(1)}}) == 1);
    CHECK_THROWS_AS(global_fairness({}), MetricError);
}

TEST_CASE("discrimination indices") {
    CHECK(user_discrimination(make_rat(3, 5)) == make_rat(2, 5));
    CHECK(user_discrimination(make_rat(1, 5)) == make_rat(4, 5));
    CHECK(user_discrimination(Rat(1)) == 0);

    CHECK(global_discrimination(make_rat(1, 2)) == make_rat(1, 2));
    CHECK(global_discrimination(Rat(1)) == 0);
    CHECK(global_discrimination(make_rat(7, 20)) == make_rat(13, 20));

    CHECK(relative_discrimination(make_rat(1, 5), make_rat(1, 2)) == make_rat(3, 10));
    CHECK(relative_discrimination(make_rat(3, 5), make_rat(1, 2)) == 0);
    CHECK(relative_discrimination(make_rat(1, 2), make_rat(1, 2)) == 0);
}

TEST_CASE("jain index") {
    CHECK(jain_index({Rat(3), Rat(3), Rat(3)}) == 1);
    CHECK(jain_index({Rat(1), Rat(0)}) == make_rat(1, 2));
    // Over the exact RF values 3/22, 7/18, 11/20.
    CHECK(jain_index({make_rat(3, 22), make_rat(7, 18), make_rat(11, 20)}) ==
          make_rat(4532641, 5555163));
    CHECK_THROWS_AS(jain_index({Rat(0), Rat(0)}), MetricError);
    CHECK_THROWS_AS(jain_index({}), MetricError);
}

TEST_CASE("stretch is the reciprocal degradation factor") {
    CHECK(stretch(make_rat(11), make_rat(3, 2)) == make_rat(22, 3));
    CHECK(stretch(make_rat(7), make_rat(7)) == 1);
    CHECK(stretch(make_rat(9), make_rat(7, 2)) == make_rat(18, 7));
    CHECK_THROWS_AS(stretch(Rat(1), Rat(0)), MetricError);
}

TEST_CASE("fairness_report on the hand-built 11/9/10 schedule") {
    const FairnessReport report = fairness_report(example1_schedule(), Objective::makespan);

    CHECK(report.fairness_index.relative.at(1) == make_rat(3, 22));
    CHECK(report.fairness_index.relative.at(2) == make_rat(7, 18));
    CHECK(report.fairness_index.relative.at(3) == make_rat(11, 20));
    CHECK(report.fairness_index.global == make_rat(2129, 5940));
    CHECK(report.gf_percent == make_rat(212900, 5940));
    CHECK(report.discrimination_index.gdi == make_rat(3811, 5940));
    CHECK(report.fairness_level == make_rat(3, 22));
    CHECK_FALSE(report.absolute_fair);
    CHECK(report.jain == make_rat(4532641, 5555163));
    CHECK(report.stretch_per_user.at(1) == make_rat(22, 3));

    for (const auto& [user, rf] : report.fairness_index.relative) {
        CHECK(rf > 0);
        CHECK(rf <= 1);
        // RF * stretch = 1 for the makespan objective.
        CHECK(rf * report.stretch_per_user.at(user) == 1);
    }
}

TEST_CASE("fairness_report when every user attains its optimum") {
    std::map<int, UserOutcome> outcomes;
    outcomes[1] = {1, make_rat(3, 2), make_rat(3, 2)};
    outcomes[2] = {2, make_rat(7, 2), make_rat(7, 2)};
    const FairnessReport report = fairness_report(outcomes, Objective::makespan);
    CHECK(report.fairness_index.global == 1);
    CHECK(report.discrimination_index.gdi == 0);
    CHECK(report.absolute_fair);
    CHECK(report.fairness_level == 1);
    for (const auto& [user, rdi] : report.discrimination_index.rdi) CHECK(rdi == 0);
}

TEST_CASE("fairness_report reproduces the four-user discrimination tuple") {
    // RF values 0.6, 0.6, 0.6, 0.2 expressed through outcomes.
    std::map<int, UserOutcome> outcomes;
    outcomes[1] = {1, Rat(1), make_rat(3, 5)};
    outcomes[2] = {2, Rat(1), make_rat(3, 5)};
    outcomes[3] = {3, Rat(1), make_rat(3, 5)};
    outcomes[4] = {4, Rat(1), make_rat(1, 5)};
    const FairnessReport report = fairness_report(outcomes, Objective::makespan);

    CHECK(report.discrimination_index.udi ==
          std::map<int, Rat>{{1, make_rat(2, 5)},
                             {2, make_rat(2, 5)},
                             {3, make_rat(2, 5)},
                             {4, make_rat(4, 5)}});
    CHECK(report.discrimination_index.gdi == make_rat(1, 2));
    CHECK(report.discrimination_index.rdi ==
          std::map<int, Rat>{{1, Rat(0)}, {2, Rat(0)}, {3, Rat(0)}, {4, make_rat(3, 10)}});
}

TEST_CASE("objective_values over completion, weighted and flow sums") {
    SUBCASE("sum of completion times from a hand placement") {
        const auto instance = instance_of(2, {{1, 2}, {1}});
        std::vector<Assignment> assignments = {place(instance, 1, 1, 1, 0),
                                               place(instance, 2, 1, 1, 1),
                                               place(instance, 1, 2, 2, 0)};
        const Schedule schedule = make_schedule(instance, std::move(assignments));
        const auto outcomes = objective_values(schedule, Objective::sum_completion);
        CHECK(outcomes.at(1).achieved == 3);  // completions 1 and 2
        CHECK(outcomes.at(1).optimum == 3);   // both jobs can run in parallel
    }

    SUBCASE("weights scale the completion sums") {
        auto weighted = make_instance(2, {{1, 2}, {1}});
        std::vector<UserSequence> users = weighted.users();
        users[0].jobs[0].weight = make_rat(2);
        users[0].jobs[1].weight = make_rat(1);
        const auto instance =
            std::make_shared<const ProblemInstance>(ProblemInstance(2, std::move(users)));
        std::vector<Assignment> assignments = {place(instance, 1, 1, 1, 0),
                                               place(instance, 2, 1, 1, 1),
                                               place(instance, 1, 2, 2, 0)};
        const Schedule schedule = make_schedule(instance, std::move(assignments));
        const auto outcomes = objective_values(schedule, Objective::weighted_completion);
        CHECK(outcomes.at(1).achieved == 4);  // 2*1 + 1*2
        CHECK(outcomes.at(1).optimum == 4);
    }

    SUBCASE("weighted objective requires weights somewhere in the instance") {
        const auto instance = instance_of(2, {{1, 2}, {1}});
        const Schedule schedule = simulate(instance, *greedy_least_loaded());
        CHECK_THROWS_AS(objective_values(schedule, Objective::weighted_completion), MetricError);
    }

    SUBCASE("flow times subtract the batch arrival") {
        const auto instance = instance_of(2, {{1, 1}, {1}});
        std::vector<Assignment> assignments = {place(instance, 1, 1, 1, 0),
                                               place(instance, 2, 1, 2, 0),
                                               place(instance, 1, 2, 1, 2)};
        const Schedule schedule = make_schedule(instance, std::move(assignments));
        const auto outcomes = objective_values(schedule, Objective::sum_flow);
        // u1#1: flow 1; u1#2: arrives at t=1, completes at 3, flow 2.
        CHECK(outcomes.at(1).achieved == 3);
        CHECK(outcomes.at(1).optimum == 2);  // desired flows default to processing times
    }

    SUBCASE("desired_flow overrides the per-job target") {
        auto base = make_instance(2, {{1, 1}, {1}});
        std::vector<UserSequence> users = base.users();
        users[0].jobs[1].desired_flow = 2;
        const auto instance =
            std::make_shared<const ProblemInstance>(ProblemInstance(2, std::move(users)));
        const Schedule schedule = simulate(instance, *greedy_least_loaded());
        const auto outcomes = objective_values(schedule, Objective::sum_flow);
        CHECK(outcomes.at(1).optimum == 3);  // 1 + overridden 2
    }
}

TEST_CASE("objective names parse and render") {
    CHECK(parse_objective("makespan") == Objective::makespan);
    CHECK(parse_objective("sum_flow") == Objective::sum_flow);
    CHECK(objective_name(Objective::weighted_completion) == "weighted_completion");
    CHECK_THROWS_WITH_AS(parse_objective("latency"), doctest::Contains("valid:"), InputError);
}
