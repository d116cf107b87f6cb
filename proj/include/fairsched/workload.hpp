#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "fairsched/bounds.hpp"
#include "fairsched/engine.hpp"
#include "fairsched/metrics.hpp"
#include "fairsched/model.hpp"

namespace fairsched {

// Instance files:
//   {"version": 1, "machine_count": 2,
//    "users": [{"id": 1, "jobs": [{"p": 1}, {"p": 2, "weight": "3/2", "desired_flow": 4}]}]}
// Unknown fields are rejected with their location. Weights may be integers or
// "num/den" strings.
ProblemInstance parse_instance(const std::string& text);

// Canonical form: two-space indent, alphabetical keys, trailing newline.
// parse_instance(serialize_instance(x)) reproduces x.
std::string serialize_instance(const ProblemInstance& instance);

struct UniformRandomSpec {
    int users = 2;
    int machines = 2;
    std::vector<int> jobs_per_user;  // one entry per user
    Time p_min = 1;
    Time p_max = 1;
    std::uint64_t seed = 0;
};

using GeneratorSpec = std::variant<EqualLengthFamily, UniformRandomSpec>;

// Deterministic in the spec (the seed fully determines uniform output).
ProblemInstance generate(const GeneratorSpec& spec);

struct NamedSchedule {
    Schedule schedule;
    std::string algorithm;
};

// Schedule files embed the instance, so metrics runs need no second input.
std::string serialize_schedule(const Schedule& schedule, const std::string& algorithm);
// Re-validates every schedule invariant and the stored makespans.
NamedSchedule parse_schedule(const std::string& text);

// Scripted assignment files: a JSON array of {"user", "index", "machine"} in
// batch order.
std::vector<Placement> parse_assignment_script(const std::string& text);

// "greedy", "rr-user", "dedicated" or "scripted:<file>"; lists the valid
// names on error.
std::unique_ptr<OnlineAlgorithm> make_algorithm(const std::string& name);

struct InstanceSummary {
    int machine_count = 0;
    int users = 0;
    int total_jobs = 0;
};

InstanceSummary summarize(const ProblemInstance& instance);

// Report rendering. Metrics appear twice: a 4-digit decimal string and the
// exact rational string ("7/18") for audit.
std::string report_to_json(const FairnessReport& report, const std::string& algorithm,
                           const InstanceSummary& summary);
std::string report_to_csv(const FairnessReport& report);

std::string verdict_to_json(const VerificationVerdict& verdict);
std::string verdicts_to_json(const std::vector<VerificationVerdict>& verdicts);

}  // namespace fairsched
