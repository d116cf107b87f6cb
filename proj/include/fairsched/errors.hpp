#pragma once

#include <stdexcept>
#include <string>

namespace fairsched {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed files, bad CLI arguments, violated preconditions. CLI exit 1.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

// An algorithm broke the engine contract (bad machine, missing/duplicate choice).
class SimulationError : public Error {
public:
    explicit SimulationError(const std::string& what) : Error(what) {}
};

// A metric was evaluated outside its domain (non-positive achieved value, ...).
class MetricError : public Error {
public:
    explicit MetricError(const std::string& what) : Error(what) {}
};

// Enumeration would exceed the configured schedule budget.
class BudgetError : public Error {
public:
    BudgetError(const std::string& what, long long required)
        : Error(what), required_budget(required) {}
    long long required_budget;
};

}  // namespace fairsched
