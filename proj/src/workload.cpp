#include "fairsched/workload.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace fairsched {

using nlohmann::json;

namespace {

[[noreturn]] void fail_at(const std::string& path, const std::string& message) {
    throw InputError(path + ": " + message);
}

void check_keys(const json& object, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : object.items()) {
        (void)value;
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* name) { return key == name; }) == allowed.end())
            fail_at(path, "unknown field '" + key + "'");
    }
}

const json& require_field(const json& object, const std::string& path, const char* key) {
    const auto it = object.find(key);
    if (it == object.end()) fail_at(path, std::string("missing field '") + key + "'");
    return *it;
}

long long require_integer(const json& value, const std::string& path) {
    if (!value.is_number_integer()) fail_at(path, "must be an integer");
    return value.get<long long>();
}

Rat require_rational(const json& value, const std::string& path) {
    if (value.is_number_integer()) return make_rat(value.get<long long>());
    if (value.is_string()) return parse_rational(value.get<std::string>());
    fail_at(path, "must be an integer or a \"num/den\" string");
}

ProblemInstance instance_from_json(const json& root, const std::string& path) {
    if (!root.is_object()) fail_at(path, "must be an object");
    check_keys(root, path, {"version", "machine_count", "users"});

    const long long version = require_integer(require_field(root, path, "version"), path + ".version");
    if (version != 1) fail_at(path + ".version", "unsupported version " + std::to_string(version));

    const long long machine_count =
        require_integer(require_field(root, path, "machine_count"), path + ".machine_count");
    if (machine_count < 2) fail_at(path + ".machine_count", "m >= 2 required");

    const json& users = require_field(root, path, "users");
    if (!users.is_array()) fail_at(path + ".users", "must be an array");
    if (users.size() < 2) fail_at(path + ".users", "k >= 2 required");

    std::vector<UserSequence> sequences;
    std::vector<long long> seen_ids;
    for (std::size_t i = 0; i < users.size(); ++i) {
        const std::string upath = path + ".users[" + std::to_string(i) + "]";
        const json& user = users[i];
        if (!user.is_object()) fail_at(upath, "must be an object");
        check_keys(user, upath, {"id", "jobs"});

        const long long id = require_integer(require_field(user, upath, "id"), upath + ".id");
        if (std::find(seen_ids.begin(), seen_ids.end(), id) != seen_ids.end())
            fail_at(upath + ".id", "duplicate user id " + std::to_string(id));
        seen_ids.push_back(id);

        const json& jobs = require_field(user, upath, "jobs");
        if (!jobs.is_array() || jobs.empty()) fail_at(upath + ".jobs", "must be a non-empty array");

        UserSequence seq;
        seq.user_id = static_cast<int>(id);
        for (std::size_t j = 0; j < jobs.size(); ++j) {
            const std::string jpath = upath + ".jobs[" + std::to_string(j) + "]";
            const json& job_json = jobs[j];
            if (!job_json.is_object()) fail_at(jpath, "must be an object");
            check_keys(job_json, jpath, {"p", "weight", "desired_flow"});

            Job job;
            job.processing_time = require_integer(require_field(job_json, jpath, "p"), jpath + ".p");
            if (job.processing_time < 1) fail_at(jpath + ".p", "processing_time must be >= 1");
            if (job_json.contains("weight")) {
                job.weight = require_rational(job_json["weight"], jpath + ".weight");
                if (*job.weight < 0) fail_at(jpath + ".weight", "weight must be non-negative");
            }
            if (job_json.contains("desired_flow")) {
                job.desired_flow =
                    require_integer(job_json["desired_flow"], jpath + ".desired_flow");
                if (*job.desired_flow < 1) fail_at(jpath + ".desired_flow", "must be >= 1");
            }
            seq.jobs.push_back(std::move(job));
        }
        sequences.push_back(std::move(seq));
    }

    return ProblemInstance(static_cast<int>(machine_count), std::move(sequences));
}

json instance_to_json(const ProblemInstance& instance) {
    json users = json::array();
    for (const UserSequence& seq : instance.users()) {
        json jobs = json::array();
        for (const Job& job : seq.jobs) {
            json j;
            j["p"] = job.processing_time;
            if (job.weight) j["weight"] = fraction_string(*job.weight);
            if (job.desired_flow) j["desired_flow"] = *job.desired_flow;
            jobs.push_back(std::move(j));
        }
        users.push_back(json{{"id", seq.user_id}, {"jobs", std::move(jobs)}});
    }
    return json{{"version", 1}, {"machine_count", instance.machine_count()}, {"users", std::move(users)}};
}

json parse_text(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string(what) + ": invalid JSON: " + e.what());
    }
}

std::string dump(const json& value) { return value.dump(2) + "\n"; }

json schedule_to_json(const Schedule& schedule) {
    json assignments = json::array();
    for (const Assignment& a : schedule.assignments) {
        assignments.push_back(json{{"user", a.job.user_id},
                                   {"index", a.job.index_in_user},
                                   {"machine", a.machine},
                                   {"start", a.start_time},
                                   {"completion", a.completion_time},
                                   {"round", a.decided_in_round}});
    }
    json makespans = json::array();
    for (const auto& [user, makespan] : schedule.per_user_makespan)
        makespans.push_back(json{{"user", user}, {"makespan", makespan}});
    return json{{"instance", instance_to_json(*schedule.instance)},
                {"assignments", std::move(assignments)},
                {"per_user_makespan", std::move(makespans)},
                {"overall_makespan", schedule.overall_makespan}};
}

}  // namespace

ProblemInstance parse_instance(const std::string& text) {
    return instance_from_json(parse_text(text, "instance"), "instance");
}

std::string serialize_instance(const ProblemInstance& instance) {
    return dump(instance_to_json(instance));
}

ProblemInstance generate(const GeneratorSpec& spec) {
    if (const auto* family = std::get_if<EqualLengthFamily>(&spec))
        return make_equal_length_instance(*family);

    const auto& uniform = std::get<UniformRandomSpec>(spec);
    if (uniform.users < 2) throw InputError("generator: k >= 2 required");
    if (uniform.machines < 2) throw InputError("generator: m >= 2 required");
    if (static_cast<int>(uniform.jobs_per_user.size()) != uniform.users)
        throw InputError("generator: jobs_per_user needs one entry per user");
    if (uniform.p_min < 1 || uniform.p_max < uniform.p_min)
        throw InputError("generator: need 1 <= p_min <= p_max");

    // Raw engine draws with modulo folding keep output identical across
    // platforms for a fixed seed.
    std::mt19937_64 rng(uniform.seed);
    const std::uint64_t span =
        static_cast<std::uint64_t>(uniform.p_max - uniform.p_min) + 1;
    std::vector<UserSequence> users;
    for (int r = 0; r < uniform.users; ++r) {
        const int count = uniform.jobs_per_user[static_cast<std::size_t>(r)];
        if (count < 1) throw InputError("generator: every user needs at least one job");
        UserSequence seq;
        for (int i = 0; i < count; ++i) {
            Job job;
            job.processing_time = uniform.p_min + static_cast<Time>(rng() % span);
            seq.jobs.push_back(job);
        }
        users.push_back(std::move(seq));
    }
    return ProblemInstance(uniform.machines, std::move(users));
}

std::string serialize_schedule(const Schedule& schedule, const std::string& algorithm) {
    json root = schedule_to_json(schedule);
    root["version"] = 1;
    root["algorithm"] = algorithm;
    return dump(root);
}

NamedSchedule parse_schedule(const std::string& text) {
    const json root = parse_text(text, "schedule");
    const std::string path = "schedule";
    if (!root.is_object()) fail_at(path, "must be an object");
    check_keys(root, path,
               {"version", "algorithm", "instance", "assignments", "per_user_makespan",
                "overall_makespan"});
    const long long version = require_integer(require_field(root, path, "version"), path + ".version");
    if (version != 1) fail_at(path + ".version", "unsupported version " + std::to_string(version));

    NamedSchedule named;
    const json& algorithm = require_field(root, path, "algorithm");
    if (!algorithm.is_string()) fail_at(path + ".algorithm", "must be a string");
    named.algorithm = algorithm.get<std::string>();

    const auto instance = std::make_shared<const ProblemInstance>(
        instance_from_json(require_field(root, path, "instance"), path + ".instance"));

    const json& assignments = require_field(root, path, "assignments");
    if (!assignments.is_array()) fail_at(path + ".assignments", "must be an array");

    std::vector<Assignment> parsed;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        const std::string apath = path + ".assignments[" + std::to_string(i) + "]";
        const json& entry = assignments[i];
        if (!entry.is_object()) fail_at(apath, "must be an object");
        check_keys(entry, apath, {"user", "index", "machine", "start", "completion", "round"});

        Assignment a;
        const int user = static_cast<int>(require_integer(require_field(entry, apath, "user"),
                                                          apath + ".user"));
        const int index = static_cast<int>(require_integer(require_field(entry, apath, "index"),
                                                           apath + ".index"));
        try {
            a.job = instance->job(user, index);
        } catch (const InputError& e) {
            fail_at(apath, e.what());
        }
        a.machine = static_cast<int>(require_integer(require_field(entry, apath, "machine"),
                                                     apath + ".machine"));
        a.start_time = require_integer(require_field(entry, apath, "start"), apath + ".start");
        a.completion_time =
            require_integer(require_field(entry, apath, "completion"), apath + ".completion");
        a.decided_in_round =
            static_cast<int>(require_integer(require_field(entry, apath, "round"), apath + ".round"));
        parsed.push_back(std::move(a));
    }

    named.schedule = make_schedule(instance, std::move(parsed));

    const json& makespans = require_field(root, path, "per_user_makespan");
    if (!makespans.is_array()) fail_at(path + ".per_user_makespan", "must be an array");
    std::map<int, Time> stored;
    for (std::size_t i = 0; i < makespans.size(); ++i) {
        const std::string mpath = path + ".per_user_makespan[" + std::to_string(i) + "]";
        const json& entry = makespans[i];
        if (!entry.is_object()) fail_at(mpath, "must be an object");
        check_keys(entry, mpath, {"user", "makespan"});
        const int user = static_cast<int>(require_integer(require_field(entry, mpath, "user"),
                                                          mpath + ".user"));
        stored[user] = require_integer(require_field(entry, mpath, "makespan"), mpath + ".makespan");
    }
    if (stored != named.schedule.per_user_makespan)
        fail_at(path + ".per_user_makespan", "stored makespans disagree with the assignments");
    const Time overall = require_integer(require_field(root, path, "overall_makespan"),
                                         path + ".overall_makespan");
    if (overall != named.schedule.overall_makespan)
        fail_at(path + ".overall_makespan", "stored value disagrees with the assignments");

    const ValidationResult check = validate_schedule(named.schedule);
    if (!check.ok) {
        std::string joined;
        for (const std::string& violation : check.violations) {
            if (!joined.empty()) joined += "; ";
            joined += violation;
        }
        fail_at(path, "invalid schedule: " + joined);
    }
    return named;
}

std::vector<Placement> parse_assignment_script(const std::string& text) {
    const json root = parse_text(text, "script");
    const std::string path = "script";
    if (!root.is_array()) fail_at(path, "must be an array of {user, index, machine}");
    std::vector<Placement> placements;
    for (std::size_t i = 0; i < root.size(); ++i) {
        const std::string epath = path + "[" + std::to_string(i) + "]";
        const json& entry = root[i];
        if (!entry.is_object()) fail_at(epath, "must be an object");
        check_keys(entry, epath, {"user", "index", "machine"});
        Placement p;
        p.user_id = static_cast<int>(require_integer(require_field(entry, epath, "user"),
                                                     epath + ".user"));
        p.index_in_user = static_cast<int>(require_integer(require_field(entry, epath, "index"),
                                                           epath + ".index"));
        p.machine = static_cast<int>(require_integer(require_field(entry, epath, "machine"),
                                                     epath + ".machine"));
        placements.push_back(p);
    }
    return placements;
}

std::unique_ptr<OnlineAlgorithm> make_algorithm(const std::string& name) {
    if (name == "greedy") return greedy_least_loaded();
    if (name == "rr-user") return round_robin_user();
    if (name == "dedicated") return dedicated_machines();
    if (name.rfind("scripted:", 0) == 0) {
        const std::string filename = name.substr(9);
        std::ifstream in(filename);
        if (!in) throw InputError("cannot open script file '" + filename + "'");
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return scripted_algorithm(parse_assignment_script(buffer.str()));
    }
    throw InputError("unknown algorithm '" + name +
                     "'; valid: greedy, rr-user, dedicated, scripted:<file>");
}

InstanceSummary summarize(const ProblemInstance& instance) {
    return {instance.machine_count(), instance.user_count(), instance.total_jobs()};
}

namespace {

void put_metric(json& object, const std::string& key, const Rat& value) {
    object[key] = decimal_string(value, 4);
    object[key + "_exact"] = fraction_string(value);
}

}  // namespace

std::string report_to_json(const FairnessReport& report, const std::string& algorithm,
                           const InstanceSummary& summary) {
    json per_user = json::array();
    for (const auto& [user, outcome] : report.outcomes) {
        json row;
        row["user"] = user;
        row["achieved"] = fraction_string(outcome.achieved);
        row["optimum"] = fraction_string(outcome.optimum);
        put_metric(row, "rf", report.fairness_index.relative.at(user));
        row["rfp"] = decimal_string(report.rf_percent.at(user), 4);
        put_metric(row, "udi", report.discrimination_index.udi.at(user));
        put_metric(row, "rdi", report.discrimination_index.rdi.at(user));
        put_metric(row, "stretch", report.stretch_per_user.at(user));
        per_user.push_back(std::move(row));
    }

    json global;
    put_metric(global, "gf", report.fairness_index.global);
    global["gfp"] = decimal_string(report.gf_percent, 4);
    put_metric(global, "gdi", report.discrimination_index.gdi);
    put_metric(global, "fairness_level", report.fairness_level);
    global["absolute_fair"] = report.absolute_fair;
    put_metric(global, "jain_index", report.jain);

    const json root{{"version", 1},
                    {"algorithm", algorithm},
                    {"objective", objective_name(report.objective)},
                    {"instance",
                     json{{"machine_count", summary.machine_count},
                          {"users", summary.users},
                          {"total_jobs", summary.total_jobs}}},
                    {"per_user", std::move(per_user)},
                    {"global", std::move(global)}};
    return dump(root);
}

std::string report_to_csv(const FairnessReport& report) {
    std::ostringstream out;
    out << "user,achieved,optimum,rf,rf_exact,rfp,udi,udi_exact,rdi,rdi_exact,stretch,"
           "stretch_exact\n";
    for (const auto& [user, outcome] : report.outcomes) {
        const Rat& rf = report.fairness_index.relative.at(user);
        const Rat& udi = report.discrimination_index.udi.at(user);
        const Rat& rdi = report.discrimination_index.rdi.at(user);
        const Rat& st = report.stretch_per_user.at(user);
        out << user << ',' << fraction_string(outcome.achieved) << ','
            << fraction_string(outcome.optimum) << ',' << decimal_string(rf, 4) << ','
            << fraction_string(rf) << ',' << decimal_string(report.rf_percent.at(user), 4) << ','
            << decimal_string(udi, 4) << ',' << fraction_string(udi) << ','
            << decimal_string(rdi, 4) << ',' << fraction_string(rdi) << ','
            << decimal_string(st, 4) << ',' << fraction_string(st) << '\n';
    }
    return out.str();
}

namespace {

json verdict_to_json_object(const VerificationVerdict& verdict) {
    json root;
    root["claim"] = verdict.claim;
    if (verdict.family) {
        json family{{"k", verdict.family->users},
                    {"m", verdict.family->machines},
                    {"x", verdict.family->job_length},
                    {"y", verdict.family->jobs_per_user}};
        if (verdict.family->users_multiple_of_machines())
            family["b"] = verdict.family->users_per_machine();
        root["family"] = std::move(family);
    }
    root["instances_checked"] = verdict.instances_checked;
    root["holds"] = verdict.holds;
    root["assumptions"] = verdict.assumptions;

    json stats;
    stats["evaluated_schedules"] = verdict.evaluated_schedules;
    if (verdict.max_user_makespan) stats["max_user_makespan"] = *verdict.max_user_makespan;
    if (verdict.min_rf) {
        stats["min_rf"] = fraction_string(*verdict.min_rf);
        stats["min_rf_dec"] = decimal_string(*verdict.min_rf, 4);
    }
    if (verdict.min_rf_exact_oracle) {
        stats["min_rf_exact_oracle"] = fraction_string(*verdict.min_rf_exact_oracle);
        stats["min_rf_exact_oracle_dec"] = decimal_string(*verdict.min_rf_exact_oracle, 4);
    }
    root["stats"] = std::move(stats);

    if (verdict.witness) root["witness"] = schedule_to_json(*verdict.witness);
    return root;
}

}  // namespace

std::string verdict_to_json(const VerificationVerdict& verdict) {
    return dump(verdict_to_json_object(verdict));
}

std::string verdicts_to_json(const std::vector<VerificationVerdict>& verdicts) {
    json array = json::array();
    for (const VerificationVerdict& verdict : verdicts)
        array.push_back(verdict_to_json_object(verdict));
    return dump(array);
}

}  // namespace fairsched
