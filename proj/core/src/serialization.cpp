#include "advicelab/serialization.hpp"

#include <cmath>

#include <json.hpp>

namespace adv::io {

using nlohmann::json;

std::string to_json(const games::CostMatrix& m) {
    json rows = json::array();
    for (int x = 0; x < m.q; ++x) {
        json row = json::array();
        for (int y = 0; y < m.q; ++y) row.push_back(m.at(x, y));
        rows.push_back(row);
    }
    return json{{"q", m.q}, {"rows", rows}}.dump();
}

games::CostMatrix cost_matrix_from_json(const std::string& text) {
    json j = json::parse(text);
    std::vector<std::vector<double>> rows;
    for (const auto& row : j.at("rows")) rows.push_back(row.get<std::vector<double>>());
    auto m = games::CostMatrix::from_rows(rows);
    if (j.contains("q") && j.at("q").get<int>() != m.q)
        throw std::invalid_argument("cost matrix: q does not match the rows");
    return m;
}

std::string to_json(const tasksys::TaskSystem& ts) {
    json tasks = json::array();
    for (const auto& t : ts.tasks) {
        json row = json::array();
        for (double v : t) {
            if (std::isinf(v))
                row.push_back("inf");
            else
                row.push_back(v);
        }
        tasks.push_back(row);
    }
    json dist = json::array();
    for (int s = 0; s < ts.num_states; ++s) {
        json row = json::array();
        for (int s2 = 0; s2 < ts.num_states; ++s2) row.push_back(ts.d(s, s2));
        dist.push_back(row);
    }
    return json{{"name", ts.name}, {"states", ts.num_states}, {"tasks", tasks}, {"dist", dist}}
        .dump();
}

tasksys::TaskSystem task_system_from_json(const std::string& text) {
    json j = json::parse(text);
    tasksys::TaskSystem ts;
    ts.name = j.value("name", "task_system");
    ts.num_states = j.at("states").get<int>();
    for (const auto& row : j.at("tasks")) {
        tasksys::Task t;
        for (const auto& v : row) {
            if (v.is_string()) {
                if (v.get<std::string>() != "inf")
                    throw std::invalid_argument("task system: bad task cost sentinel");
                t.push_back(tasksys::kInf);
            } else {
                t.push_back(v.get<double>());
            }
        }
        ts.tasks.push_back(std::move(t));
    }
    for (const auto& row : j.at("dist"))
        for (const auto& v : row) ts.dist.push_back(v.get<double>());
    ts.validate();
    return ts;
}

std::string to_json(const InputSequence& input, const std::string& problem_name) {
    json j{{"problem", problem_name},
           {"initial_state", input.initial_state},
           {"requests", input.requests}};
    if (!input.round_starts.empty()) j["round_starts"] = input.round_starts;
    return j.dump();
}

InputSequence input_from_json(const std::string& text, std::string* problem_name) {
    json j = json::parse(text);
    InputSequence in;
    in.initial_state = j.value("initial_state", 0);
    in.requests = j.at("requests").get<std::vector<Token>>();
    if (j.contains("round_starts"))
        in.round_starts = j.at("round_starts").get<std::vector<std::size_t>>();
    if (problem_name) *problem_name = j.value("problem", "");
    return in;
}

std::string to_json(const DecisionTable& table) {
    json entries = json::array();
    for (const auto& [key, answer] : table.entries)
        entries.push_back(json::array({json(key), json(answer)}));
    return json{{"entries", entries}}.dump();
}

DecisionTable decision_table_from_json(const std::string& text) {
    json j = json::parse(text);
    DecisionTable table;
    for (const auto& pair : j.at("entries"))
        table.entries[pair.at(0).get<std::vector<Token>>()] = pair.at(1).get<Token>();
    return table;
}

std::string to_json(const guessing::GuessInstance& instance) {
    const char* variant = instance.variant == guessing::Variant::sgkh   ? "sgkh"
                          : instance.variant == guessing::Variant::anti ? "anti"
                                                                        : "bsg";
    json j{{"variant", variant}, {"q", instance.q}, {"x", instance.x}};
    if (instance.variant == guessing::Variant::bsg) {
        j["s"] = instance.s;
        j["t"] = instance.t;
    }
    return j.dump();
}

guessing::GuessInstance guess_instance_from_json(const std::string& text) {
    json j = json::parse(text);
    guessing::GuessInstance inst;
    std::string variant = j.at("variant").get<std::string>();
    if (variant == "sgkh")
        inst.variant = guessing::Variant::sgkh;
    else if (variant == "anti")
        inst.variant = guessing::Variant::anti;
    else if (variant == "bsg")
        inst.variant = guessing::Variant::bsg;
    else
        throw std::invalid_argument("guess instance: unknown variant '" + variant + "'");
    inst.q = j.at("q").get<int>();
    inst.x = j.at("x").get<std::vector<Token>>();
    inst.s = j.value("s", 1.0);
    inst.t = j.value("t", 1.0);
    inst.validate();
    return inst;
}

std::string to_json(const hsgg::HSGGInstance& instance) {
    return json{{"n", instance.n}, {"k", instance.k}, {"sets", instance.sets}, {"x", instance.x}}
        .dump();
}

hsgg::HSGGInstance hsgg_instance_from_json(const std::string& text) {
    json j = json::parse(text);
    hsgg::HSGGInstance inst;
    inst.n = j.at("n").get<int>();
    inst.k = j.at("k").get<int>();
    inst.sets = j.at("sets").get<std::vector<std::vector<int>>>();
    inst.x = j.at("x").get<std::vector<int>>();
    inst.validate();
    return inst;
}

std::string to_json(const oracle::CertifyReport& report) {
    json rows = json::array();
    for (const auto& row : report.rows)
        rows.push_back(json{{"b", row.b},
                            {"bound", row.bound},
                            {"brute_force", row.brute_force},
                            {"slack", row.slack},
                            {"sound", row.sound}});
    return json{{"formula", report.formula_id},
                {"problem", report.problem},
                {"rows", rows},
                {"all_sound", report.all_sound}}
        .dump(2);
}

std::string to_json(const red::BinPackReductionInstance& instance) {
    json items = json::array();
    for (const auto& r : instance.items) items.push_back(r.to_string());
    return json{{"x", instance.x},
                {"eps", instance.eps.to_string()},
                {"items", items},
                {"phase1", instance.phase1},
                {"phase2", instance.phase2},
                {"opt", instance.n()}}
        .dump(2);
}

std::string to_json(const red::PagingReductionInstance& instance) {
    return json{{"k", instance.k}, {"x", instance.x}, {"pages", instance.pages}}.dump(2);
}

std::string to_json(const games::GameSolution& solution) {
    return json{{"value", solution.value},
                {"row_strategy", solution.row_strategy.masses()},
                {"col_strategy", solution.col_strategy.masses()},
                {"row_residual", solution.row_residual},
                {"col_residual", solution.col_residual}}
        .dump(2);
}

} // namespace adv::io
