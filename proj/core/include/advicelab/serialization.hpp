#pragma once

#include <string>

#include "advicelab/algorithm.hpp"
#include "advicelab/games.hpp"
#include "advicelab/guessing.hpp"
#include "advicelab/hsgg.hpp"
#include "advicelab/oracle.hpp"
#include "advicelab/problem.hpp"
#include "advicelab/reductions.hpp"
#include "advicelab/tasksystems.hpp"

namespace adv::io {

// JSON document formats. Matrices: {"q": int, "rows": [[...], ...]}.
// Task systems: {"states": int, "tasks": [[cost-or-"inf", ...], ...],
// "dist": [[...], ...]}. Inputs: {"problem": name, "initial_state": token,
// "requests": [...]}. Rationals are "p/q" strings.

std::string to_json(const games::CostMatrix& m);
games::CostMatrix cost_matrix_from_json(const std::string& text);

std::string to_json(const tasksys::TaskSystem& ts);
tasksys::TaskSystem task_system_from_json(const std::string& text);

std::string to_json(const InputSequence& input, const std::string& problem_name);
InputSequence input_from_json(const std::string& text, std::string* problem_name = nullptr);

std::string to_json(const DecisionTable& table);
DecisionTable decision_table_from_json(const std::string& text);

std::string to_json(const guessing::GuessInstance& instance);
guessing::GuessInstance guess_instance_from_json(const std::string& text);

std::string to_json(const hsgg::HSGGInstance& instance);
hsgg::HSGGInstance hsgg_instance_from_json(const std::string& text);

std::string to_json(const oracle::CertifyReport& report);

std::string to_json(const red::BinPackReductionInstance& instance);
std::string to_json(const red::PagingReductionInstance& instance);

std::string to_json(const games::GameSolution& solution);

} // namespace adv::io
