#pragma once

#include <string>

#include <json.hpp>

#include "nukc/core.hpp"
#include "nukc/greedy.hpp"
#include "nukc/pipeline.hpp"

namespace nukc {

using Json = nlohmann::ordered_json;

Instance instance_from_json(const Json& j);
Json instance_to_json(const Instance& instance);

Solution solution_from_json(const Json& j);
Json solution_to_json(const Solution& solution);
Json solution_to_json(const Solution& solution, const VerificationReport& report);

Json report_to_json(const VerificationReport& report);
Json ledger_to_json(const DilationLedger& ledger);
Json greedy_to_json(const GreedyOutput& output);

// Parse helpers that turn syntax and schema errors into InputError.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace nukc
