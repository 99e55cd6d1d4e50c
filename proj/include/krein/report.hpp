#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "krein/workflow.hpp"

namespace krein {

/// %.17g, with a decimal point forced so integers-valued doubles stay floats.
/// Non-finite values become "null" in JSON and "nan"/"inf" in CSV.
std::string format_double(double x);

/// Serializes with stable key order, two-space indentation and 17 significant
/// digits for every floating-point value.
std::string to_deterministic_json(const nlohmann::ordered_json& j);

void write_text(const std::filesystem::path& path, const std::string& text);

/// Writes <prefix><table.suffix> for each table.
void write_csv_tables(const std::string& prefix, const std::vector<CsvTable>& tables);

}  // namespace krein
