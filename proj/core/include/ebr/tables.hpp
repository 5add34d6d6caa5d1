#pragma once

#include <string>

#include "json.hpp"

namespace ebr {

// Environment variable naming a replacement for the bundled tables file.
inline constexpr const char* kTablesEnv = "EBR_TABLES";

// The bundled tables, or the file named by EBR_TABLES. Parsed once.
const nlohmann::json& default_tables();
const std::string& bundled_tables_text();
nlohmann::json load_tables(const std::string& path);
std::string tables_version(const nlohmann::json& tables);

}  // namespace ebr
