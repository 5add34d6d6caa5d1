#include "ebr/tables.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ebr_tables_data.hpp"

namespace ebr {

const std::string& bundled_tables_text() {
    static const std::string text = embedded::tables_json;
    return text;
}

nlohmann::json load_tables(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tables file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return nlohmann::json::parse(ss.str());
}

const nlohmann::json& default_tables() {
    static const nlohmann::json tables = [] {
        if (const char* p = std::getenv(kTablesEnv); p && *p) return load_tables(p);
        return nlohmann::json::parse(bundled_tables_text());
    }();
    return tables;
}

std::string tables_version(const nlohmann::json& tables) {
    return tables.value("tables_version", std::string("unversioned"));
}

}  // namespace ebr
