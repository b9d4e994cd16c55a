#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "volrat/error.hpp"
#include "volrat/spectrum.hpp"

namespace volrat {

/// Spectrum files are JSON with the field names of the run-length encoded
/// spectrum, e.g.
///   { "n": 16, "singular_values": [ { "value": 1.0, "count": 8 } ] }
/// Values must be strictly increasing, counts positive, total count < n.
inline spectrum parse_spectrum_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw usage_error(std::string("spectrum file: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("singular_values"))
        throw usage_error("spectrum file: expected fields n and singular_values");
    if (!j["n"].is_number_integer())
        throw usage_error("spectrum file: n must be an integer");
    const int n = j["n"].get<int>();
    if (!j["singular_values"].is_array() || j["singular_values"].empty())
        throw usage_error("spectrum file: singular_values must be a nonempty array");
    std::vector<spectrum_entry> entries;
    for (const auto& e : j["singular_values"]) {
        if (!e.is_object() || !e.contains("value") || !e.contains("count"))
            throw usage_error("spectrum file: each entry needs value and count");
        if (!e["value"].is_number() || !e["count"].is_number_integer())
            throw usage_error("spectrum file: value must be a number, count an integer");
        entries.push_back({e["value"].get<double>(), e["count"].get<std::int64_t>()});
    }
    return spectrum(std::move(entries), n); // ordering and fullness checks live there
}

inline spectrum load_spectrum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open spectrum file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_spectrum_json(text);
}

inline std::string spectrum_to_json(const spectrum& s) {
    nlohmann::json j;
    j["n"] = s.ambient_n();
    j["singular_values"] = nlohmann::json::array();
    for (const auto& e : s.entries())
        j["singular_values"].push_back({{"value", e.value}, {"count", e.count}});
    return j.dump(2) + "\n";
}

} // namespace volrat
