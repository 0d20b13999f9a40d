#pragma once

// JSON/TSV rendering for the CLI. Complex values are [re, im], rationals are
// "num/den" strings and big integers are decimal strings, so nothing is lost
// in transit.

#include "padic_lfn.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace padic_lfn::report {

using json = nlohmann::ordered_json;

inline json complex_json(complex_value z) { return json::array({z.real(), z.imag()}); }

inline json series_json(const series_result& r) {
    return json{{"value", complex_json(r.value)},
                {"remainder_bound", r.remainder_bound},
                {"terms_used", r.terms_used},
                {"method", r.method}};
}

inline json check_json(const check_result& c) {
    json j{{"id", c.id},          {"name", c.name},         {"passed", c.passed()},
           {"checks", c.checks},  {"failures", c.failures}, {"worst_ratio", c.worst}};
    if (!c.first_failure.empty()) j["first_failure"] = c.first_failure;
    return j;
}

inline json error_json(const math_error& e) {
    return json{{"error", {{"kind", to_string(e.kind())}, {"parameter", e.parameter()}, {"message", e.what()}}}};
}

namespace detail {

inline void flatten(const json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
    } else {
        out << prefix << '\t' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

}  // namespace detail

/// One `path<TAB>value` line per leaf, paths joined with '.'.
inline std::string to_tsv(const json& j) {
    std::ostringstream out;
    detail::flatten(j, "", out);
    return out.str();
}

inline std::string render(const json& j, output_format fmt) {
    return fmt == output_format::json ? j.dump(2) + "\n" : to_tsv(j);
}

}  // namespace padic_lfn::report
