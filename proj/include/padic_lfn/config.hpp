#pragma once

#include "padic_lfn/errors.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

namespace padic_lfn {

enum class output_format { json, tsv };

/// Truncations, caps and output settings shared by every subcommand.
struct run_config {
    int truncation = 64;                 // M
    std::int64_t prime_bound = 100'000;  // P
    std::int64_t series_length = 1'000'000;  // N
    double tolerance = 1e-9;
    std::size_t coset_cap = 1'000'000;
    std::size_t chunk_size = 1 << 16;
    unsigned threads = 1;
    output_format format = output_format::json;

    void validate() const {
        auto bad = [](const char* key, const std::string& why) {
            throw math_error(error_kind::invalid_argument, key, why);
        };
        if (truncation < 1) bad("truncation", "must be positive");
        if (prime_bound < 2) bad("prime_bound", "must be >= 2");
        if (series_length < 1) bad("series_length", "must be positive");
        if (!(tolerance > 0 && tolerance < 1)) bad("tolerance", "must lie in (0, 1)");
        if (coset_cap < 1) bad("coset_cap", "must be positive");
        if (chunk_size < 1) bad("chunk_size", "must be positive");
        if (threads < 1) bad("threads", "must be positive");
    }

    /// Apply one `key = value` setting; unknown keys are rejected.
    void set(const std::string& key, const std::string& value) {
        try {
            if (key == "truncation") truncation = std::stoi(value);
            else if (key == "prime_bound") prime_bound = std::stoll(value);
            else if (key == "series_length") series_length = std::stoll(value);
            else if (key == "tolerance") tolerance = std::stod(value);
            else if (key == "coset_cap") coset_cap = std::stoull(value);
            else if (key == "chunk_size") chunk_size = std::stoull(value);
            else if (key == "threads") threads = static_cast<unsigned>(std::stoul(value));
            else if (key == "format") format = parse_format(value);
            else throw math_error(error_kind::invalid_argument, key, "unknown configuration key");
        } catch (const std::logic_error&) {
            throw math_error(error_kind::invalid_argument, key, "cannot parse value '" + value + "'");
        }
    }

    static output_format parse_format(const std::string& s) {
        if (s == "json") return output_format::json;
        if (s == "tsv") return output_format::tsv;
        throw math_error(error_kind::invalid_argument, "format", "expected json or tsv, got '" + s + "'");
    }

    /// Reads `key = value` lines; '#' starts a comment.
    void load(std::istream& in) {
        std::string line;
        while (std::getline(in, line)) {
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            const auto eq = line.find('=');
            const std::string key = trim(line.substr(0, eq));
            if (key.empty()) continue;
            if (eq == std::string::npos)
                throw math_error(error_kind::invalid_argument, key, "expected key = value");
            set(key, trim(line.substr(eq + 1)));
        }
    }

    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw math_error(error_kind::invalid_argument, "config", "cannot open " + path);
        load(in);
    }

private:
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return {};
        return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
    }
};

}  // namespace padic_lfn
