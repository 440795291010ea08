#ifndef CYCSTAT_ERRORS_HPP
#define CYCSTAT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace cycstat {

// Error classes map 1:1 onto CLI exit codes: usage/config -> 1,
// I/O and file format -> 2, numeric/data -> 3.

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : UsageError {
    std::vector<std::string> violations;
    explicit ConfigError(std::vector<std::string> v)
        : UsageError(join(v)), violations(std::move(v)) {}

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "invalid config:";
        for (const auto& e : v) {
            s += " [" + e + "]";
        }
        return s;
    }
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FormatError : IoError {
    explicit FormatError(const std::string& msg) : IoError(msg) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoFeatureError : DataError {
    explicit NoFeatureError(const std::string& msg) : DataError(msg) {}
};

} // namespace cycstat

#endif
