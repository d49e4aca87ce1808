#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gns {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

struct ShapeError : Error {
    using Error::Error;
};

struct GridMismatchError : Error {
    using Error::Error;
};

/// Spectral data that no longer represents a real field.
struct CorruptedFieldError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

/// Picard iteration did not reach tolerance; carries the observed deltas.
struct NonConvergenceError : Error {
    NonConvergenceError(const std::string& what, std::vector<double> history)
        : Error(what), delta_history(std::move(history)) {}
    std::vector<double> delta_history;
};

struct BlowUpError : Error {
    BlowUpError(const std::string& what, double t, double norm)
        : Error(what), time(t), norm_value(norm) {}
    double time;
    double norm_value;
};

/// Radius fit could not be carried out; carries the shell data it saw.
struct InconclusiveFitError : Error {
    InconclusiveFitError(const std::string& what, std::vector<double> k, std::vector<double> v)
        : Error(what), shell_k(std::move(k)), shell_values(std::move(v)) {}
    std::vector<double> shell_k;
    std::vector<double> shell_values;
};

/// All violations found while validating a configuration, not just the first.
struct ConfigError : Error {
    explicit ConfigError(std::vector<std::string> v)
        : Error(join(v)), violations(std::move(v)) {}
    std::vector<std::string> violations;

  private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "invalid configuration:";
        for (const auto& s : v) out += "\n  " + s;
        return out;
    }
};

}  // namespace gns
