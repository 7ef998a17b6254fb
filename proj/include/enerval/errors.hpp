#pragma once

#include <stdexcept>
#include <string>

namespace enerval {

// Error taxonomy. ConfigError / DataError / InternalError map onto the CLI
// exit codes 2 / 3 / 4; everything else derives from one of them.

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

struct DataError : Error {
    explicit DataError(const std::string& msg) : Error(msg) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error(msg) {}
};

struct GridError : DataError {
    explicit GridError(const std::string& msg) : DataError(msg) {}
};

struct DuplicateError : DataError {
    explicit DuplicateError(const std::string& msg) : DataError(msg) {}
};

struct EmptyInputError : DataError {
    explicit EmptyInputError(const std::string& msg) : DataError(msg) {}
};

struct SchemaError : DataError {
    explicit SchemaError(const std::string& msg) : DataError(msg) {}
};

struct IoError : DataError {
    explicit IoError(const std::string& msg) : DataError(msg) {}
};

struct ZeroDenominator : DataError {
    explicit ZeroDenominator(const std::string& msg) : DataError(msg) {}
};

struct EmptyInput : DataError {
    explicit EmptyInput(const std::string& msg) : DataError(msg) {}
};

struct AllMissing : DataError {
    explicit AllMissing(const std::string& msg) : DataError(msg) {}
};

struct InsufficientData : DataError {
    explicit InsufficientData(const std::string& msg) : DataError(msg) {}
};

struct DegenerateInput : DataError {
    explicit DegenerateInput(const std::string& msg) : DataError(msg) {}
};

struct WeightingInfeasible : DataError {
    explicit WeightingInfeasible(const std::string& msg) : DataError(msg) {}
};

}  // namespace enerval
