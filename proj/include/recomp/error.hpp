#pragma once

#include <stdexcept>
#include <string>

namespace recomp {

enum class ErrorClass { Config, Data, Infeasible };

/// Base for every error the library raises. The class maps onto the CLI
/// exit codes: 2 config, 3 data, 4 infeasible.
class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}

    ErrorClass error_class() const noexcept { return cls_; }

    int exit_code() const noexcept {
        switch (cls_) {
        case ErrorClass::Config: return 2;
        case ErrorClass::Data: return 3;
        case ErrorClass::Infeasible: return 4;
        }
        return 1;
    }

    const char* class_name() const noexcept {
        switch (cls_) {
        case ErrorClass::Config: return "config_error";
        case ErrorClass::Data: return "data_error";
        case ErrorClass::Infeasible: return "infeasible";
        }
        return "error";
    }

private:
    ErrorClass cls_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorClass::Config, what) {}
};

class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(ErrorClass::Data, what) {}
};

class InfeasibleError : public Error {
public:
    explicit InfeasibleError(const std::string& what, long long attempts = 0)
        : Error(ErrorClass::Infeasible, what), attempts_(attempts) {}

    long long attempts() const noexcept { return attempts_; }

private:
    long long attempts_;
};

}  // namespace recomp
