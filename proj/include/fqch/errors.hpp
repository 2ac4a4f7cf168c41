#pragma once

#include <stdexcept>
#include <string>

namespace fqch {

// Bad user-facing configuration (CLI maps this to exit code 2).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A solve failed mid-run (CLI maps this to exit code 3).
class solver_error : public std::runtime_error {
public:
    solver_error(const std::string& what, int time_index, double residual)
        : std::runtime_error(what), time_index(time_index), residual(residual) {}
    int time_index = -1;
    double residual = 0.0;
};

// An enabled run-time check failed (CLI maps this to exit code 4).
class check_failure : public std::runtime_error {
public:
    explicit check_failure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fqch
