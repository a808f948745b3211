#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hesc {

// Invalid argument or out-of-domain input.  CLI maps this to exit code 2.
class DomainError : public std::invalid_argument {
public:
    DomainError(std::string field, const std::string& what)
        : std::invalid_argument(what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// A series or quadrature failed to reach the requested tolerance.
// CLI maps this to exit code 3.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, int modes_used, double tail_estimate)
        : std::runtime_error(what), modes_used_(modes_used), tail_(tail_estimate) {}

    int modes_used() const noexcept { return modes_used_; }
    double tail_estimate() const noexcept { return tail_; }

private:
    int modes_used_;
    double tail_;
};

}  // namespace hesc
