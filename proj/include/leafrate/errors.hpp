#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace leafrate {

// Malformed combinatorial input (cycles, disconnected graphs, bad level
// sequences).
struct structural_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller violated an operation precondition.
struct contract_error : std::logic_error {
    using std::logic_error::logic_error;
};

// A series evaluation cannot reach the requested tolerance with the
// available coefficient table.
struct insufficient_order_error : std::runtime_error {
    insufficient_order_error(const std::string& what, unsigned required)
        : std::runtime_error(what), required_order(required) {}
    unsigned required_order;
};

// Newton iteration failed to converge; carries the last residual.
struct convergence_error : std::runtime_error {
    convergence_error(const std::string& what, double residual_magnitude)
        : std::runtime_error(what), residual(residual_magnitude) {}
    double residual;
};

// Two independent computation routes disagree beyond tolerance.
struct consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An exhaustive enumeration exceeded its configured budget; carries the
// number of trees processed so far.
struct budget_error : std::runtime_error {
    budget_error(const std::string& what, std::uint64_t trees_processed)
        : std::runtime_error(what), processed(trees_processed) {}
    std::uint64_t processed;
};

// A persisted table file could not be parsed; carries the offending line.
struct cache_error : std::runtime_error {
    cache_error(const std::string& what, unsigned line_number)
        : std::runtime_error(what), line(line_number) {}
    unsigned line;
};

}  // namespace leafrate
