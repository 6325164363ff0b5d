#pragma once

#include <stdexcept>
#include <string>

namespace torsionkit {

// Violation of an operation's precondition or of a type invariant on input
// data.  The CLI maps these to exit code 1.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Violation of an internal contract that validated inputs should never be
// able to trigger.  The CLI maps these to exit code 2.
struct contract_error : std::runtime_error {
    explicit contract_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A candidate contraction still fails dδ + δd = id after correction; this
// signals an invalid equivalence pack.
struct contraction_failure : contract_error {
    explicit contraction_failure(const std::string& msg) : contract_error(msg) {}
};

struct trivial_group_error : input_error {
    explicit trivial_group_error(const std::string& msg) : input_error(msg) {}
};

struct non_nilpotent_error : input_error {
    explicit non_nilpotent_error(const std::string& msg) : input_error(msg) {}
};

struct non_unipotent_homotopy_error : input_error {
    explicit non_unipotent_homotopy_error(const std::string& msg) : input_error(msg) {}
};

struct unsupported_error : input_error {
    explicit unsupported_error(const std::string& msg) : input_error(msg) {}
};

}  // namespace torsionkit
