#pragma once

#include <stdexcept>
#include <string>

namespace kh {

// Bad user input: malformed PD text, unknown fixture, bad arguments.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid input that cannot be oriented/composed/closed.
struct orientation_error : std::runtime_error {
    explicit orientation_error(const std::string& what) : std::runtime_error(what) {}
};

// Crossing count exceeds the configured cap.
struct cap_error : std::runtime_error {
    explicit cap_error(const std::string& what) : std::runtime_error(what) {}
};

// d*d != 0 or an oracle disagreement: a bug, not a user error.
struct consistency_error : std::logic_error {
    explicit consistency_error(const std::string& what) : std::logic_error(what) {}
};

}
