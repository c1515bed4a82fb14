#pragma once

#include <stdexcept>
#include <string>

namespace qtor {

// Malformed or inconsistent input data. The CLI maps this to exit code 1.
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// A configured size bound would be exceeded. The CLI maps this to exit code 2.
struct size_limit_error : std::runtime_error {
    explicit size_limit_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qtor
