#pragma once

#include <stdexcept>
#include <string>

namespace gtmm {

// Domain errors. The CLI maps these to exit code 1.
struct InvalidSpec : std::runtime_error {
    explicit InvalidSpec(const std::string& what) : std::runtime_error(what) {}
};

struct OrderCapExceeded : std::runtime_error {
    explicit OrderCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct AbelianGroupError : std::runtime_error {
    explicit AbelianGroupError(const std::string& what) : std::runtime_error(what) {}
};

struct DegreeValidationFailed : std::runtime_error {
    explicit DegreeValidationFailed(const std::string& what) : std::runtime_error(what) {}
};

struct InconsistentInput : std::runtime_error {
    explicit InconsistentInput(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gtmm
