#pragma once

#include <stdexcept>
#include <string>

namespace cgfl {

// Malformed or inconsistent input (files, flags, preconditions on data).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Non-finite losses, collapsed generators, exhausted resampling budgets.
class TrainingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Degenerate metric inputs (empty version sets, all-zero differences).
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cgfl
