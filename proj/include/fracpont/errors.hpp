#pragma once

#include <stdexcept>
#include <string>

namespace fracpont {

// Thrown when an iterative scheme (series summation, Picard iteration) runs out
// of its iteration budget. Carries the last residual so callers can report it.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, double last_residual)
        : std::runtime_error(what), last_residual_(last_residual) {}

    double last_residual() const { return last_residual_; }

private:
    double last_residual_;
};

} // namespace fracpont
