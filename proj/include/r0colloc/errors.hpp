#pragma once

#include <stdexcept>
#include <string>

namespace r0colloc {

/// Raised when a computation fails for numerical rather than input reasons:
/// a singular or ill-conditioned mortality matrix, eigensolver breakdown,
/// or a non-finite coefficient at a retained node.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what, double condition_estimate = 0.0)
        : std::runtime_error(what), condition_estimate_(condition_estimate) {}

    /// 1-norm condition estimate of the offending matrix, 0 when not applicable.
    double condition_estimate() const noexcept { return condition_estimate_; }

private:
    double condition_estimate_;
};

}  // namespace r0colloc
