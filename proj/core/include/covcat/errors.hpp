// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace covcat {

/// Raised when a decision procedure is called outside its domain. The
/// reason lets front ends map the failure to a distinct exit status.
class PreconditionError : public std::invalid_argument {
public:
    enum class Reason { NotConnected, NotCovering, NotGalois, NotFullyFaithful, NotFree, Mismatch };

    PreconditionError(Reason reason, const std::string& what) : std::invalid_argument(what), reason_(reason) {}

    [[nodiscard]] Reason reason() const { return reason_; }

private:
    Reason reason_;
};

}  // namespace covcat
