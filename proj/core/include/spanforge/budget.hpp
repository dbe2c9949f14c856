#ifndef SPANFORGE_BUDGET_HPP
#define SPANFORGE_BUDGET_HPP

#include <cstdint>
#include <string>

#include "spanforge/errors.hpp"

namespace spanforge {

/// Cap on candidate spans a single query may enumerate. Budget decisions are
/// made from exact predicted counts before enumeration starts, so the outcome
/// is deterministic and never a silent partial answer.
struct SearchBudget {
    std::uint64_t max_candidates = 1'000'000;

    void require(std::uint64_t predicted, const char* what) const {
        if (predicted > max_candidates) {
            raise(ErrorCode::BudgetExceeded,
                  std::string(what) + " would enumerate " + std::to_string(predicted) +
                      " candidates (budget " + std::to_string(max_candidates) + ")");
        }
    }
};

} // namespace spanforge

#endif
