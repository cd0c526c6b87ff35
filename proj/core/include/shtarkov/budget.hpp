#pragma once

#include <cstdint>

namespace shtarkov {

// Enumeration budgets keep brute-force engines at desk scale. The default
// is 1e8 items per call; the SHTARKOV_BUDGET environment variable
// overrides it process-wide.
std::int64_t default_budget();

// Throws BudgetExceeded when predicted > budget (budget <= 0 means the
// process default).
void require_budget(double predicted_items, std::int64_t budget,
                    const char* what);

}  // namespace shtarkov
