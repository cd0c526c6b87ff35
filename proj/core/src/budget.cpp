#include "shtarkov/budget.hpp"

#include <cstdlib>
#include <string>

#include "shtarkov/errors.hpp"

namespace shtarkov {

std::int64_t default_budget() {
  static const std::int64_t value = [] {
    if (const char* env = std::getenv("SHTARKOV_BUDGET")) {
      char* end = nullptr;
      long long parsed = std::strtoll(env, &end, 10);
      if (end != env && parsed > 0) return static_cast<std::int64_t>(parsed);
    }
    return static_cast<std::int64_t>(100'000'000);
  }();
  return value;
}

void require_budget(double predicted_items, std::int64_t budget,
                    const char* what) {
  std::int64_t limit = budget > 0 ? budget : default_budget();
  if (!(predicted_items <= static_cast<double>(limit)))
    throw BudgetExceeded(std::string(what) + ": " +
                         std::to_string(predicted_items) +
                         " items exceeds budget " + std::to_string(limit));
}

}  // namespace shtarkov
