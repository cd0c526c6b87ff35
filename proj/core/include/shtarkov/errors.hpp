#pragma once

#include <stdexcept>
#include <string>

namespace shtarkov {

// Enumeration workload would exceed the configured item budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Envelope has a divergent total sum; redundancy bounds are infinite.
class NotSummable : public std::runtime_error {
 public:
  explicit NotSummable(const std::string& what) : std::runtime_error(what) {}
};

// Malformed envelope specification document.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace shtarkov
