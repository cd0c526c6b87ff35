#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shtarkov/check_report.hpp"

namespace shtarkov {

enum class VerifySuite { All, Preliminary, Poisson, Envelope };

/// Parses "all" | "preliminary" | "poisson" | "envelope"; throws
/// std::invalid_argument otherwise.
VerifySuite parse_suite(const std::string& name);

/// Runs the selected battery. Deterministic given seed.
std::vector<CheckReport> run_suite(VerifySuite suite, std::uint64_t seed);

}  // namespace shtarkov
