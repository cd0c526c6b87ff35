#pragma once

#include <string>

#include "shtarkov/envelope.hpp"

namespace shtarkov {

/// Parses an envelope specification document:
///   {"kind": "power_law"|"exponential", "c": number, "alpha": number}
///   {"kind": "table", "values": [numbers],
///    "tail": {"kind": "zero"} |
///            {"kind": "geometric"|"power", "c": number, "alpha": number}}
/// Unknown fields are rejected. Throws ParseError.
Envelope parse_envelope_spec(const std::string& json_text);

/// Reads and parses the file at path. Throws ParseError on unreadable
/// files or malformed content.
Envelope load_envelope_spec(const std::string& path);

}  // namespace shtarkov
