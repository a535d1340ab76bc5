#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cupsim::csv {

// Splits one CSV record. Handles double-quoted fields with "" escapes.
std::vector<std::string> split_record(std::string_view line);

// Quotes a field only when it contains a separator, quote or newline.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

// Shortest round-trippable decimal form of a double ("%.17g" trimmed).
std::string format_double(double value);

}  // namespace cupsim::csv
