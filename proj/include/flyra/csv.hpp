#pragma once

#include <string>
#include <vector>

namespace flyra::csv {

/// Formats a float with 9 significant digits for golden-file stability.
std::string num(double v);

std::vector<std::string> split(const std::string& line, char delim = ',');

} // namespace flyra::csv
