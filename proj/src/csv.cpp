#include "flyra/csv.hpp"

#include <cstdio>
#include <sstream>

namespace flyra::csv {

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::vector<std::string> split(const std::string& line, char delim)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, delim)) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == delim) {
        out.emplace_back();
    }
    return out;
}

} // namespace flyra::csv
