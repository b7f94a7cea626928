#pragma once

#include <string>
#include <vector>

namespace scalelimit {

struct KeyValue {
    std::string key;
    std::string value;
    int line;
};

// "key = value" lines; '#' starts a comment; blank lines ignored.
std::vector<KeyValue> parse_key_values(const std::string& text);

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);

} // namespace scalelimit
