#include "scalelimit/kvfile.hpp"

#include <sstream>

#include "scalelimit/errors.hpp"

namespace scalelimit {

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

std::vector<KeyValue> parse_key_values(const std::string& text) {
    std::vector<KeyValue> out;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InputError("line " + std::to_string(no) + ": expected 'key = value'");
        KeyValue kv{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), no};
        if (kv.key.empty()) throw InputError("line " + std::to_string(no) + ": empty key");
        for (const auto& prev : out)
            if (prev.key == kv.key) throw InputError("line " + std::to_string(no) + ": duplicate key '" + kv.key + "'");
        out.push_back(std::move(kv));
    }
    return out;
}

} // namespace scalelimit
