#pragma once

#include <map>
#include <string>

namespace scalelimit {

// Data files compiled into the library, keyed by file name.
const std::map<std::string, std::string>& embedded_files();

} // namespace scalelimit
