#pragma once

#include <string>

namespace gibbslen {

// 17 significant digits: enough to round-trip any double exactly.
std::string fmt17(double v);

}  // namespace gibbslen
