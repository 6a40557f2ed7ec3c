#pragma once

#include <string>

namespace kts {

// Current UTC time as ISO-8601, e.g. "2025-03-14T09:26:53Z".
std::string iso8601_now();

}  // namespace kts
