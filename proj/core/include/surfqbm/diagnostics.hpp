#pragma once

#include <functional>
#include <string>

namespace surfqbm {

// Non-fatal warnings (validity assumptions, positivity caveats). The default
// handler writes to stderr; tests and the CLI may install their own.
using WarningHandler = std::function<void(const std::string&)>;

WarningHandler set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

}  // namespace surfqbm
