#pragma once

#include <functional>
#include <string_view>

namespace hees {

using WarningSink = std::function<void(std::string_view)>;

// Replaces the warning sink and returns the previous one. The default sink
// writes "hees: warning: <msg>" to stderr. An empty sink drops warnings.
WarningSink set_warning_sink(WarningSink sink);

void warn(std::string_view message);

}  // namespace hees
