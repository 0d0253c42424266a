#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace volterra {

using WarningSink = std::function<void(std::string_view)>;

/// Routes library warnings; the default sink writes "warning: ..." to std::clog.
/// Returns the previous sink.
WarningSink set_warning_sink(WarningSink sink);

void warn(std::string_view message);

} // namespace volterra
