#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace portnet::cli {

enum ExitCode : int { ok = 0, violation = 1, input_error = 2, inconclusive = 3 };

/// Runs one invocation. `args` excludes the program name. Artifacts go to
/// `out`, diagnostics to `err`. `color` styles diagnostic prefixes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        bool color = false);

/// Resolves PORTNET_COLOR (auto, always, never) for a stream; auto means
/// "is a terminal".
bool color_enabled(bool stream_is_tty);

}  // namespace portnet::cli
