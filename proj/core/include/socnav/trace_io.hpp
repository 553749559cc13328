#pragma once

#include <iosfwd>

#include "socnav/env.hpp"

namespace socnav {

/// JSON Lines: one object per record
///   {"t", "ego": [x, y, theta], "peds": [[x, y], ...], "action": [v, w], "reward", "terminal"}
/// followed by {"summary": {"terminal", "steps", "nav_time_s"}}.
void write_trace_jsonl(std::ostream& out, const EpisodeTrace& trace);

/// Parses the format above. Throws ConfigError on malformed lines.
EpisodeTrace read_trace_jsonl(std::istream& in);

}  // namespace socnav
