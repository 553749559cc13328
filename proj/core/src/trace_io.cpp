#include "socnav/trace_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"
#include "socnav/errors.hpp"

namespace socnav {

using nlohmann::json;

void write_trace_jsonl(std::ostream& out, const EpisodeTrace& trace) {
  for (const TraceRecord& r : trace.records) {
    json peds = json::array();
    for (const Vec2& p : r.pedestrians) peds.push_back({p.x, p.y});
    json line = {{"t", r.t},
                 {"ego", {r.ego.position.x, r.ego.position.y, r.ego.heading}},
                 {"peds", std::move(peds)},
                 {"action", {r.action.v, r.action.w}},
                 {"reward", r.reward},
                 {"terminal", std::string(to_string(r.terminal))}};
    out << line.dump() << '\n';
  }
  json summary = {{"summary",
                   {{"terminal", std::string(to_string(trace.terminal))},
                    {"steps", trace.steps},
                    {"nav_time_s", trace.nav_time_s}}}};
  out << summary.dump() << '\n';
}

EpisodeTrace read_trace_jsonl(std::istream& in) {
  EpisodeTrace trace;
  std::string text;
  int line_no = 0;
  bool have_summary = false;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) continue;
    try {
      const json j = json::parse(text);
      if (j.contains("summary")) {
        const json& s = j.at("summary");
        trace.terminal = terminal_from_string(s.at("terminal").get<std::string>());
        trace.steps = s.at("steps").get<int>();
        trace.nav_time_s = s.at("nav_time_s").get<double>();
        have_summary = true;
        continue;
      }
      TraceRecord r;
      r.t = j.at("t").get<int>();
      const auto& ego = j.at("ego");
      r.ego.position = {ego.at(0).get<double>(), ego.at(1).get<double>()};
      r.ego.heading = ego.at(2).get<double>();
      for (const auto& p : j.at("peds")) r.pedestrians.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      r.action = {j.at("action").at(0).get<double>(), j.at("action").at(1).get<double>()};
      r.reward = j.at("reward").get<double>();
      r.terminal = terminal_from_string(j.at("terminal").get<std::string>());
      trace.records.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw ConfigError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_summary) throw ConfigError("trace has no summary line");
  return trace;
}

}  // namespace socnav
