#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "socnav/errors.hpp"
#include "socnav/eval.hpp"
#include "socnav/trace_io.hpp"

namespace socnav::cli {
namespace {

struct CommonOptions {
  std::string config_path;
  std::string params_path;
  std::string policy = "dwa";
  std::optional<std::uint64_t> seed;
  std::string out_path;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ScenarioConfig load(const CommonOptions& o) {
  return o.config_path.empty() ? ScenarioConfig{} : load_config(o.config_path);
}

PolicySpec policy_spec(const CommonOptions& o) {
  const PolicyKind kind = policy_kind_from_string(o.policy);
  return parse_policy_params(kind, o.params_path.empty() ? std::string{} : slurp(o.params_path));
}

void write_output(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

int cmd_run(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const ScenarioConfig config = load(o);
  const PolicySpec spec = policy_spec(o);
  const std::uint64_t seed = o.seed.value_or(config.seed);

  Environment env(config);
  env.reset(seed);
  auto policy = make_policy(spec, config.limits);
  const EpisodeTrace trace = run_episode(env, *policy);

  std::ostringstream jsonl;
  write_trace_jsonl(jsonl, trace);
  write_output(o.out_path, jsonl.str(), out);
  err << "episode seed " << seed << ": " << to_string(trace.terminal) << " after " << trace.steps
      << " steps (" << trace.nav_time_s << " s)\n";
  return kOk;
}

int cmd_bench(const CommonOptions& o, int trials, unsigned threads, std::ostream& out,
              std::ostream& err) {
  if (trials < 1) throw ConfigError("--trials must be >= 1");
  const ScenarioConfig config = load(o);
  const PolicySpec spec = policy_spec(o);
  const MetricsReport report = run_benchmark(config, spec, trials, o.seed.value_or(config.seed), threads);
  write_output(o.out_path, metrics_to_json(report), out);
  err << metrics_table(report);
  return kOk;
}

std::string svg_scene(const EpisodeTrace& trace, const std::optional<Layout>& layout,
                      double half_extent) {
  const double scale = 50.0;  // px per meter
  const double size = 2.0 * half_extent * scale;
  auto px = [&](const Vec2& p) {
    std::ostringstream s;
    s << (p.x + half_extent) * scale << ',' << (half_extent - p.y) * scale;
    return s.str();
  };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\" stroke=\"black\"/>\n";
  if (layout) {
    for (const Circle& c : layout->obstacles) {
      const auto p = px(c.center);
      const auto comma = p.find(',');
      svg << "<circle cx=\"" << p.substr(0, comma) << "\" cy=\"" << p.substr(comma + 1)
          << "\" r=\"" << c.radius * scale << "\" fill=\"steelblue\"/>\n";
    }
    const auto g = px(layout->goal);
    const auto comma = g.find(',');
    svg << "<circle cx=\"" << g.substr(0, comma) << "\" cy=\"" << g.substr(comma + 1)
        << "\" r=\"6\" fill=\"green\"/>\n";
  }
  const std::size_t n_peds = trace.records.empty() ? 0 : trace.records.front().pedestrians.size();
  for (std::size_t k = 0; k < n_peds; ++k) {
    svg << "<polyline fill=\"none\" stroke=\"royalblue\" stroke-dasharray=\"4 2\" points=\"";
    for (const auto& r : trace.records) {
      if (k < r.pedestrians.size()) svg << px(r.pedestrians[k]) << ' ';
    }
    svg << "\"/>\n";
  }
  svg << "<polyline fill=\"none\" stroke=\"crimson\" stroke-width=\"2\" points=\"";
  for (const auto& r : trace.records) svg << px(r.ego.position) << ' ';
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

int cmd_replay(const CommonOptions& o, const std::string& trace_path, const std::string& svg_path,
               std::ostream& out) {
  std::ifstream in(trace_path);
  if (!in) throw ConfigError("cannot open trace: " + trace_path);
  const EpisodeTrace trace = read_trace_jsonl(in);

  std::optional<Layout> layout;
  const ScenarioConfig config = load(o);
  if (o.seed) layout = sample_layout(config, *o.seed);

  std::ostringstream text;
  text.setf(std::ios::fixed);
  text.precision(3);
  for (const auto& r : trace.records) {
    text << "t=" << r.t << " ego=(" << r.ego.position.x << ", " << r.ego.position.y << ", "
         << r.ego.heading << ") action=(" << r.action.v << ", " << r.action.w
         << ") reward=" << r.reward << " terminal=" << to_string(r.terminal) << " peds=[";
    for (std::size_t k = 0; k < r.pedestrians.size(); ++k) {
      text << (k ? " " : "") << '(' << r.pedestrians[k].x << ", " << r.pedestrians[k].y << ')';
    }
    text << "]\n";
  }
  text << "summary: " << to_string(trace.terminal) << " steps=" << trace.steps
       << " nav_time_s=" << trace.nav_time_s << '\n';
  write_output(o.out_path, text.str(), out);

  if (!svg_path.empty()) {
    double extent = config.arena_half_extent;
    for (const auto& r : trace.records) {
      extent = std::max({extent, std::abs(r.ego.position.x), std::abs(r.ego.position.y)});
    }
    write_output(svg_path, svg_scene(trace, layout, extent), out);
  }
  return kOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Social-navigation simulator: run episodes, benchmark planners, replay traces"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::uint64_t seed_value = 0;
  int trials = 500;
  unsigned threads = 0;
  std::string trace_path;
  std::string svg_path;

  auto add_common = [&](CLI::App* sub, bool with_policy) {
    sub->add_option("--config", opts.config_path, "Scenario config JSON")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed_value, "Episode seed (bench: base seed)");
    sub->add_option("--out", opts.out_path, "Output file (default: stdout)");
    if (with_policy) {
      sub->add_option("--policy", opts.policy, "Planner")
          ->check(CLI::IsMember({"dwa", "orca", "zero", "straight"}));
      sub->add_option("--params", opts.params_path, "Planner parameters JSON")
          ->check(CLI::ExistingFile);
    }
  };

  CLI::App* run = app.add_subcommand("run", "Run one episode and write its JSONL trace");
  add_common(run, true);
  CLI::App* bench = app.add_subcommand("bench", "Seeded batch evaluation, metrics as JSON");
  add_common(bench, true);
  bench->add_option("--trials", trials, "Number of trials");
  bench->add_option("--threads", threads, "Worker threads (0 = all cores)");
  CLI::App* replay = app.add_subcommand("replay", "Dump a JSONL trace as text and optional SVG");
  add_common(replay, false);
  replay->add_option("--trace", trace_path, "JSONL trace")->required();
  replay->add_option("--svg", svg_path, "Write an SVG scene");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  if (run->count("--seed") || bench->count("--seed") || replay->count("--seed")) {
    opts.seed = seed_value;
  }

  try {
    if (*run) return cmd_run(opts, out, err);
    if (*bench) return cmd_bench(opts, trials, threads, out, err);
    if (*replay) return cmd_replay(opts, trace_path, svg_path, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kConfigError;
}

}  // namespace socnav::cli
