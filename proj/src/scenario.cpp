#include "spibox/scenario.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "spibox/error.hpp"
#include "spibox/text.hpp"

namespace spibox {

Scenario Scenario::standard() {
  Scenario s;
  const double w = s.arena_width;
  const double h = s.arena_height;
  s.walls = {{{0, 0}, {w, 0}}, {{w, 0}, {w, h}}, {{w, h}, {0, h}}, {{0, h}, {0, 0}}};
  s.obstacles = {{{400.0, 300.0}, 50.0}};
  return s;
}

Scenario Scenario::open_field() {
  Scenario s;
  s.arena_width = 1e9;
  s.arena_height = 1e9;
  s.walls.clear();
  s.obstacles.clear();
  s.goal = {{1e12, 1e12}, 0.0};
  s.box_start = {0.0, 0.0};
  s.max_steps = 1;
  return s;
}

std::vector<std::string> Scenario::problems() const {
  std::vector<std::string> out;
  if (!(arena_width > 0.0) || !(arena_height > 0.0)) out.emplace_back("arena dimensions must be positive");
  if (!(box_side > 0.0)) out.emplace_back("box_side must be positive");
  if (!(sensor_radius > box_side)) out.emplace_back("sensor_radius must exceed box_side");
  if (max_steps < 1) out.emplace_back("max_steps must be at least 1");
  if (!(goal.radius >= 0.0)) out.emplace_back("goal radius must be non-negative");
  if (!(translation_gain > 0.0) || !(rotation_gain >= 0.0)) out.emplace_back("gains must be positive");
  for (std::size_t i = 0; i < walls.size(); ++i) {
    if (point_segment_distance(box_start, walls[i]) < box_side) {
      out.push_back("box_start closer than box_side to wall " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    if (!(obstacles[i].radius > 0.0)) out.push_back("obstacle " + std::to_string(i) + " has non-positive radius");
    if (norm(box_start - obstacles[i].center) - obstacles[i].radius < box_side) {
      out.push_back("box_start closer than box_side to obstacle " + std::to_string(i));
    }
  }
  return out;
}

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  fail(ErrorKind::parse, "scenario line " + std::to_string(line) + ": " + what);
}

std::vector<double> numbers(std::string_view value, std::size_t expected, std::size_t line) {
  std::vector<double> out;
  for (std::string_view field : split(value, ',')) {
    const auto v = parse_double(trim(field));
    if (!v) parse_error(line, "malformed number '" + std::string(field) + "'");
    out.push_back(*v);
  }
  if (out.size() != expected) {
    parse_error(line, "expected " + std::to_string(expected) + " values, got " + std::to_string(out.size()));
  }
  return out;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  s.walls.clear();
  s.obstacles.clear();
  bool have_goal = false;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_error(line_no, "expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "arena_width") {
      s.arena_width = numbers(value, 1, line_no)[0];
    } else if (key == "arena_height") {
      s.arena_height = numbers(value, 1, line_no)[0];
    } else if (key == "wall") {
      const auto v = numbers(value, 4, line_no);
      s.walls.push_back({{v[0], v[1]}, {v[2], v[3]}});
    } else if (key == "obstacle") {
      const auto v = numbers(value, 3, line_no);
      s.obstacles.push_back({{v[0], v[1]}, v[2]});
    } else if (key == "goal") {
      const auto v = numbers(value, 3, line_no);
      s.goal = {{v[0], v[1]}, v[2]};
      have_goal = true;
    } else if (key == "box_start") {
      const auto v = numbers(value, 2, line_no);
      s.box_start = {v[0], v[1]};
    } else if (key == "box_heading_start") {
      s.box_heading_start = wrap_two_pi(numbers(value, 1, line_no)[0]);
    } else if (key == "box_side") {
      s.box_side = numbers(value, 1, line_no)[0];
    } else if (key == "sensor_radius") {
      s.sensor_radius = numbers(value, 1, line_no)[0];
    } else if (key == "max_steps") {
      const double v = numbers(value, 1, line_no)[0];
      if (v != static_cast<double>(static_cast<int>(v))) parse_error(line_no, "max_steps must be an integer");
      s.max_steps = static_cast<int>(v);
    } else if (key == "translation_gain") {
      s.translation_gain = numbers(value, 1, line_no)[0];
    } else if (key == "rotation_gain") {
      s.rotation_gain = numbers(value, 1, line_no)[0];
    } else {
      parse_error(line_no, "unknown key '" + key + "'");
    }
  }
  if (!have_goal) fail(ErrorKind::parse, "scenario: missing goal");
  if (const auto issues = s.problems(); !issues.empty()) {
    fail(ErrorKind::parse, "scenario: " + issues.front());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path));
}

std::string format_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "arena_width=" << format_double(s.arena_width) << '\n'
      << "arena_height=" << format_double(s.arena_height) << '\n';
  for (const Segment& w : s.walls) {
    out << "wall=" << format_double(w.a.x) << ',' << format_double(w.a.y) << ','
        << format_double(w.b.x) << ',' << format_double(w.b.y) << '\n';
  }
  for (const Disc& o : s.obstacles) {
    out << "obstacle=" << format_double(o.center.x) << ',' << format_double(o.center.y) << ','
        << format_double(o.radius) << '\n';
  }
  out << "goal=" << format_double(s.goal.center.x) << ',' << format_double(s.goal.center.y) << ','
      << format_double(s.goal.radius) << '\n'
      << "box_start=" << format_double(s.box_start.x) << ',' << format_double(s.box_start.y) << '\n'
      << "box_heading_start=" << format_double(s.box_heading_start) << '\n'
      << "box_side=" << format_double(s.box_side) << '\n'
      << "sensor_radius=" << format_double(s.sensor_radius) << '\n'
      << "max_steps=" << s.max_steps << '\n'
      << "translation_gain=" << format_double(s.translation_gain) << '\n'
      << "rotation_gain=" << format_double(s.rotation_gain) << '\n';
  return out.str();
}

}  // namespace spibox
