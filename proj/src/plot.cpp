#include "spibox/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

#include "spibox/csv.hpp"
#include "spibox/error.hpp"
#include "spibox/fitness.hpp"
#include "spibox/text.hpp"

namespace spibox {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

class Canvas {
 public:
  Canvas(const Axes& axes, Range xr, Range yr) : x_(xr), y_(yr) {
    x_.settle();
    y_.settle();
    out_ << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << num(kWidth) << R"(" height=")" << num(kHeight)
         << R"(" viewBox="0 0 )" << num(kWidth) << ' ' << num(kHeight) << R"(" font-family="sans-serif" font-size="11">)"
         << '\n'
         << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n'
         << R"(<text x=")" << num(kWidth / 2) << R"(" y="20" text-anchor="middle" font-size="14">)"
         << escape(axes.title) << "</text>\n";
    const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
    out_ << R"(<path d="M)" << num(x0) << ' ' << num(y1) << " L" << num(x0) << ' ' << num(y0) << " L" << num(x1)
         << ' ' << num(y0) << R"(" stroke="black" fill="none"/>)" << '\n';
    for (int i = 0; i <= 4; ++i) {
      const double fx = x_.lo + (x_.hi - x_.lo) * i / 4.0;
      const double fy = y_.lo + (y_.hi - y_.lo) * i / 4.0;
      out_ << R"(<text x=")" << num(px(fx)) << R"(" y=")" << num(y0 + 15) << R"(" text-anchor="middle">)"
           << tick_label(fx) << "</text>\n";
      out_ << R"(<text x=")" << num(x0 - 5) << R"(" y=")" << num(py(fy) + 4) << R"(" text-anchor="end">)"
           << tick_label(fy) << "</text>\n";
      out_ << R"(<line x1=")" << num(x0) << R"(" x2=")" << num(x1) << R"(" y1=")" << num(py(fy)) << R"(" y2=")"
           << num(py(fy)) << R"(" stroke="#e0e0e0"/>)" << '\n';
    }
    out_ << R"(<text x=")" << num((x0 + x1) / 2) << R"(" y=")" << num(kHeight - 12)
         << R"(" text-anchor="middle">)" << escape(axes.x_label) << "</text>\n";
    out_ << R"(<text transform="translate(16 )" << num((y0 + y1) / 2)
         << R"x() rotate(-90)" text-anchor="middle">)x" << escape(axes.y_label) << "</text>\n";
  }

  double px(double x) const { return kLeft + (x - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight); }
  double py(double y) const { return (kHeight - kBottom) - (y - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom); }

  void legend(std::size_t i, std::string_view label) {
    const double lx = kWidth - kRight + 10, ly = kTop + 16.0 * static_cast<double>(i);
    out_ << R"(<rect x=")" << num(lx) << R"(" y=")" << num(ly) << R"(" width="10" height="10" fill=")" << color(i)
         << R"("/>)" << '\n'
         << R"(<text x=")" << num(lx + 14) << R"(" y=")" << num(ly + 9) << R"(">)" << escape(label) << "</text>\n";
  }

  static const char* color(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

  std::ostringstream& raw() { return out_; }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  Range x_, y_;
  std::ostringstream out_;
};

}  // namespace

std::string line_plot_svg(const Axes& axes, std::span<const Series> series) {
  Range xr, yr;
  for (const Series& s : series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  Canvas c(axes, xr, yr);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    std::string d;
    bool pen_down = false;
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) {
        pen_down = false;
        continue;
      }
      d += (pen_down ? " L" : " M") + num(c.px(s.x[k])) + ' ' + num(c.py(s.y[k]));
      pen_down = true;
    }
    c.raw() << R"(<path d=")" << d << R"(" stroke=")" << Canvas::color(i)
            << R"(" stroke-width="1.5" fill="none"/>)" << '\n';
    c.legend(i, s.label);
  }
  return c.finish();
}

std::string bar_plot_svg(const Axes& axes, std::span<const Series> series, double bin_width) {
  Range xr, yr;
  yr.add(0.0);
  for (const Series& s : series) {
    for (double v : s.x) {
      xr.add(v);
      xr.add(v + bin_width);
    }
    for (double v : s.y) yr.add(v);
  }
  Canvas c(axes, xr, yr);
  const double groups = static_cast<double>(std::max<std::size_t>(series.size(), 1));
  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      const double left = s.x[k] + bin_width * static_cast<double>(i) / groups;
      const double right = left + bin_width / groups;
      const double top = c.py(s.y[k]);
      c.raw() << R"(<rect x=")" << num(c.px(left)) << R"(" y=")" << num(top) << R"(" width=")"
              << num(c.px(right) - c.px(left)) << R"(" height=")" << num(c.py(0.0) - top) << R"(" fill=")"
              << Canvas::color(i) << R"(" fill-opacity="0.8"/>)" << '\n';
    }
    c.legend(i, s.label);
  }
  return c.finish();
}

std::string scatter_svg(const Axes& axes, std::span<const Vec2> points, std::size_t max_points) {
  Range xr, yr;
  for (Vec2 p : points) {
    xr.add(p.x);
    yr.add(p.y);
  }
  const double extent = std::max({std::abs(xr.lo), std::abs(xr.hi), std::abs(yr.lo), std::abs(yr.hi), 1.0});
  Range sym;
  sym.add(-extent);
  sym.add(extent);
  Canvas c(axes, sym, sym);
  const std::size_t stride = std::max<std::size_t>(1, (points.size() + max_points - 1) / std::max<std::size_t>(max_points, 1));
  for (std::size_t i = 0; i < points.size(); i += stride) {
    c.raw() << R"(<circle cx=")" << num(c.px(points[i].x)) << R"(" cy=")" << num(c.py(points[i].y))
            << R"(" r="1.5" fill=")" << Canvas::color(0) << R"(" fill-opacity="0.15"/>)" << '\n';
  }
  return c.finish();
}

namespace {

enum class Kind { training_log, samples, pdl_sweep, cap_margin, summary };

Kind classify(const CsvTable& t, const std::filesystem::path& path) {
  auto has = [&t](std::string_view name) { return std::find(t.header.begin(), t.header.end(), name) != t.header.end(); };
  if (has("episode_index") && has("outcome")) return Kind::training_log;
  if (t.header == std::vector<std::string>{"x", "y"}) return Kind::samples;
  if (has("n_pdls") && has("angular_spread")) return Kind::pdl_sweep;
  if (has("cap") && has("margin")) return Kind::cap_margin;
  if (t.header == std::vector<std::string>{"mode", "metric", "index", "value"}) return Kind::summary;
  fail(ErrorKind::parse, path.string() + ": unrecognized CSV layout");
}

struct Input {
  std::string label;
  CsvTable table;
};

std::vector<double> column(const CsvTable& t, std::string_view name) {
  std::vector<double> out;
  out.reserve(t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) out.push_back(t.number(r, name));
  return out;
}

Series step_histogram(const Input& in, bool success, std::size_t bin_width) {
  const CsvTable& t = in.table;
  std::map<std::size_t, double> bins;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if ((t.text(r, "outcome") == "success") != success) continue;
    bins[static_cast<std::size_t>(t.number(r, "steps")) / bin_width * bin_width] += 1.0;
  }
  Series s{in.label, {}, {}};
  for (const auto& [x, y] : bins) {
    s.x.push_back(static_cast<double>(x));
    s.y.push_back(y);
  }
  return s;
}

using Outputs = std::vector<std::pair<std::string, std::string>>;

void plot_training(const std::vector<Input>& inputs, const PlotOptions& o, Outputs& out) {
  std::vector<Series> success, reward, ok_steps, fail_steps;
  for (const Input& in : inputs) {
    const auto ep = column(in.table, "episode_index");
    const auto rw = column(in.table, "total_reward");
    Series sr{in.label, {}, {}}, rr{in.label, {}, {}};
    for (std::size_t start = 0; start < ep.size(); start += o.success_window) {
      const std::size_t end = std::min(ep.size(), start + o.success_window);
      double ok = 0, sum = 0;
      for (std::size_t r = start; r < end; ++r) {
        ok += in.table.text(r, "outcome") == "success";
        sum += rw[r];
      }
      const double n = static_cast<double>(end - start);
      sr.x.push_back(ep[end - 1]);
      sr.y.push_back(ok / n);
      rr.x.push_back(ep[end - 1]);
      rr.y.push_back(sum / n);
    }
    success.push_back(std::move(sr));
    reward.push_back(std::move(rr));
    ok_steps.push_back(step_histogram(in, true, o.step_bin_width));
    fail_steps.push_back(step_histogram(in, false, o.step_bin_width));
  }
  const double bw = static_cast<double>(o.step_bin_width);
  out.emplace_back("training_success_rate.svg", line_plot_svg({"Success rate", "episode", "success rate"}, success));
  out.emplace_back("training_reward.svg", line_plot_svg({"Mean episode reward", "episode", "reward"}, reward));
  out.emplace_back("training_success_steps.svg", bar_plot_svg({"Success steps", "steps", "episodes"}, ok_steps, bw));
  out.emplace_back("training_failure_steps.svg", bar_plot_svg({"Failure steps", "steps", "episodes"}, fail_steps, bw));
}

void plot_samples(const std::vector<Input>& inputs, const PlotOptions& o, Outputs& out) {
  std::vector<Series> directions;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto xs = column(inputs[i].table, "x");
    const auto ys = column(inputs[i].table, "y");
    std::vector<Vec2> pts(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) pts[k] = {xs[k], ys[k]};
    const std::string suffix = inputs.size() > 1 ? "_" + std::to_string(i) : "";
    out.emplace_back("bmd_scatter" + suffix + ".svg",
                     scatter_svg({"Box movement: " + inputs[i].label, "dx (px)", "dy (px)"}, pts));
    const auto counts = direction_histogram(pts, o.direction_bins);
    Series s{inputs[i].label, {}, {}};
    for (std::size_t b = 0; b < counts.size(); ++b) {
      s.x.push_back(360.0 * static_cast<double>(b) / static_cast<double>(o.direction_bins));
      s.y.push_back(static_cast<double>(counts[b]));
    }
    directions.push_back(std::move(s));
  }
  out.emplace_back("bmd_directions.svg", bar_plot_svg({"Direction of box movement", "bearing (deg)", "samples"},
                                                      directions, 360.0 / static_cast<double>(o.direction_bins)));
}

void plot_pdl_sweep(const std::vector<Input>& inputs, Outputs& out) {
  std::vector<Series> angular, origin;
  for (const Input& in : inputs) {
    const auto n = column(in.table, "n_pdls");
    angular.push_back({in.label, n, column(in.table, "angular_spread")});
    origin.push_back({in.label, n, column(in.table, "origin_avoidance")});
  }
  out.emplace_back("pdl_sweep_angular.svg", line_plot_svg({"Angular spread vs map size", "PDLs", "score"}, angular));
  out.emplace_back("pdl_sweep_origin.svg", line_plot_svg({"Origin avoidance vs map size", "PDLs", "score"}, origin));
}

void plot_cap_margin(const std::vector<Input>& inputs, Outputs& out) {
  std::map<double, Series> origin, angular;
  for (const Input& in : inputs) {
    for (std::size_t r = 0; r < in.table.rows.size(); ++r) {
      if (in.table.text(r, "feasible") != "1") continue;
      const double cap = in.table.number(r, "cap");
      for (auto* target : {&origin, &angular}) {
        Series& s = (*target)[cap];
        s.label = "cap " + tick_label(cap);
        s.x.push_back(in.table.number(r, "margin"));
        s.y.push_back(in.table.number(r, target == &origin ? "origin_avoidance" : "angular_spread"));
      }
    }
  }
  auto values = [](const std::map<double, Series>& m) {
    std::vector<Series> v;
    for (const auto& [k, s] : m) v.push_back(s);
    return v;
  };
  out.emplace_back("capmargin_origin.svg", line_plot_svg({"Origin avoidance", "margin", "score"}, values(origin)));
  out.emplace_back("capmargin_angular.svg", line_plot_svg({"Angular spread", "margin", "score"}, values(angular)));
}

void plot_summary(const std::vector<Input>& inputs, Outputs& out) {
  std::map<std::string, Series> success, fail_second;
  double bin_width = 10.0;
  for (const Input& in : inputs) {
    const CsvTable& t = in.table;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const std::string label = inputs.size() > 1 ? in.label + ":" + t.text(r, "mode") : t.text(r, "mode");
      const std::string& metric = t.text(r, "metric");
      if (metric == "window_success_rate") {
        Series& s = success[label];
        s.label = label;
        s.x.push_back(t.number(r, "index"));
        s.y.push_back(t.number(r, "value"));
      } else if (metric == "failure_steps_second_half_hist") {
        Series& s = fail_second[label];
        s.label = label;
        if (s.x.size() == 1) bin_width = t.number(r, "index") - s.x.front();
        s.x.push_back(t.number(r, "index"));
        s.y.push_back(t.number(r, "value"));
      }
    }
  }
  auto values = [](const std::map<std::string, Series>& m) {
    std::vector<Series> v;
    for (const auto& [k, s] : m) v.push_back(s);
    return v;
  };
  out.emplace_back("summary_success_rate.svg",
                   line_plot_svg({"Windowed success rate", "window", "success rate"}, values(success)));
  out.emplace_back("summary_failure_steps_second_half.svg",
                   bar_plot_svg({"Failure steps, second half", "steps", "episodes"}, values(fail_second), bin_width));
}

}  // namespace

std::vector<std::filesystem::path> emit_plots(std::span<const std::filesystem::path> paths,
                                              const std::filesystem::path& out_dir, const PlotOptions& options) {
  require(!paths.empty(), "plot needs at least one input");
  require(options.success_window >= 1 && options.step_bin_width >= 1 && options.direction_bins >= 2,
          "plot options out of range");
  std::map<Kind, std::vector<Input>> groups;
  for (const auto& p : paths) {
    CsvTable t = read_csv(p);
    if (t.rows.empty()) fail(ErrorKind::empty_input, p.string() + ": no data rows");
    groups[classify(t, p)].push_back({p.stem().string(), std::move(t)});
  }
  Outputs rendered;
  for (const auto& [kind, inputs] : groups) {
    switch (kind) {
      case Kind::training_log: plot_training(inputs, options, rendered); break;
      case Kind::samples: plot_samples(inputs, options, rendered); break;
      case Kind::pdl_sweep: plot_pdl_sweep(inputs, rendered); break;
      case Kind::cap_margin: plot_cap_margin(inputs, rendered); break;
      case Kind::summary: plot_summary(inputs, rendered); break;
    }
  }
  std::vector<std::filesystem::path> written;
  for (const auto& [name, svg] : rendered) {
    written.push_back(out_dir / name);
    write_file(written.back(), svg);
  }
  return written;
}

}  // namespace spibox
