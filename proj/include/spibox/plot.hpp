#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "spibox/geometry.hpp"

namespace spibox {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Axes {
  std::string title;
  std::string x_label;
  std::string y_label;
};

std::string line_plot_svg(const Axes& axes, std::span<const Series> series);

/// Grouped bars; each series gives bin left edges in x and heights in y.
std::string bar_plot_svg(const Axes& axes, std::span<const Series> series, double bin_width);

/// At most `max_points` samples are drawn, taken at a fixed stride.
std::string scatter_svg(const Axes& axes, std::span<const Vec2> points, std::size_t max_points = 5000);

struct PlotOptions {
  std::size_t success_window = 50;
  std::size_t step_bin_width = 10;
  std::size_t direction_bins = 15;
};

/// Recognizes training logs, BMD sample dumps, PDL and cap/margin sweeps and
/// comparison summaries by their header, and renders the matching charts.
/// Inputs of the same kind are overlaid. Every input is parsed before any file
/// is written. Returns the written paths.
std::vector<std::filesystem::path> emit_plots(std::span<const std::filesystem::path> inputs,
                                              const std::filesystem::path& out_dir,
                                              const PlotOptions& options = {});

}  // namespace spibox
