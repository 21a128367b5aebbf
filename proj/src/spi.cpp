#include "spibox/spi.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "spibox/error.hpp"
#include "spibox/text.hpp"

namespace spibox {

std::optional<std::string> validate_pdl(std::span<const double> candidate) {
  if (candidate.size() != kNumActions) {
    return "expected 6 entries, got " + std::to_string(candidate.size());
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    if (!std::isfinite(candidate[i]) || candidate[i] < 0.0) {
      return "entry " + std::to_string(i + 1) + " is negative or not finite";
    }
    sum += candidate[i];
  }
  if (std::abs(sum - 1.0) > kPdlTolerance) return "entries sum to " + format_double(sum) + ", not 1";
  return std::nullopt;
}

void check_generation_params(double cap, double margin) {
  require(cap > 0.0 && cap <= 1.0, "cap must be in (0, 1]");
  require(margin >= 0.0 && margin < 1.0, "margin must be in [0, 1)");
  require(cap + margin <= 1.0, "cap + margin must not exceed 1");
}

QuadDraw draw_quad_base(double cap, double margin, Rng& rng, std::uint64_t max_attempts) {
  check_generation_params(cap, margin);
  QuadDraw d;
  while (d.attempts < max_attempts) {
    ++d.attempts;
    const double weak = rng.uniform(0.0, cap);
    const double remaining = 1.0 - weak;
    const std::array<double, 3> raw{rng.uniform(), rng.uniform(), rng.uniform()};
    const double raw_sum = raw[0] + raw[1] + raw[2];
    if (raw_sum == 0.0) continue;
    d.base = {weak, raw[0] / raw_sum * remaining, raw[1] / raw_sum * remaining, raw[2] / raw_sum * remaining};
    if (std::abs(d.base[0] - d.base[2]) >= margin) return d;
  }
  fail(ErrorKind::generation_stall,
       "no quad satisfied the margin after " + std::to_string(max_attempts) + " attempts");
}

Quad cyclic_quad(const std::array<double, 4>& base) {
  Quad q{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) q[i][j] = base[(j + 4 - i) % 4];
  }
  return q;
}

Quad generate_quad(double cap, double margin, Rng& rng) {
  return cyclic_quad(draw_quad_base(cap, margin, rng).base);
}

Pdl expand_4_to_6(const std::array<double, 4>& row) {
  for (double v : row) require(v >= 0.0 && std::isfinite(v), "row entries must be non-negative");
  Pdl p{row[0], row[1] / 2.0, row[1] / 2.0, row[2], row[3] / 2.0, row[3] / 2.0};
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  require(sum > 0.0, "cannot expand an all-zero row");
  for (double& v : p) v /= sum;
  return p;
}

SpiMap SpiMap::build(const MapParams& params) {
  require(params.n_pdls >= 4 && params.n_pdls % 4 == 0, "n_pdls must be a positive multiple of 4");
  check_generation_params(params.cap, params.margin);
  Rng rng(params.seed);
  std::vector<Pdl> pdls;
  pdls.reserve(params.n_pdls);
  for (std::size_t q = 0; q < params.n_pdls / 4; ++q) {
    for (const auto& row : generate_quad(params.cap, params.margin, rng)) pdls.push_back(expand_4_to_6(row));
  }
  return SpiMap(std::move(pdls), params);
}

SpiMap SpiMap::from_pdls(std::vector<Pdl> pdls) {
  require(!pdls.empty(), "a map needs at least one PDL");
  for (std::size_t i = 0; i < pdls.size(); ++i) {
    if (auto why = validate_pdl(pdls[i])) fail(ErrorKind::invalid_argument, "PDL " + std::to_string(i) + ": " + *why);
  }
  return SpiMap(std::move(pdls), std::nullopt);
}

bool SpiMap::has_quad_structure(double tol) const {
  if (pdls_.empty() || pdls_.size() % 4 != 0) return false;
  auto collapse = [](const Pdl& p) { return std::array<double, 4>{p[0], p[1] + p[2], p[3], p[4] + p[5]}; };
  for (std::size_t q = 0; q < pdls_.size(); q += 4) {
    const auto base = collapse(pdls_[q]);
    for (std::size_t i = 0; i < 4; ++i) {
      const Pdl& p = pdls_[q + i];
      if (std::abs(p[1] - p[2]) > tol || std::abs(p[4] - p[5]) > tol) return false;
      const auto row = collapse(p);
      for (std::size_t j = 0; j < 4; ++j) {
        if (std::abs(row[j] - base[(j + 4 - i) % 4]) > tol) return false;
      }
    }
  }
  return true;
}

namespace {
constexpr std::string_view kMagic = "spi-map";
}

std::string SpiMap::serialize() const {
  std::ostringstream out;
  out << kMagic << " n_pdls=" << pdls_.size();
  if (params_) {
    out << " cap=" << format_double(params_->cap) << " margin=" << format_double(params_->margin)
        << " seed=" << params_->seed;
  }
  out << '\n';
  for (const Pdl& p : pdls_) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << format_double(p[i]);
    out << '\n';
  }
  return out.str();
}

SpiMap SpiMap::parse(std::string_view text) {
  auto lines = split(text, '\n');
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) fail(ErrorKind::empty_input, "map file is empty");

  std::optional<std::size_t> n_pdls;
  MapParams params;
  int seen_params = 0;
  const auto header = split(trim(lines.front()), ' ');
  if (header.front() != kMagic) fail(ErrorKind::parse, "line 1: missing 'spi-map' header");
  for (std::size_t i = 1; i < header.size(); ++i) {
    const auto kv = split(header[i], '=');
    if (kv.size() != 2) fail(ErrorKind::parse, "line 1: malformed header field '" + std::string(header[i]) + "'");
    if (kv[0] == "n_pdls") {
      const auto v = parse_int(kv[1]);
      if (!v || *v < 1) fail(ErrorKind::parse, "line 1: bad n_pdls");
      n_pdls = static_cast<std::size_t>(*v);
    } else if (kv[0] == "cap" || kv[0] == "margin") {
      const auto v = parse_double(kv[1]);
      if (!v) fail(ErrorKind::parse, "line 1: bad " + std::string(kv[0]));
      (kv[0] == "cap" ? params.cap : params.margin) = *v;
      ++seen_params;
    } else if (kv[0] == "seed") {
      const auto v = parse_int(kv[1]);
      if (!v || *v < 0) fail(ErrorKind::parse, "line 1: bad seed");
      params.seed = static_cast<std::uint64_t>(*v);
      ++seen_params;
    } else {
      fail(ErrorKind::parse, "line 1: unknown header field '" + std::string(kv[0]) + "'");
    }
  }
  if (!n_pdls) fail(ErrorKind::parse, "line 1: header lacks n_pdls");
  if (seen_params != 0 && seen_params != 3) fail(ErrorKind::parse, "line 1: cap, margin and seed go together");

  std::vector<Pdl> pdls;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const auto fields = split(trim(lines[ln]), ',');
    if (fields.size() != kNumActions) {
      fail(ErrorKind::parse, "line " + std::to_string(ln + 1) + ": expected 6 values");
    }
    Pdl p{};
    for (std::size_t i = 0; i < kNumActions; ++i) {
      const auto v = parse_double(trim(fields[i]));
      if (!v) fail(ErrorKind::parse, "line " + std::to_string(ln + 1) + ": malformed number");
      p[i] = *v;
    }
    if (auto why = validate_pdl(p)) fail(ErrorKind::parse, "line " + std::to_string(ln + 1) + ": " + *why);
    pdls.push_back(p);
  }
  if (pdls.size() != *n_pdls) {
    fail(ErrorKind::parse, "header declares " + std::to_string(*n_pdls) + " PDLs, file has " +
                               std::to_string(pdls.size()));
  }
  if (seen_params == 3) {
    params.n_pdls = pdls.size();
    return SpiMap(std::move(pdls), params);
  }
  return from_pdls(std::move(pdls));
}

void SpiMap::save(const std::filesystem::path& path) const { write_file(path, serialize()); }

SpiMap SpiMap::load(const std::filesystem::path& path) { return parse(read_file(path)); }

Key draw_key(std::size_t map_size, Rng& rng) {
  require(map_size >= 1, "map_size must be at least 1");
  return {static_cast<std::size_t>(rng.below(map_size))};
}

Action sample_action(const Pdl& pdl, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  int last_nonzero = 0;
  for (int i = 0; i < kNumActions; ++i) {
    const double p = pdl[static_cast<std::size_t>(i)];
    if (p <= 0.0) continue;
    last_nonzero = i;
    acc += p;
    if (u < acc) return static_cast<Action>(i + 1);
  }
  // u landed in the rounding gap above the cumulative sum.
  return static_cast<Action>(last_nonzero + 1);
}

}  // namespace spibox
