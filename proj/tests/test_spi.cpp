#include <array>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "spibox/spi.hpp"

using namespace spibox;

TEST_CASE("validity of hand-written distributions") {
  const std::vector<double> sixth(6, 1.0 / 6.0);
  CHECK_FALSE(validate_pdl(sixth).has_value());
  const std::vector<double> seventh(6, 1.0 / 7.0);
  CHECK(validate_pdl(seventh).has_value());
  const std::vector<double> quarter(4, 0.25);
  CHECK(validate_pdl(quarter).has_value());
  const std::vector<double> negative{0.5, 0.5, 0.2, -0.2, 0.0, 0.0};
  CHECK(validate_pdl(negative).has_value());
  const std::vector<double> onehot{1, 0, 0, 0, 0, 0};
  CHECK_FALSE(validate_pdl(onehot).has_value());
}

TEST_CASE("cyclic quad rows are right shifts of the base") {
  const std::array<double, 4> base{0.1, 0.2, 0.3, 0.4};
  const Quad q = cyclic_quad(base);
  CHECK(q[0] == base);
  CHECK(q[1] == std::array<double, 4>{0.4, 0.1, 0.2, 0.3});
  CHECK(q[2] == std::array<double, 4>{0.3, 0.4, 0.1, 0.2});
  CHECK(q[3] == std::array<double, 4>{0.2, 0.3, 0.4, 0.1});
  for (const auto& row : q) CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("accepted draws respect the cap and the margin") {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto d = draw_quad_base(0.1, 0.3, rng);
    CHECK(d.base[0] >= 0.0);
    CHECK(d.base[0] < 0.1);
    CHECK(std::abs(d.base[0] - d.base[2]) >= 0.3);
    // With the weak value below 0.1, the opposite value must be at least 0.2 beyond it.
    CHECK(d.base[2] >= 0.2);
    CHECK(std::accumulate(d.base.begin(), d.base.end(), 0.0) == doctest::Approx(1.0));
    CHECK(d.attempts >= 1);
  }
}

TEST_CASE("generation parameters are checked") {
  Rng rng(1);
  CHECK(oracle::throws_kind([&] { draw_quad_base(0.0, 0.3, rng); }, ErrorKind::invalid_argument));
  CHECK(oracle::throws_kind([&] { draw_quad_base(0.8, 0.5, rng); }, ErrorKind::invalid_argument));
  CHECK(oracle::throws_kind([&] { draw_quad_base(0.1, -0.1, rng); }, ErrorKind::invalid_argument));
  CHECK(oracle::throws_kind([&] { draw_quad_base(0.1, 0.9, rng, 5); }, ErrorKind::generation_stall));
  CHECK(oracle::throws_kind([] { SpiMap::build({6, 0.1, 0.3, 0}); }, ErrorKind::invalid_argument));
}

TEST_CASE("4 to 6 expansion splits the lateral columns") {
  const Pdl a = expand_4_to_6({0.1, 0.2, 0.4, 0.3});
  const Pdl a_expected{0.1, 0.1, 0.1, 0.4, 0.15, 0.15};
  for (int i = 0; i < 6; ++i) CHECK(a[i] == doctest::Approx(a_expected[i]));
  const Pdl b = expand_4_to_6({0.25, 0.25, 0.25, 0.25});
  const Pdl b_expected{0.25, 0.125, 0.125, 0.25, 0.125, 0.125};
  for (int i = 0; i < 6; ++i) CHECK(b[i] == doctest::Approx(b_expected[i]));
  // Unnormalized rows are renormalized.
  const Pdl c = expand_4_to_6({2, 0, 2, 0});
  CHECK(c[0] == 0.5);
  CHECK(c[3] == 0.5);
}

TEST_CASE("built maps are valid, structured and reproducible") {
  const SpiMap m = SpiMap::build({10000, 0.1, 0.3, 99});
  CHECK(m.size() == 10000);
  for (const Pdl& p : m.pdls()) {
    CHECK_FALSE(validate_pdl(p).has_value());
    CHECK(p[1] == p[2]);
    CHECK(p[4] == p[5]);
  }
  CHECK(m.has_quad_structure());
  CHECK(SpiMap::build({10000, 0.1, 0.3, 99}).serialize() == m.serialize());
  CHECK(SpiMap::build({10000, 0.1, 0.3, 100}).serialize() != m.serialize());

  const SpiMap one = SpiMap::build({4, 0.1, 0.3, 1});
  CHECK(one.size() == 4);
  CHECK(one.has_quad_structure());
}

TEST_CASE("hand-specified maps are validated") {
  CHECK(oracle::throws_kind([] { SpiMap::from_pdls({Pdl{0.5, 0.5, 0.5, 0, 0, 0}}); }, ErrorKind::invalid_argument));
  CHECK(oracle::throws_kind([] { SpiMap::from_pdls({}); }, ErrorKind::invalid_argument));
  const SpiMap m = SpiMap::from_pdls({Pdl{1, 0, 0, 0, 0, 0}});
  CHECK(m.size() == 1);
  CHECK_FALSE(m.has_quad_structure());
  CHECK_THROWS_AS((void)m[1], std::out_of_range);
}

TEST_CASE("map text round trip") {
  const SpiMap m = SpiMap::build({40, 0.05, 0.2, 5});
  const SpiMap back = SpiMap::parse(m.serialize());
  CHECK(back.size() == m.size());
  for (std::size_t i = 0; i < m.size(); ++i) CHECK(back[i] == m[i]);
  CHECK(back.serialize() == m.serialize());

  const auto path = std::filesystem::temp_directory_path() / "spibox_test_map.txt";
  m.save(path);
  CHECK(SpiMap::load(path).serialize() == m.serialize());
  std::filesystem::remove(path);

  CHECK(oracle::throws_kind([] { SpiMap::parse("spi-map n_pdls=2\n1,0,0,0,0,0\n"); }, ErrorKind::parse));
  CHECK(oracle::throws_kind([] { SpiMap::parse("spi-map n_pdls=1\n1,0,0,0,0\n"); }, ErrorKind::parse));
  CHECK(oracle::throws_kind([] { SpiMap::parse("nonsense\n"); }, ErrorKind::parse));
  CHECK(oracle::throws_kind([] { SpiMap::load("/nonexistent/map.txt"); }, ErrorKind::io));
}

TEST_CASE("keys are uniform over the map") {
  Rng rng(2024);
  for (int i = 0; i < 100; ++i) CHECK(draw_key(1, rng).value == 0);
  const std::size_t cells = 4000;
  std::vector<std::size_t> counts(cells, 0);
  for (int i = 0; i < 1'000'000; ++i) {
    const Key k = draw_key(cells, rng);
    REQUIRE(k.value < cells);
    ++counts[k.value];
  }
  CHECK(oracle::chi_square_uniform_p(counts) > 0.001);
  CHECK(oracle::throws_kind([&] { draw_key(0, rng); }, ErrorKind::invalid_argument));
}

TEST_CASE("action sampling follows the distribution") {
  Rng rng(8);
  const Pdl onehot{1, 0, 0, 0, 0, 0};
  for (int i = 0; i < 1000; ++i) CHECK(sample_action(onehot, rng) == Action::left);

  const Pdl no_right{0.2, 0.2, 0.2, 0.0, 0.2, 0.2};
  for (int i = 0; i < 10000; ++i) CHECK(sample_action(no_right, rng) != Action::right);

  const Pdl uniform{1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6};
  const int n = 100000;
  std::array<int, 6> counts{};
  for (int i = 0; i < n; ++i) ++counts[action_index(sample_action(uniform, rng))];
  const double p = 1.0 / 6.0, sigma = std::sqrt(n * p * (1 - p));
  for (int c : counts) CHECK(std::abs(c - n * p) < 3 * sigma);
}
