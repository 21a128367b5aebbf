#pragma once

// Reference computations that deliberately share no code with the library.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "spibox/error.hpp"

namespace oracle {

/// Runs `fn` and reports whether it raised spibox::Error of the given kind.
template <class Fn>
bool throws_kind(Fn&& fn, spibox::ErrorKind kind) {
  try {
    fn();
  } catch (const spibox::Error& e) {
    return e.kind() == kind;
  } catch (...) {
    return false;
  }
  return false;
}

/// Exact origin-avoidance score of uniform random exploration. Each agent
/// pushes +x, -x, +y, -y with probability 1/6, 1/6, 1/3, 1/3, so the
/// displacement depends only on the four direction counts. The score is
/// 1 - P(|d| < n/3) summed over all multinomial count vectors.
inline double random_origin_avoidance(int n_agents) {
  std::vector<long double> log_fact(n_agents + 1, 0.0L);
  for (int k = 1; k <= n_agents; ++k) log_fact[k] = log_fact[k - 1] + std::log(static_cast<long double>(k));
  const long double lp_x = std::log(1.0L / 6.0L), lp_y = std::log(1.0L / 3.0L);
  const double threshold = n_agents / 3.0;
  long double near_origin = 0.0L;
  for (int a = 0; a <= n_agents; ++a) {
    for (int b = 0; a + b <= n_agents; ++b) {
      for (int c = 0; a + b + c <= n_agents; ++c) {
        const int d = n_agents - a - b - c;
        const double dx = a - b, dy = c - d;
        if (std::sqrt(dx * dx + dy * dy) >= threshold) continue;
        const long double lp = log_fact[n_agents] - log_fact[a] - log_fact[b] - log_fact[c] - log_fact[d] +
                               (a + b) * lp_x + (c + d) * lp_y;
        near_origin += std::exp(lp);
      }
    }
  }
  return static_cast<double>(1.0L - near_origin);
}

/// Number of terms the enumeration above visits: C(n + 3, 3).
inline std::size_t multinomial_terms(int n) { return static_cast<std::size_t>(n + 3) * (n + 2) * (n + 1) / 6; }

/// Upper-tail p-value of Pearson's statistic for equiprobable cells.
inline double chi_square_uniform_p(const std::vector<std::size_t>& counts) {
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / counts.size();
  double stat = 0;
  for (auto c : counts) stat += (c - expected) * (c - expected) / expected;
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

/// Optimal action values of the test chain: states 0..2, "forward" moves
/// right and leaving state 2 ends the episode with reward 1; every other
/// action steps back one state (state 0 stays) with reward 0.
struct Chain {
  static constexpr int kStates = 3;
  double gamma;

  double v(int s) const { return std::pow(gamma, kStates - 1 - s); }
  double q_forward(int s) const { return s == kStates - 1 ? 1.0 : gamma * v(s + 1); }
  double q_back(int s) const { return gamma * v(s == 0 ? 0 : s - 1); }
};

/// Closed-form CV of a one-hot histogram with n bins (population std / mean).
inline double one_hot_cv(std::size_t n) { return std::sqrt(static_cast<double>(n) - 1.0); }

}  // namespace oracle
