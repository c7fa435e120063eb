// Shared helpers for the test binaries: seeded generators and brute-force
// references that do not go through the library's elimination code.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "semistatic/connectivity.hpp"
#include "semistatic/cycles.hpp"
#include "semistatic/exact_oracle.hpp"
#include "semistatic/model.hpp"
#include "semistatic/multi_period.hpp"

namespace testsupport {

using semistatic::ExactMatrix;
using semistatic::Point;
using semistatic::PortfolioPosition;
using semistatic::Scalar;
using semistatic::StateSet;
using semistatic::Strategy;
using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Scalar rational(Rng& rng, int span = 9, int max_den = 4) {
  Scalar q(uniform(rng, -span, span), uniform(rng, 1, max_den));
  q.canonicalize();
  return q;
}

inline Scalar nonzero_rational(Rng& rng, int span = 9, int max_den = 4) {
  for (;;) {
    Scalar q = rational(rng, span, max_den);
    if (q != 0) return q;
  }
}

/// `count` distinct rationals.
inline std::vector<Scalar> distinct_rationals(Rng& rng, std::size_t count, int span = 20, int max_den = 3) {
  std::set<Scalar> out;
  while (out.size() < count) out.insert(rational(rng, span, max_den));
  std::vector<Scalar> v(out.begin(), out.end());
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

/// Determinant by Laplace expansion along rows, memoised on the set of
/// columns already used. Exponential; meant for n <= 16.
inline Scalar laplace_determinant(const ExactMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("square matrix required");
  if (n == 0) return 1;
  std::vector<Scalar> memo(std::size_t{1} << n);
  std::vector<bool> known(std::size_t{1} << n, false);
  auto minor = [&](auto&& self, std::uint32_t used) -> Scalar {
    const auto row = static_cast<std::size_t>(__builtin_popcount(used));
    if (row == n) return 1;
    if (known[used]) return memo[used];
    Scalar total = 0;
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (used & (1U << c)) continue;
      if (m(row, c) != 0) total += sign * m(row, c) * self(self, used | (1U << c));
      sign = -sign;
    }
    known[used] = true;
    memo[used] = total;
    return total;
  };
  return minor(minor, 0);
}

/// Cycle with k distinct x-values and k distinct y-values, all evaluation
/// points off the diagonal.
inline semistatic::Cycle random_cycle(Rng& rng, std::size_t k) {
  for (;;) {
    const auto xs = distinct_rationals(rng, k);
    const auto ys = distinct_rationals(rng, k);
    semistatic::Cycle c;
    for (std::size_t i = 0; i < k; ++i) c.interior.push_back({xs[i], ys[i]});
    bool ok = true;
    for (const auto& p : c.evaluation_points()) ok = ok && !p.on_diagonal();
    if (ok) return c;
  }
}

inline StateSet states_of(const std::vector<Point>& points) {
  std::set<Point> unique(points.begin(), points.end());
  return StateSet::from_points({unique.begin(), unique.end()});
}

/// v = h(x)(y - x) + g(y), written out independently of the library.
inline Strategy strategy_from(const StateSet& states, const std::map<Scalar, Scalar>& h,
                              const std::map<Scalar, Scalar>& g) {
  Strategy v;
  for (const auto& p : states) v.values.push_back(h.at(p.x) * (p.y - p.x) + g.at(p.y));
  return v;
}

struct RandomPositions {
  std::map<Scalar, Scalar> h;
  std::map<Scalar, Scalar> g;
};

inline RandomPositions random_positions(Rng& rng, const StateSet& states) {
  RandomPositions out;
  for (const auto& x : states.xs()) out.h[x] = rational(rng, 9, 3);
  for (const auto& y : states.ys()) out.g[y] = rational(rng, 9, 3);
  return out;
}

/// Up to `max_points` states drawn from a small coordinate pool, so that
/// components, cycles and shared coordinates appear often. Roughly one point
/// in `diagonal_every` is diagonal.
inline StateSet random_states(Rng& rng, std::size_t max_points, int pool = 6, int diagonal_every = 5) {
  const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(max_points)));
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const Scalar x(uniform(rng, 0, pool));
    if (uniform(rng, 1, diagonal_every) == 1) {
      pts.push_back({x, x});
    } else {
      pts.push_back({x, Scalar(uniform(rng, 0, pool))});
    }
  }
  return states_of(pts);
}

/// Off-diagonal states on coordinates 0..pool plus diagonal states on
/// coordinates above 1000, so no diagonal point shares a coordinate with a
/// component.
inline StateSet coordinate_disjoint_states(Rng& rng, std::size_t max_points, int pool = 6) {
  const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(max_points)));
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    if (uniform(rng, 1, 5) == 1) {
      const Scalar c(1000 + uniform(rng, 0, pool));
      pts.push_back({c, c});
    } else {
      const Scalar x(uniform(rng, 0, pool));
      Scalar y(uniform(rng, 0, pool));
      if (x == y) continue;
      pts.push_back({x, y});
    }
  }
  if (pts.empty()) pts.push_back({Scalar(0), Scalar(1)});
  return states_of(pts);
}

/// A spanning tree of a random bipartite graph on nx x-values and ny
/// y-values, as a component without cycles.
inline std::vector<Point> random_tree_component(Rng& rng, std::size_t nx, std::size_t ny) {
  std::vector<Scalar> values = distinct_rationals(rng, nx + ny);
  const std::vector<Scalar> xs(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(nx));
  const std::vector<Scalar> ys(values.begin() + static_cast<std::ptrdiff_t>(nx), values.end());
  // Attach nodes one by one to a random node of the other side.
  std::vector<std::size_t> in_x{0};
  std::vector<std::size_t> in_y;
  std::vector<Point> pts;
  std::size_t next_x = 1;
  std::size_t next_y = 0;
  while (next_x < nx || next_y < ny) {
    const bool add_y = next_y < ny && (next_x >= nx || uniform(rng, 0, 1) == 0 || in_y.empty());
    if (add_y) {
      const std::size_t xi = in_x[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(in_x.size()) - 1))];
      pts.push_back({xs[xi], ys[next_y]});
      in_y.push_back(next_y++);
    } else {
      const std::size_t yi = in_y[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(in_y.size()) - 1))];
      pts.push_back({xs[next_x], ys[yi]});
      in_x.push_back(next_x++);
    }
  }
  return pts;
}

inline semistatic::mp::Instance random_instance(Rng& rng, std::size_t dates, std::size_t stocks) {
  std::vector<std::vector<Scalar>> x0(dates, std::vector<Scalar>(stocks));
  std::vector<std::vector<Scalar>> x1 = x0;
  for (std::size_t t = 0; t < dates; ++t) {
    for (std::size_t j = 0; j < stocks; ++j) {
      x0[t][j] = rational(rng, 12, 5);
      do {
        x1[t][j] = rational(rng, 12, 5);
      } while (x1[t][j] == x0[t][j]);
    }
  }
  return semistatic::mp::Instance(dates, stocks, std::move(x0), std::move(x1));
}

}  // namespace testsupport
