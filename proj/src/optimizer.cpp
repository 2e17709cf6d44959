#include "qdisc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

namespace qdisc {

QubitQ feasibilityProject(double c, const Eigen::Vector3d& r) {
  QubitQ q;
  q.c = std::clamp(c, 0.0, 1.0);
  const double rmax = std::min(q.c, 1.0 - q.c);
  const double rn = r.norm();
  q.r = (rn > rmax) ? (rmax <= 0.0 ? Eigen::Vector3d::Zero().eval() : (r * (rmax / rn)).eval())
                    : r;
  return q;
}

namespace {

constexpr double kDiameterTol = 1e-9;
constexpr double kSpreadTol = 1e-12;

using Point = std::vector<double>;

struct LocalSearchResult {
  Point x;
  double value = 0.0;
  int evals = 0;
  bool converged = false;
};

// Nelder-Mead maximization. `sanitize` maps a raw point onto the feasible
// set in-place; `eval` scores a sanitized point.
LocalSearchResult nelderMead(Point start, const std::vector<double>& steps,
                             const std::function<void(Point&)>& sanitize,
                             const std::function<double(const Point&)>& eval, int maxEvals) {
  const size_t n = start.size();
  std::vector<Point> xs;
  std::vector<double> fs;
  int evals = 0;

  auto score = [&](Point& p) {
    sanitize(p);
    ++evals;
    return eval(p);
  };

  sanitize(start);
  xs.push_back(start);
  fs.push_back(score(xs[0]));
  for (size_t i = 0; i < n; ++i) {
    Point p = start;
    p[i] += steps[i];
    xs.push_back(p);
    fs.push_back(score(xs.back()));
  }

  auto order = [&] {
    std::vector<size_t> idx(n + 1);
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return fs[a] > fs[b]; });
    std::vector<Point> xs2(n + 1);
    std::vector<double> fs2(n + 1);
    for (size_t k = 0; k <= n; ++k) {
      xs2[k] = xs[idx[k]];
      fs2[k] = fs[idx[k]];
    }
    xs.swap(xs2);
    fs.swap(fs2);
  };

  bool converged = false;
  while (evals < maxEvals) {
    order();
    double diameter = 0.0;
    for (size_t k = 1; k <= n; ++k) {
      double d2 = 0.0;
      for (size_t i = 0; i < n; ++i) d2 += (xs[k][i] - xs[0][i]) * (xs[k][i] - xs[0][i]);
      diameter = std::max(diameter, std::sqrt(d2));
    }
    if (diameter < kDiameterTol || fs.front() - fs.back() < kSpreadTol) {
      converged = true;
      break;
    }

    Point centroid(n, 0.0);
    for (size_t k = 0; k < n; ++k) {
      for (size_t i = 0; i < n; ++i) centroid[i] += xs[k][i] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      Point p(n);
      for (size_t i = 0; i < n; ++i) p[i] = centroid[i] + t * (xs[n][i] - centroid[i]);
      return p;
    };

    Point refl = along(-1.0);
    const double fr = score(refl);
    if (fr > fs[0]) {
      Point exp_ = along(-2.0);
      const double fe = score(exp_);
      if (fe > fr) {
        xs[n] = exp_;
        fs[n] = fe;
      } else {
        xs[n] = refl;
        fs[n] = fr;
      }
    } else if (fr > fs[n - 1]) {
      xs[n] = refl;
      fs[n] = fr;
    } else {
      Point contr = along(fr > fs[n] ? -0.5 : 0.5);
      const double fc = score(contr);
      if (fc > std::max(fr, fs[n])) {
        xs[n] = contr;
        fs[n] = fc;
      } else {
        for (size_t k = 1; k <= n; ++k) {
          for (size_t i = 0; i < n; ++i) xs[k][i] = xs[0][i] + 0.5 * (xs[k][i] - xs[0][i]);
          fs[k] = score(xs[k]);
        }
      }
    }
  }
  order();
  return {xs[0], fs[0], evals, converged};
}

}  // namespace

OptimizationResult maximizeF(const BlochOperator& a, const BlochOperator& b,
                             const BlochOperator& c, const OptimizerConfig& config) {
  const SignClass signB = classifySign(b);
  const SignClass signC = classifySign(c);
  const bool reduced = config.useReducedN3 && c.isZero(0.0);

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto randomDirection = [&] {
    Eigen::Vector3d v;
    do {
      v = Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
    } while (v.norm() < 1e-12);
    return (v / v.norm()).eval();
  };

  const N3ParamSpace space = n3ReducedParametrization(a, b);

  std::function<void(Point&)> sanitize;
  std::function<double(const Point&)> eval;
  std::function<QubitQ(const Point&)> toQ;
  if (reduced) {
    sanitize = [&](Point& p) { p[0] = std::clamp(p[0], space.cMin, space.cMax); };
    toQ = [&](const Point& p) { return space.point(p[0], p[1]); };
  } else {
    sanitize = [&](Point& p) {
      const QubitQ q = feasibilityProject(p[0], Eigen::Vector3d(p[1], p[2], p[3]));
      p[0] = q.c;
      p[1] = q.r[0];
      p[2] = q.r[1];
      p[3] = q.r[2];
    };
    toQ = [&](const Point& p) {
      return feasibilityProject(p[0], Eigen::Vector3d(p[1], p[2], p[3]));
    };
  }
  eval = [&](const Point& p) { return fQBloch(a, b, c, toQ(p), signB, signC); };

  OptimizationResult result;
  result.value = -std::numeric_limits<double>::infinity();
  int totalEvals = 0;

  for (int s = 0; s < std::max(config.restarts, 1); ++s) {
    Point start;
    std::vector<double> steps;
    if (reduced) {
      if (s == 0) {
        start = {1.0, 0.0};  // Q = identity
      } else if (s == 1) {
        start = {0.5, 0.0};  // rank-1 projector along r_A
      } else {
        start = {0.5 + 0.5 * unit(rng), 2.0 * M_PI * unit(rng)};
      }
      steps = {0.12, 0.4};
    } else {
      if (s == 0) {
        start = {1.0, 0.0, 0.0, 0.0};
      } else if (s == 1) {
        start = {0.0, 0.0, 0.0, 0.0};
      } else {
        const double cc = unit(rng);
        const double rmax = std::min(cc, 1.0 - cc);
        const double t = (s % 2 == 0) ? 1.0 : unit(rng);  // half the starts sit on the radius boundary
        const Eigen::Vector3d r = t * rmax * randomDirection();
        start = {cc, r[0], r[1], r[2]};
      }
      steps = {0.1, 0.1, 0.1, 0.1};
    }

    LocalSearchResult local = nelderMead(start, steps, sanitize, eval, config.maxEvals);
    totalEvals += local.evals;
    ++result.startsUsed;
    if (local.value > result.value) {
      result.value = local.value;
      result.bestQ = toQ(local.x);
      result.converged = local.converged;
    }
    if (config.trackHistory) {
      result.history.emplace_back(totalEvals, result.value);
    }
  }
  // The reduced space pins the top eigenvalue of Q at one, so it cannot
  // express Q = 0; F is homogeneous in Q when C = 0, making F = 0 the only
  // value the restriction can miss.
  if (reduced && result.value < 0.0) {
    result.value = 0.0;
    result.bestQ = QubitQ{};
    result.converged = true;
    if (config.trackHistory) result.history.emplace_back(totalEvals, 0.0);
  }
  return result;
}

}  // namespace qdisc
