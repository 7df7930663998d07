#include "heatlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace heatlab {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidGeometry(what);
}

void require_point(const AmbientSpace& s, const Point& p, const char* name) {
  require(!s.is_circle(), std::string(name) + ": point-based shapes need a Euclidean space");
  require(p.size() == s.dim(), std::string(name) + ": point dimension does not match space dimension");
  require(p.allFinite(), std::string(name) + ": non-finite coordinate");
}

double mod_positive(double x, double l) {
  double r = std::fmod(x, l);
  if (r < 0) r += l;
  return r;
}

// Disjointness of two leaf parts. Touching boundaries are fine (open sets).
bool disjoint(const Domain& a, const Domain& b) {
  constexpr double slack = 1e-12;
  return std::visit(
      [&](const auto& sa, const auto& sb) -> bool {
        using A = std::decay_t<decltype(sa)>;
        using B = std::decay_t<decltype(sb)>;
        if constexpr (std::is_same_v<A, Ball> && std::is_same_v<B, Ball>) {
          return (sa.center - sb.center).norm() >= (sa.r + sb.r) * (1 - slack);
        } else if constexpr (std::is_same_v<A, Ball> && std::is_same_v<B, Annulus>) {
          double d = (sa.center - sb.center).norm();
          return d + sa.r <= sb.r1 * (1 + slack) || d >= (sa.r + sb.r2) * (1 - slack);
        } else if constexpr (std::is_same_v<A, Annulus> && std::is_same_v<B, Ball>) {
          return disjoint(b, a);
        } else if constexpr (std::is_same_v<A, Annulus> && std::is_same_v<B, Annulus>) {
          if ((sa.center - sb.center).norm() > 0) return false;
          return sa.r2 <= sb.r1 * (1 + slack) || sb.r2 <= sa.r1 * (1 + slack);
        } else if constexpr (std::is_same_v<A, Box> && std::is_same_v<B, Box>) {
          for (Eigen::Index i = 0; i < sa.lo.size(); ++i)
            if (sa.hi[i] <= sb.lo[i] || sb.hi[i] <= sa.lo[i]) return true;
          return false;
        } else if constexpr (std::is_same_v<A, Ball> && std::is_same_v<B, Box>) {
          // conservative: bounding box of the ball separated from the box
          for (Eigen::Index i = 0; i < sa.center.size(); ++i)
            if (sa.center[i] + sa.r <= sb.lo[i] || sb.hi[i] <= sa.center[i] - sa.r) return true;
          return false;
        } else if constexpr (std::is_same_v<A, Box> && std::is_same_v<B, Ball>) {
          return disjoint(b, a);
        } else if constexpr (std::is_same_v<A, Arc> && std::is_same_v<B, Arc>) {
          const double l = a.space().circumference();
          double off = mod_positive(sb.start - sa.start, l);
          // b starts after a ends and ends before a starts again
          return off >= sa.length * (1 - slack) && off + sb.length <= l * (1 + slack);
        } else {
          return false;
        }
      },
      a.shape(), b.shape());
}

}  // namespace

AmbientSpace AmbientSpace::euclidean(int m) {
  require(m >= 1, "euclidean space: dimension m must be >= 1");
  return AmbientSpace(Kind::euclidean, m, 0.0);
}

AmbientSpace AmbientSpace::circle(double circumference) {
  require(std::isfinite(circumference) && circumference > 0, "circle: circumference L must be > 0");
  return AmbientSpace(Kind::circle, 1, circumference);
}

Domain Domain::ball(const AmbientSpace& space, Point center, double r) {
  require_point(space, center, "ball");
  require(std::isfinite(r) && r > 0, "ball: radius r must be > 0");
  return Domain(space, Ball{std::move(center), r});
}

Domain Domain::annulus(const AmbientSpace& space, Point center, double r1, double r2) {
  require_point(space, center, "annulus");
  require(std::isfinite(r2) && r1 > 0 && r1 < r2, "annulus: radii must satisfy 0 < r1 < r2 < inf");
  return Domain(space, Annulus{std::move(center), r1, r2});
}

Domain Domain::box(const AmbientSpace& space, Point lo, Point hi) {
  require_point(space, lo, "box");
  require_point(space, hi, "box");
  require((lo.array() < hi.array()).all(), "box: lo < hi must hold componentwise");
  return Domain(space, Box{std::move(lo), std::move(hi)});
}

Domain Domain::arc(const AmbientSpace& space, double start, double length) {
  require(space.is_circle(), "arc: requires a circle space");
  require(std::isfinite(start), "arc: non-finite start");
  require(length > 0 && length <= space.circumference(), "arc: length must satisfy 0 < length <= L");
  return Domain(space, Arc{mod_positive(start, space.circumference()), length});
}

Domain Domain::disjoint_union(std::vector<Domain> parts) {
  require(!parts.empty(), "union: needs at least one part");
  std::vector<Domain> flat;
  for (auto& p : parts) {
    require(p.space() == parts.front().space(), "union: all parts must share one ambient space");
    for (auto& leaf : p.leaves()) flat.push_back(leaf);
  }
  for (std::size_t i = 0; i < flat.size(); ++i)
    for (std::size_t j = i + 1; j < flat.size(); ++j) {
      if (!disjoint(flat[i], flat[j])) {
        std::ostringstream os;
        os << "union: parts " << i << " and " << j << " are not provably disjoint";
        throw InvalidGeometry(os.str());
      }
    }
  if (flat.size() == 1) return flat.front();
  AmbientSpace s = flat.front().space();
  return Domain(s, DisjointUnion{std::move(flat)});
}

std::vector<Domain> Domain::leaves() const {
  if (auto* u = std::get_if<DisjointUnion>(shape_.get())) return u->parts;
  return {*this};
}

double unit_ball_volume(int m) {
  if (m < 1) throw DomainError("unit_ball_volume: m must be >= 1");
  // omega_m = 2 pi omega_{m-2} / m, exact from omega_1 = 2 and omega_2 = pi
  if (m == 1) return 2.0;
  if (m == 2) return std::numbers::pi;
  return 2 * std::numbers::pi / m * unit_ball_volume(m - 2);
}

double unit_sphere_area(int m) { return m * unit_ball_volume(m); }

double measure(const Domain& d) {
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        const int m = d.dim();
        if constexpr (std::is_same_v<S, Ball>) {
          return unit_ball_volume(m) * std::pow(s.r, m);
        } else if constexpr (std::is_same_v<S, Annulus>) {
          return unit_ball_volume(m) * (std::pow(s.r2, m) - std::pow(s.r1, m));
        } else if constexpr (std::is_same_v<S, Box>) {
          return (s.hi - s.lo).prod();
        } else if constexpr (std::is_same_v<S, Arc>) {
          return s.length;
        } else {
          double sum = 0;
          for (const auto& p : s.parts) sum += measure(p);
          return sum;
        }
      },
      d.shape());
}

namespace {

// Farthest distance from q to the closure of a Euclidean leaf part.
double farthest(const Domain& leaf, const Point& q) {
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Ball>) {
          return (q - s.center).norm() + s.r;
        } else if constexpr (std::is_same_v<S, Annulus>) {
          return (q - s.center).norm() + s.r2;
        } else if constexpr (std::is_same_v<S, Box>) {
          // farthest corner, coordinate-wise
          Eigen::ArrayXd a = (q - s.lo).array().abs().max((q - s.hi).array().abs());
          return a.matrix().norm();
        } else {
          throw DomainError("farthest: unsupported part");
        }
      },
      leaf.shape());
}

// Extremal points of a leaf: corners of boxes, axis poles of balls. Combined with
// farthest() this yields the exact union diameter for balls/annuli and boxes.
double pair_diameter(const Domain& a, const Domain& b) {
  return std::visit(
      [&](const auto& sa, const auto& sb) -> double {
        using A = std::decay_t<decltype(sa)>;
        using B = std::decay_t<decltype(sb)>;
        auto radius = [](const auto& s) {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, Ball>) return s.r;
          else return s.r2;
        };
        if constexpr ((std::is_same_v<A, Ball> || std::is_same_v<A, Annulus>) &&
                      (std::is_same_v<B, Ball> || std::is_same_v<B, Annulus>)) {
          return (sa.center - sb.center).norm() + radius(sa) + radius(sb);
        } else if constexpr (std::is_same_v<A, Box>) {
          // max over corners of a of farthest distance to b
          const Eigen::Index m = sa.lo.size();
          double best = 0;
          for (long mask = 0; mask < (1L << m); ++mask) {
            Point c(m);
            for (Eigen::Index i = 0; i < m; ++i) c[i] = (mask >> i) & 1 ? sa.hi[i] : sa.lo[i];
            best = std::max(best, farthest(b, c));
          }
          return best;
        } else if constexpr (std::is_same_v<B, Box>) {
          return pair_diameter(b, a);
        } else {
          throw DomainError("diameter: unsupported part pair");
        }
      },
      a.shape(), b.shape());
}

}  // namespace

double diameter(const Domain& d) {
  if (d.space().is_circle()) {
    const double l = d.space().circumference();
    auto arcs = *as_arcs(d);
    // candidate extremal points: arc endpoints; an antipodal pair inside the closure gives L/2
    std::vector<double> ends;
    for (const auto& a : arcs) {
      ends.push_back(a.start);
      ends.push_back(mod_positive(a.start + a.length, l));
    }
    auto in_closure = [&](double x) {
      for (const auto& a : arcs) {
        double off = mod_positive(x - a.start, l);
        if (off <= a.length * (1 + 1e-15) || off >= l * (1 - 1e-15)) return true;
      }
      return false;
    };
    for (double e : ends)
      if (in_closure(e + 0.5 * l)) return 0.5 * l;
    double best = 0;
    for (double e1 : ends)
      for (double e2 : ends) best = std::max(best, std::abs(wrap_centered(e1 - e2, l)));
    // a single short arc: its own length when shorter than L/2
    for (const auto& a : arcs) best = std::max(best, std::min(a.length, 0.5 * l));
    return best;
  }
  auto parts = d.leaves();
  double best = 0;
  for (const auto& a : parts)
    for (const auto& b : parts) best = std::max(best, pair_diameter(a, b));
  return best;
}

bool contains(const Domain& d, const Point& x) {
  if (x.size() != d.dim()) throw DomainError("contains: point dimension does not match domain");
  return std::visit(
      [&](const auto& s) -> bool {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Ball>) {
          return (x - s.center).squaredNorm() < s.r * s.r;
        } else if constexpr (std::is_same_v<S, Annulus>) {
          double r2 = (x - s.center).squaredNorm();
          return r2 > s.r1 * s.r1 && r2 < s.r2 * s.r2;
        } else if constexpr (std::is_same_v<S, Box>) {
          return (x.array() > s.lo.array()).all() && (x.array() < s.hi.array()).all();
        } else if constexpr (std::is_same_v<S, Arc>) {
          double off = mod_positive(x[0] - s.start, d.space().circumference());
          return off > 0 && off < s.length;
        } else {
          for (const auto& p : s.parts)
            if (contains(p, x)) return true;
          return false;
        }
      },
      d.shape());
}

Point sample_uniform(const Domain& d, RandomStream& rng) {
  const int m = d.dim();
  return std::visit(
      [&](const auto& s) -> Point {
        using S = std::decay_t<decltype(s)>;
        auto direction = [&] {
          Point g(m);
          double n2 = 0;
          do {
            for (int i = 0; i < m; ++i) g[i] = rng.normal();
            n2 = g.squaredNorm();
          } while (n2 == 0);
          return Point(g / std::sqrt(n2));
        };
        if constexpr (std::is_same_v<S, Ball>) {
          double r = s.r * std::pow(rng.uniform(), 1.0 / m);
          return s.center + r * direction();
        } else if constexpr (std::is_same_v<S, Annulus>) {
          double a = std::pow(s.r1, m), b = std::pow(s.r2, m);
          double r = std::pow(a + rng.uniform() * (b - a), 1.0 / m);
          return s.center + r * direction();
        } else if constexpr (std::is_same_v<S, Box>) {
          Point p(m);
          for (int i = 0; i < m; ++i) p[i] = s.lo[i] + rng.uniform() * (s.hi[i] - s.lo[i]);
          return p;
        } else if constexpr (std::is_same_v<S, Arc>) {
          Point p(1);
          p[0] = mod_positive(s.start + rng.uniform() * s.length, d.space().circumference());
          return p;
        } else {
          double total = measure(d);
          double u = rng.uniform() * total;
          double acc = 0;
          for (const auto& part : s.parts) {
            acc += measure(part);
            if (u < acc) return sample_uniform(part, rng);
          }
          return sample_uniform(s.parts.back(), rng);
        }
      },
      d.shape());
}

Point reference_point(const Domain& d) {
  return std::visit(
      [&](const auto& s) -> Point {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Ball> || std::is_same_v<S, Annulus>) {
          return s.center;
        } else if constexpr (std::is_same_v<S, Box>) {
          return 0.5 * (s.lo + s.hi);
        } else if constexpr (std::is_same_v<S, Arc>) {
          Point p(1);
          p[0] = s.start;
          return p;
        } else {
          return reference_point(s.parts.front());
        }
      },
      d.shape());
}

std::optional<RadialProfile> radial_profile(const Domain& d) {
  if (d.space().is_circle()) return std::nullopt;
  RadialProfile prof;
  bool first = true;
  for (const auto& leaf : d.leaves()) {
    const Point* c = nullptr;
    RadialShell shell{};
    if (auto* b = std::get_if<Ball>(&leaf.shape())) {
      c = &b->center;
      shell = {0.0, b->r};
    } else if (auto* a = std::get_if<Annulus>(&leaf.shape())) {
      c = &a->center;
      shell = {a->r1, a->r2};
    } else {
      return std::nullopt;
    }
    if (first) {
      prof.center = *c;
      first = false;
    } else if ((*c - prof.center).norm() != 0.0) {
      return std::nullopt;
    }
    prof.shells.push_back(shell);
  }
  std::sort(prof.shells.begin(), prof.shells.end(), [](auto& a, auto& b) { return a.lo < b.lo; });
  return prof;
}

std::optional<std::vector<Box>> as_boxes(const Domain& d) {
  if (d.space().is_circle()) return std::nullopt;
  std::vector<Box> out;
  const int m = d.dim();
  auto interval = [](double lo, double hi) {
    Point a(1), b(1);
    a[0] = lo;
    b[0] = hi;
    return Box{a, b};
  };
  for (const auto& leaf : d.leaves()) {
    if (auto* b = std::get_if<Box>(&leaf.shape())) {
      out.push_back(*b);
    } else if (auto* ball = std::get_if<Ball>(&leaf.shape()); ball && m == 1) {
      out.push_back(interval(ball->center[0] - ball->r, ball->center[0] + ball->r));
    } else if (auto* an = std::get_if<Annulus>(&leaf.shape()); an && m == 1) {
      out.push_back(interval(an->center[0] - an->r2, an->center[0] - an->r1));
      out.push_back(interval(an->center[0] + an->r1, an->center[0] + an->r2));
    } else {
      return std::nullopt;
    }
  }
  return out;
}

std::optional<std::vector<Arc>> as_arcs(const Domain& d) {
  if (!d.space().is_circle()) return std::nullopt;
  std::vector<Arc> out;
  for (const auto& leaf : d.leaves()) out.push_back(std::get<Arc>(leaf.shape()));
  return out;
}

double wrap_centered(double d, double l) {
  double r = mod_positive(d + 0.5 * l, l) - 0.5 * l;
  return r;
}

}  // namespace heatlab
