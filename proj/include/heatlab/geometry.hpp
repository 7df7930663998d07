#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "heatlab/core.hpp"
#include "heatlab/random.hpp"

namespace heatlab {

// R^m, or the flat circle R / L Z (points on the circle are 1-vectors holding an angle-like coordinate).
class AmbientSpace {
 public:
  enum class Kind { euclidean, circle };

  static AmbientSpace euclidean(int m);
  static AmbientSpace circle(double circumference);

  Kind kind() const { return kind_; }
  bool is_circle() const { return kind_ == Kind::circle; }
  int dim() const { return dim_; }
  double circumference() const { return circumference_; }

  bool operator==(const AmbientSpace&) const = default;

 private:
  AmbientSpace(Kind k, int m, double l) : kind_(k), dim_(m), circumference_(l) {}
  Kind kind_;
  int dim_;
  double circumference_;
};

struct Ball {
  Point center;
  double r;
};
struct Annulus {
  Point center;
  double r1, r2;
};
struct Box {
  Point lo, hi;
};
struct Arc {
  double start;
  double length;
};

class Domain;
struct DisjointUnion {
  std::vector<Domain> parts;
};

// Immutable open set. Construct through the named factories, which enforce the shape invariants.
class Domain {
 public:
  using Shape = std::variant<Ball, Annulus, Box, Arc, DisjointUnion>;

  static Domain ball(const AmbientSpace& space, Point center, double r);
  static Domain annulus(const AmbientSpace& space, Point center, double r1, double r2);
  static Domain box(const AmbientSpace& space, Point lo, Point hi);
  static Domain arc(const AmbientSpace& space, double start, double length);
  // Nested unions are flattened. Parts must be pairwise disjoint for the supported pairs
  // (ball/ball, ball/annulus, concentric annuli, box/box, arc/arc); other pairs are rejected.
  static Domain disjoint_union(std::vector<Domain> parts);

  const AmbientSpace& space() const { return space_; }
  const Shape& shape() const { return *shape_; }
  int dim() const { return space_.dim(); }

  bool is_union() const { return std::holds_alternative<DisjointUnion>(*shape_); }
  // Leaf parts (the domain itself when it is not a union).
  std::vector<Domain> leaves() const;

 private:
  Domain(AmbientSpace s, Shape shape) : space_(s), shape_(std::make_shared<const Shape>(std::move(shape))) {}
  AmbientSpace space_;
  std::shared_ptr<const Shape> shape_;
};

// omega_m = pi^{m/2} / Gamma(m/2 + 1)
double unit_ball_volume(int m);
// |S^{m-1}| = m omega_m
double unit_sphere_area(int m);

double measure(const Domain& d);
double diameter(const Domain& d);
bool contains(const Domain& d, const Point& x);
Point sample_uniform(const Domain& d, RandomStream& rng);

// a point of the closure of d, used as an anchor for truncation balls
Point reference_point(const Domain& d);

// Radial description about a common center: open shells (r_lo, r_hi), r_lo == 0 for balls.
struct RadialShell {
  double lo, hi;
};
struct RadialProfile {
  Point center;
  std::vector<RadialShell> shells;  // sorted, disjoint
};
std::optional<RadialProfile> radial_profile(const Domain& d);

// Axis-aligned boxes covering the domain exactly (m = 1 balls and annuli become intervals).
std::optional<std::vector<Box>> as_boxes(const Domain& d);

std::optional<std::vector<Arc>> as_arcs(const Domain& d);

// geodesic angle difference on the circle mapped to [-L/2, L/2)
double wrap_centered(double d, double circumference);

}  // namespace heatlab
