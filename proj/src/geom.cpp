#include "iris/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "iris/errors.hpp"

namespace iris {

namespace {

constexpr double kPi = std::numbers::pi;

Point2D rotate(Point2D p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

double cross(Point2D a, Point2D b) { return a.x * b.y - a.y * b.x; }

double polygon_area_signed(const Polygon& poly) {
  double acc = 0.0;
  const auto& v = poly.vertices;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point2D& a = v[i];
    const Point2D& b = v[(i + 1) % n];
    acc += a.x * b.y - b.x * a.y;
  }
  return 0.5 * acc;
}

Point2D polygon_centroid(const Polygon& poly) {
  const auto& v = poly.vertices;
  double a = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point2D& p = v[i];
    const Point2D& q = v[(i + 1) % n];
    const double w = p.x * q.y - q.x * p.y;
    a += w;
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  a *= 0.5;
  if (std::abs(a) < 1e-300) {
    // Degenerate area: fall back to the vertex mean.
    double sx = 0.0, sy = 0.0;
    for (const Point2D& p : v) {
      sx += p.x;
      sy += p.y;
    }
    return {sx / v.size(), sy / v.size()};
  }
  return {cx / (6.0 * a), cy / (6.0 * a)};
}

/// Nearest positive ray parameter hitting the ellipse, in the ray
/// p(t) = origin + t * dir, or nullopt.
std::optional<double> ray_ellipse(const Ellipse& e, Point2D origin,
                                  Point2D dir) {
  // Work in the frame where the ellipse is axis-aligned at the origin.
  const Point2D o =
      rotate({origin.x - e.center.x, origin.y - e.center.y}, -e.rotation);
  const Point2D d = rotate(dir, -e.rotation);

  const double ox = o.x / e.semi_a, oy = o.y / e.semi_b;
  const double dx = d.x / e.semi_a, dy = d.y / e.semi_b;
  const double qa = dx * dx + dy * dy;
  const double qb = 2.0 * (ox * dx + oy * dy);
  const double qc = ox * ox + oy * oy - 1.0;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0 || qa == 0.0) return std::nullopt;
  const double sq = std::sqrt(disc);
  const double t1 = (-qb - sq) / (2.0 * qa);
  const double t2 = (-qb + sq) / (2.0 * qa);
  if (t1 >= 0.0) return t1;
  if (t2 >= 0.0) return t2;
  return std::nullopt;
}

std::optional<double> ray_polygon(const Polygon& poly, Point2D origin,
                                  Point2D dir) {
  const auto& v = poly.vertices;
  double best = std::numeric_limits<double>::infinity();
  bool hit = false;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point2D a = v[i];
    const Point2D b = v[(i + 1) % n];
    const Point2D edge{b.x - a.x, b.y - a.y};
    const double denom = cross(dir, edge);
    if (denom == 0.0) continue;  // parallel
    const Point2D ao{a.x - origin.x, a.y - origin.y};
    const double t = cross(ao, edge) / denom;
    const double u = cross(ao, dir) / denom;
    if (t >= 0.0 && u >= 0.0 && u < 1.0 && t < best) {
      best = t;
      hit = true;
    }
  }
  if (!hit) return std::nullopt;
  return best;
}

}  // namespace

Boundary Boundary::ellipse(Point2D center, double semi_a, double semi_b,
                           double rotation) {
  if (!(semi_a > 0.0) || !(semi_b > 0.0))
    raise("InvariantViolation", "ellipse semi-axes must be positive");
  Boundary b;
  b.shape_ = Ellipse{center, semi_a, semi_b, rotation};
  return b;
}

Boundary Boundary::circle(Point2D center, double radius) {
  return ellipse(center, radius, radius, 0.0);
}

Boundary Boundary::polygon(std::vector<Point2D> vertices) {
  if (vertices.size() < 3)
    raise("InvariantViolation", "polygon needs at least 3 vertices");
  Boundary b;
  b.shape_ = Polygon{std::move(vertices)};
  return b;
}

Point2D Boundary::centroid() const {
  if (is_ellipse()) return as_ellipse().center;
  return polygon_centroid(as_polygon());
}

std::int64_t SegmentationMask::count() const {
  std::int64_t n = 0;
  for (std::uint8_t b : bits) n += b;
  return n;
}

std::optional<Point2D> try_sample_boundary(const Boundary& b, Point2D center,
                                           double theta) {
  const Point2D dir{std::cos(theta), std::sin(theta)};
  std::optional<double> t;
  if (b.is_ellipse())
    t = ray_ellipse(b.as_ellipse(), center, dir);
  else
    t = ray_polygon(b.as_polygon(), center, dir);
  if (!t) return std::nullopt;
  return Point2D{center.x + *t * dir.x, center.y + *t * dir.y};
}

Point2D sample_boundary(const Boundary& b, Point2D center, double theta) {
  auto p = try_sample_boundary(b, center, theta);
  if (!p) raise("NoIntersection", "ray from center misses the boundary");
  return *p;
}

double boundary_area(const Boundary& b) {
  if (b.is_ellipse()) {
    const Ellipse& e = b.as_ellipse();
    return kPi * e.semi_a * e.semi_b;
  }
  return std::abs(polygon_area_signed(b.as_polygon()));
}

Boundary scale_boundary_area(const Boundary& b, double area_factor) {
  if (!(area_factor > 0.0))
    raise("NonPositiveScale", "area scale factor must be > 0");
  if (area_factor == 1.0) return b;
  const double k = std::sqrt(area_factor);
  if (b.is_ellipse()) {
    const Ellipse& e = b.as_ellipse();
    return Boundary::ellipse(e.center, e.semi_a * k, e.semi_b * k, e.rotation);
  }
  const Point2D c = b.centroid();
  std::vector<Point2D> scaled;
  scaled.reserve(b.as_polygon().vertices.size());
  for (const Point2D& v : b.as_polygon().vertices)
    scaled.push_back({c.x + k * (v.x - c.x), c.y + k * (v.y - c.y)});
  return Boundary::polygon(std::move(scaled));
}

double mean_radius(const Boundary& b) {
  if (b.is_ellipse()) {
    const Ellipse& e = b.as_ellipse();
    if (e.semi_a == e.semi_b) return e.semi_a;
    const double big = std::max(e.semi_a, e.semi_b);
    const double small = std::min(e.semi_a, e.semi_b);
    const double ecc = std::sqrt(1.0 - (small * small) / (big * big));
    // Mean ray length over angle: (2*small/pi) * K(ecc).
    return 2.0 * small / kPi * std::comp_ellint_1(ecc);
  }
  // Polygons: angular sampling from the centroid. Rays that miss (possible
  // for non-star-shaped polygons) are skipped.
  const Point2D c = b.centroid();
  constexpr int kRays = 3600;
  double sum = 0.0;
  int hits = 0;
  for (int i = 0; i < kRays; ++i) {
    const double theta = 2.0 * kPi * i / kRays;
    if (auto p = try_sample_boundary(b, c, theta)) {
      sum += std::hypot(p->x - c.x, p->y - c.y);
      ++hits;
    }
  }
  if (hits == 0) raise("NoIntersection", "centroid sees no boundary point");
  return sum / hits;
}

Point2D translate_center(Point2D center, const Boundary& limbic,
                         double offset_fraction) {
  return {center.x + offset_fraction * mean_radius(limbic), center.y};
}

bool contains(const Boundary& b, Point2D p) {
  if (b.is_ellipse()) {
    const Ellipse& e = b.as_ellipse();
    const Point2D q = rotate({p.x - e.center.x, p.y - e.center.y}, -e.rotation);
    const double u = q.x / e.semi_a, v = q.y / e.semi_b;
    return u * u + v * v < 1.0;
  }
  const auto& v = b.as_polygon().vertices;
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y > p.y) != (v[j].y > p.y) &&
        p.x < (v[j].x - v[i].x) * (p.y - v[i].y) / (v[j].y - v[i].y) + v[i].x)
      inside = !inside;
  }
  return inside;
}

SegmentationMask rasterize_iris_mask(const EyeAnnotation& annotation,
                                     int width, int height) {
  if (width <= 0 || height <= 0)
    raise("InvalidDimensions", "mask dimensions must be positive");
  SegmentationMask mask;
  mask.width = width;
  mask.height = height;
  mask.bits.assign(static_cast<std::size_t>(width) * height, 0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Point2D p{x + 0.5, y + 0.5};
      if (contains(annotation.limbic, p) && !contains(annotation.pupil, p))
        mask.bits[static_cast<std::size_t>(y) * width + x] = 1;
    }
  }
  return mask;
}

void validate_annotation(const EyeAnnotation& annotation) {
  const double pupil_area = boundary_area(annotation.pupil);
  const double limbic_area = boundary_area(annotation.limbic);
  if (!(pupil_area > 0.0) || !(limbic_area > 0.0))
    raise("InvariantViolation",
          "annotation '" + annotation.image_id + "': boundary area must be > 0");
  if (!(pupil_area < limbic_area))
    raise("InvariantViolation", "annotation '" + annotation.image_id +
                                    "': pupil area must be smaller than limbic area");
}

}  // namespace iris
