#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace iris {

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

struct Ellipse {
  Point2D center;
  double semi_a = 0.0;    // > 0, pixels
  double semi_b = 0.0;    // > 0, pixels
  double rotation = 0.0;  // radians, counter-clockwise
};

struct Polygon {
  std::vector<Point2D> vertices;  // >= 3, implicitly closed, simple
};

/// Closed parametric curve for the pupillary / limbic contours.
class Boundary {
 public:
  static Boundary ellipse(Point2D center, double semi_a, double semi_b,
                          double rotation = 0.0);
  static Boundary circle(Point2D center, double radius);
  static Boundary polygon(std::vector<Point2D> vertices);

  bool is_ellipse() const { return std::holds_alternative<Ellipse>(shape_); }
  const Ellipse& as_ellipse() const { return std::get<Ellipse>(shape_); }
  const Polygon& as_polygon() const { return std::get<Polygon>(shape_); }

  /// Ellipse center, or the area centroid for polygons.
  Point2D centroid() const;

 private:
  std::variant<Ellipse, Polygon> shape_;
};

struct EyeAnnotation {
  std::string image_id;
  Boundary pupil = Boundary::circle({0, 0}, 1.0);
  Boundary limbic = Boundary::circle({0, 0}, 2.0);
  Point2D center;  // normalization center
};

/// Binary raster, row-major, 1 = iris pixel.
struct SegmentationMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  bool at(int x, int y) const {
    return bits[static_cast<std::size_t>(y) * width + x] != 0;
  }
  std::int64_t count() const;
  bool operator==(const SegmentationMask&) const = default;
};

/// Intersection of the ray from `center` at angle `theta` with the boundary,
/// or nullopt when the positive ray misses it (center outside the boundary).
std::optional<Point2D> try_sample_boundary(const Boundary& b, Point2D center,
                                           double theta);

/// Throwing variant: error code NoIntersection when the ray misses.
Point2D sample_boundary(const Boundary& b, Point2D center, double theta);

/// Enclosed area: pi*a*b for ellipses, shoelace for polygons.
double boundary_area(const Boundary& b);

/// Scales the boundary about its own centroid by the linear factor
/// sqrt(area_factor), so the enclosed area scales by exactly area_factor.
/// area_factor == 1 returns the input unchanged.
Boundary scale_boundary_area(const Boundary& b, double area_factor);

/// Mean ray length from the centroid; exact radius for circles, closed-form
/// elliptic integral for ellipses, angular sampling for polygons.
double mean_radius(const Boundary& b);

/// Shifts the center along +x by offset_fraction times the limbic mean
/// radius. offset_fraction = 1 lands on a circular limbic boundary.
Point2D translate_center(Point2D center, const Boundary& limbic,
                         double offset_fraction);

/// Strict interior test. Polygon edges follow the even-odd crossing rule.
bool contains(const Boundary& b, Point2D p);

/// Pixel (x, y) is iris iff its center (x+0.5, y+0.5) is strictly inside the
/// limbic boundary and not strictly inside the pupillary one (points on the
/// pupillary boundary count as iris). Pixels outside the image are clipped.
SegmentationMask rasterize_iris_mask(const EyeAnnotation& annotation,
                                     int width, int height);

/// Checks the structural invariants (positive axes, >= 3 vertices,
/// pupil area < limbic area); throws InvariantViolation otherwise.
void validate_annotation(const EyeAnnotation& annotation);

}  // namespace iris
