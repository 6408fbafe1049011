#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "iris/errors.hpp"
#include "iris/geom.hpp"
#include "iris/rng.hpp"

using namespace iris;

namespace {

constexpr double kPi = std::numbers::pi;

Boundary regular_polygon(Point2D center, double radius, int sides) {
  std::vector<Point2D> v;
  for (int i = 0; i < sides; ++i) {
    const double a = 2.0 * kPi * i / sides;
    v.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  return Boundary::polygon(std::move(v));
}

/// Pixel-count oracle: interior points on a unit grid.
std::int64_t count_inside(const Boundary& b, int width, int height) {
  std::int64_t n = 0;
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      if (contains(b, {x + 0.5, y + 0.5})) ++n;
  return n;
}

}  // namespace

TEST_CASE("sample_boundary on circles and ellipses") {
  const Boundary circle = Boundary::circle({0, 0}, 10.0);
  const Point2D p0 = sample_boundary(circle, {0, 0}, 0.0);
  CHECK(p0.x == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(p0.y == doctest::Approx(0.0).epsilon(1e-12));

  const Point2D p90 = sample_boundary(circle, {0, 0}, kPi / 2.0);
  CHECK(p90.x == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(p90.y == doctest::Approx(10.0).epsilon(1e-9));

  const Boundary ell = Boundary::ellipse({0, 0}, 4.0, 2.0);
  const Point2D pp = sample_boundary(ell, {0, 0}, kPi);
  CHECK(pp.x == doctest::Approx(-4.0).epsilon(1e-9));
  CHECK(pp.y == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("sample_boundary on polygons picks the nearest positive hit") {
  const Boundary square = Boundary::polygon({{0, 0}, {4, 0}, {4, 4}, {0, 4}});
  const Point2D hit = sample_boundary(square, {2, 2}, 0.0);
  CHECK(hit.x == doctest::Approx(4.0));
  CHECK(hit.y == doctest::Approx(2.0));

  // Ray away from the square misses it.
  CHECK_FALSE(try_sample_boundary(square, {10, 2}, 0.0).has_value());
  CHECK_THROWS_AS(sample_boundary(square, {10, 2}, 0.0), Error);
}

TEST_CASE("boundary_area analytic forms") {
  CHECK(boundary_area(Boundary::circle({3, 4}, 10.0)) ==
        doctest::Approx(100.0 * kPi).epsilon(1e-12));
  CHECK(boundary_area(Boundary::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}})) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("64-gon area approximates the circle and the pixel count") {
  const Boundary gon = regular_polygon({200, 200}, 100.0, 64);
  const double area = boundary_area(gon);
  const double circle_area = kPi * 100.0 * 100.0;
  CHECK(std::abs(area - circle_area) / circle_area < 0.006);

  const std::int64_t pixels = count_inside(gon, 400, 400);
  CHECK(std::abs(area - static_cast<double>(pixels)) /
            static_cast<double>(pixels) <
        0.02);
}

TEST_CASE("scale_boundary_area identity and circle halving") {
  const Boundary circle = Boundary::circle({5, 7}, 10.0);
  const Boundary same = scale_boundary_area(circle, 1.0);
  CHECK(same.as_ellipse().semi_a == 10.0);
  CHECK(same.as_ellipse().center.x == 5.0);

  const Boundary half = scale_boundary_area(circle, 0.5);
  CHECK(half.as_ellipse().semi_a == doctest::Approx(10.0 * std::sqrt(0.5)).epsilon(1e-12));
  CHECK(half.as_ellipse().center.x == 5.0);
  CHECK(half.as_ellipse().center.y == 7.0);

  CHECK_THROWS_AS(scale_boundary_area(circle, 0.0), Error);
  CHECK_THROWS_AS(scale_boundary_area(circle, -2.0), Error);
}

TEST_CASE("scale_boundary_area doubles an ellipse area") {
  const Boundary ell = Boundary::ellipse({1, 2}, 6.0, 3.0, 0.3);
  const Boundary twice = scale_boundary_area(ell, 2.0);
  CHECK(twice.as_ellipse().semi_a == doctest::Approx(6.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(twice.as_ellipse().semi_b == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(boundary_area(twice) / boundary_area(ell) ==
        doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("area law over boundaries and factors") {
  Rng rng(20240601);
  std::vector<Boundary> boundaries;
  boundaries.push_back(Boundary::circle({50, 50}, 20.0));
  boundaries.push_back(Boundary::ellipse({40, 60}, 25.0, 15.0, 0.7));
  boundaries.push_back(regular_polygon({50, 50}, 22.0, 9));
  for (int i = 0; i < 20; ++i) {
    const double a = rng.uniform(5.0, 30.0);
    const double b = rng.uniform(5.0, 30.0);
    boundaries.push_back(Boundary::ellipse(
        {rng.uniform(20, 80), rng.uniform(20, 80)}, a, b, rng.uniform(0, kPi)));
  }

  for (const Boundary& b : boundaries) {
    const double base = boundary_area(b);
    for (double s : {0.25, 0.5, 2.0, 4.0}) {
      const double scaled = boundary_area(scale_boundary_area(b, s));
      CHECK(std::abs(scaled - s * base) / (s * base) < 1e-9);
    }
  }
}

TEST_CASE("area law measured on the pixel grid") {
  const Boundary base = Boundary::circle({200, 200}, 80.0);
  const double base_pixels = static_cast<double>(count_inside(base, 400, 400));
  for (double s : {0.25, 0.5, 2.0}) {
    const double scaled_pixels =
        static_cast<double>(count_inside(scale_boundary_area(base, s), 400, 400));
    CHECK(std::abs(scaled_pixels / base_pixels - s) / s < 0.02);
  }
}

TEST_CASE("scaling composition") {
  Rng rng(7);
  const Boundary poly = regular_polygon({30, 30}, 12.0, 7);
  const Boundary ell = Boundary::ellipse({10, 20}, 8.0, 5.0, 1.1);
  for (int i = 0; i < 50; ++i) {
    const double s1 = rng.uniform(0.3, 3.0);
    const double s2 = rng.uniform(0.3, 3.0);
    const Boundary a = scale_boundary_area(scale_boundary_area(ell, s1), s2);
    const Boundary b = scale_boundary_area(ell, s1 * s2);
    CHECK(std::abs(a.as_ellipse().semi_a - b.as_ellipse().semi_a) < 1e-9);
    CHECK(std::abs(a.as_ellipse().semi_b - b.as_ellipse().semi_b) < 1e-9);

    const Boundary pa = scale_boundary_area(scale_boundary_area(poly, s1), s2);
    const Boundary pb = scale_boundary_area(poly, s1 * s2);
    for (std::size_t k = 0; k < pa.as_polygon().vertices.size(); ++k) {
      CHECK(std::abs(pa.as_polygon().vertices[k].x -
                     pb.as_polygon().vertices[k].x) < 1e-9);
      CHECK(std::abs(pa.as_polygon().vertices[k].y -
                     pb.as_polygon().vertices[k].y) < 1e-9);
    }
  }
}

TEST_CASE("a 5 percent area step is a 2.5 percent radius step") {
  const double up = std::sqrt(1.05) - 1.0;
  const double down = 1.0 - std::sqrt(0.95);
  CHECK(std::abs(up - 0.025) < 0.0005);
  CHECK(std::abs(down - 0.025) < 0.0005);
  // Matches the linear factors used by scale_boundary_area.
  const Boundary c = Boundary::circle({0, 0}, 100.0);
  CHECK(scale_boundary_area(c, 1.05).as_ellipse().semi_a ==
        doctest::Approx(100.0 * (1.0 + up)).epsilon(1e-12));
}

TEST_CASE("translate_center") {
  const Boundary limbic = Boundary::circle({50, 50}, 20.0);
  const Point2D c{50, 50};

  const Point2D same = translate_center(c, limbic, 0.0);
  CHECK(same.x == 50.0);
  CHECK(same.y == 50.0);

  const Point2D half = translate_center(c, limbic, 0.5);
  CHECK(half.x == doctest::Approx(60.0).epsilon(1e-12));
  CHECK(half.y == 50.0);

  const Point2D full = translate_center(c, limbic, 1.0);
  CHECK(full.x == doctest::Approx(70.0).epsilon(1e-12));
  // Lands on the boundary.
  const Point2D hit = sample_boundary(limbic, c, 0.0);
  CHECK(full.x == doctest::Approx(hit.x).epsilon(1e-12));
}

TEST_CASE("mean_radius of an ellipse matches ray sampling") {
  const Boundary ell = Boundary::ellipse({0, 0}, 10.0, 6.0, 0.4);
  double acc = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const Point2D p = sample_boundary(ell, {0, 0}, 2.0 * kPi * i / n);
    acc += std::hypot(p.x, p.y);
  }
  CHECK(mean_radius(ell) == doctest::Approx(acc / n).epsilon(1e-6));

  const Boundary square = Boundary::polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  // Mean ray length of a unit half-width square: (4/pi) * integral of
  // sec(t) over [0, pi/4] = (4/pi) * ln(1 + sqrt 2).
  CHECK(mean_radius(square) ==
        doctest::Approx(4.0 / kPi * std::log(1.0 + std::sqrt(2.0)))
            .epsilon(1e-4));
}

TEST_CASE("rasterize_iris_mask degenerate annulus is empty") {
  EyeAnnotation ann;
  ann.image_id = "degenerate";
  ann.pupil = Boundary::circle({4.5, 4.5}, 3.0);
  ann.limbic = Boundary::circle({4.5, 4.5}, 3.0);
  ann.center = {4.5, 4.5};
  const SegmentationMask m = rasterize_iris_mask(ann, 9, 9);
  CHECK(m.count() == 0);
}

TEST_CASE("rasterize_iris_mask concentric circles vs per-pixel oracle") {
  EyeAnnotation ann;
  ann.pupil = Boundary::circle({4.5, 4.5}, 2.0);
  ann.limbic = Boundary::circle({4.5, 4.5}, 4.0);
  ann.center = {4.5, 4.5};
  const SegmentationMask m = rasterize_iris_mask(ann, 9, 9);

  std::int64_t expected = 0;
  for (int y = 0; y < 9; ++y) {
    for (int x = 0; x < 9; ++x) {
      const double d = std::hypot(x + 0.5 - 4.5, y + 0.5 - 4.5);
      const bool iris = d < 4.0 && d >= 2.0;
      CHECK(m.at(x, y) == iris);
      if (iris) ++expected;
    }
  }
  CHECK(m.count() == expected);
}

TEST_CASE("rasterize_iris_mask clips a huge limbic boundary") {
  EyeAnnotation ann;
  ann.pupil = Boundary::circle({5, 5}, 1.0);
  ann.limbic = Boundary::circle({5, 5}, 100.0);
  ann.center = {5, 5};
  const SegmentationMask m = rasterize_iris_mask(ann, 9, 9);
  std::int64_t in_pupil = 0;
  for (int y = 0; y < 9; ++y)
    for (int x = 0; x < 9; ++x)
      if (std::hypot(x + 0.5 - 5.0, y + 0.5 - 5.0) < 1.0) ++in_pupil;
  CHECK(m.count() == 81 - in_pupil);
}

TEST_CASE("rasterization is deterministic") {
  EyeAnnotation ann;
  ann.pupil = Boundary::ellipse({31.7, 29.2}, 8.3, 7.9, 0.31);
  ann.limbic = Boundary::ellipse({31.7, 29.2}, 21.4, 20.2, 1.17);
  ann.center = {31.7, 29.2};
  const SegmentationMask a = rasterize_iris_mask(ann, 64, 64);
  const SegmentationMask b = rasterize_iris_mask(ann, 64, 64);
  CHECK(a == b);
}

TEST_CASE("validate_annotation enforces pupil < limbic") {
  EyeAnnotation ann;
  ann.image_id = "bad";
  ann.pupil = Boundary::circle({10, 10}, 8.0);
  ann.limbic = Boundary::circle({10, 10}, 5.0);
  CHECK_THROWS_AS(validate_annotation(ann), Error);
}
