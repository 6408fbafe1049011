#include "iris/rubbersheet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "iris/errors.hpp"

namespace iris {

namespace {

struct BoundaryPair {
  Point2D pupil;
  Point2D limbic;
  bool degenerate = false;
};

BoundaryPair sample_pair(const EyeAnnotation& ann, double theta) {
  BoundaryPair bp;
  const auto p = try_sample_boundary(ann.pupil, ann.center, theta);
  const auto l = try_sample_boundary(ann.limbic, ann.center, theta);
  bp.pupil = p.value_or(ann.center);
  bp.limbic = l.value_or(ann.center);
  if (!p || !l) bp.degenerate = true;
  const double width = std::hypot(bp.limbic.x - bp.pupil.x,
                                  bp.limbic.y - bp.pupil.y);
  if (width < 1e-9) bp.degenerate = true;
  return bp;
}

/// Bilinear sample on the pixel-center grid; clamps outside the image.
double bilinear(const GrayImage& img, Point2D p, bool* clamped) {
  double u = p.x - 0.5;
  double v = p.y - 0.5;
  const double umax = static_cast<double>(img.width - 1);
  const double vmax = static_cast<double>(img.height - 1);
  if (u < 0.0 || u > umax || v < 0.0 || v > vmax) {
    *clamped = true;
    u = std::clamp(u, 0.0, umax);
    v = std::clamp(v, 0.0, vmax);
  }
  const int x0 = std::min(static_cast<int>(u), img.width - 2 >= 0 ? img.width - 2 : 0);
  const int y0 = std::min(static_cast<int>(v), img.height - 2 >= 0 ? img.height - 2 : 0);
  const int x1 = std::min(x0 + 1, img.width - 1);
  const int y1 = std::min(y0 + 1, img.height - 1);
  const double dx = u - x0;
  const double dy = v - y0;
  const double top = (1.0 - dx) * img.at(x0, y0) + dx * img.at(x1, y0);
  const double bot = (1.0 - dx) * img.at(x0, y1) + dx * img.at(x1, y1);
  return ((1.0 - dy) * top + dy * bot) / 255.0;
}

}  // namespace

RubberSample rubbersheet_sample(const EyeAnnotation& ann, double theta,
                                double r) {
  const BoundaryPair bp = sample_pair(ann, theta);
  RubberSample s;
  s.point = {(1.0 - r) * bp.pupil.x + r * bp.limbic.x,
             (1.0 - r) * bp.pupil.y + r * bp.limbic.y};
  s.degenerate = bp.degenerate;
  return s;
}

Point2D rubbersheet_point(const EyeAnnotation& ann, double theta, double r) {
  return rubbersheet_sample(ann, theta, r).point;
}

NormalizedTexture normalize(const GrayImage& image, const EyeAnnotation& ann,
                            int width, int height) {
  if (width < 16 || height < 4)
    raise("InvalidDimensions", "texture must be at least 16x4");
  if (image.width <= 0 || image.height <= 0)
    raise("InvalidDimensions", "source image is empty");

  NormalizedTexture tex;
  tex.width = width;
  tex.height = height;
  tex.values.assign(static_cast<std::size_t>(width) * height, 0.0);
  tex.flags.assign(static_cast<std::size_t>(width) * height, 0);

  for (int j = 0; j < width; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / width;
    const BoundaryPair bp = sample_pair(ann, theta);
    for (int k = 0; k < height; ++k) {
      const double r = (k + 0.5) / height;
      const Point2D p{(1.0 - r) * bp.pupil.x + r * bp.limbic.x,
                      (1.0 - r) * bp.pupil.y + r * bp.limbic.y};
      bool clamped = false;
      const double value = bilinear(image, p, &clamped);
      const std::size_t idx = static_cast<std::size_t>(k) * width + j;
      tex.values[idx] = value;
      if (bp.degenerate || clamped) tex.flags[idx] = 1;
    }
  }
  return tex;
}

}  // namespace iris
