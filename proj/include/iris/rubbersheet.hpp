#pragma once

#include <cstdint>
#include <vector>

#include "iris/geom.hpp"
#include "iris/image.hpp"

namespace iris {

/// Polar iris texture: `width` angular columns by `height` radial rows,
/// gray values in [0, 1]. A set flag marks a degenerate or out-of-image
/// sample (kept in the texture, flagged for auditability).
struct NormalizedTexture {
  int width = 0;
  int height = 0;
  std::vector<double> values;        // row-major, height rows x width cols
  std::vector<std::uint8_t> flags;   // same layout, 1 = degenerate/clamped

  double at(int col, int row) const {
    return values[static_cast<std::size_t>(row) * width + col];
  }
  bool flagged(int col, int row) const {
    return flags[static_cast<std::size_t>(row) * width + col] != 0;
  }
  bool operator==(const NormalizedTexture&) const = default;
};

struct RubberSample {
  Point2D point;
  bool degenerate = false;
};

/// Rubbersheet point (1-r)*P(theta) + r*L(theta), with P and L sampled by
/// rays from the annotation's normalization center. When the ray misses a
/// boundary (translated center outside it), that endpoint falls back to the
/// center itself and the sample is marked degenerate; the same happens for a
/// zero-width annulus.
RubberSample rubbersheet_sample(const EyeAnnotation& annotation, double theta,
                                double r);

Point2D rubbersheet_point(const EyeAnnotation& annotation, double theta,
                          double r);

/// Samples the image on the polar grid theta_j = 2*pi*j/width,
/// r_k = (k+0.5)/height with bilinear interpolation. Out-of-image samples
/// clamp to the nearest pixel and set the flag.
NormalizedTexture normalize(const GrayImage& image,
                            const EyeAnnotation& annotation, int width,
                            int height);

}  // namespace iris
