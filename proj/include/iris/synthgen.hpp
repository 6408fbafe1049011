#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "iris/datasets.hpp"

namespace iris {

struct SynthConfig {
  int num_eyes = 20;
  int images_per_eye = 5;
  int image_size = 128;            // square, pixels
  std::uint64_t seed = 42;
  double noise_sigma = 2.0;        // additive noise, gray levels
  double rotation_jitter = 0.04;   // per-image texture rotation, radians
  double boundary_jitter = 0.02;   // per-image radius jitter, fraction
};

/// Renders a deterministic dataset: each eye owns a pseudo-random polar
/// texture field (its identity); each image places that field into an
/// annulus between jittered elliptical boundaries with additive noise and a
/// small rotation. Annotations record the exact rendered boundaries, so the
/// rasterized ground truth matches the rendered annulus support bit for bit.
Dataset generate(const SynthConfig& config);

/// Single-threaded reference for the renderer; same output as generate().
Dataset generate_serial(const SynthConfig& config);

struct PairList {
  std::vector<std::pair<int, int>> genuine;   // index pairs, i < j
  std::vector<std::pair<int, int>> imposter;
};

/// All unordered image pairs, split by eye identity of the image ids.
PairList enumerate_pairs(const Dataset& dataset);

}  // namespace iris
