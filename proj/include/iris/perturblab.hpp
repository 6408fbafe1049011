#pragma once

#include <span>
#include <string>
#include <vector>

#include "iris/batch.hpp"
#include "iris/datasets.hpp"
#include "iris/encoder.hpp"
#include "iris/evalstats.hpp"
#include "iris/synthgen.hpp"

namespace iris {

enum class PerturbKind { limbic_scale, pupil_scale, center_translate, cross_scale };

/// Pipeline configuration shared by the baseline and every sweep point.
struct PipelineConfig {
  int texture_width = 512;
  int texture_height = 64;
  EncoderParams encoder;
  int max_shift = 7;
  double far = 1e-4;  // operating FAR for FRR reporting
};

struct PipelineResult {
  std::vector<LabeledComparison> scores;
  RocSummary roc;
};

/// Unperturbed normalize -> encode -> match-all-pairs -> ROC run.
PipelineResult run_pipeline(const Dataset& dataset, const PipelineConfig& config);

struct SweepPoint {
  double parameter = 0.0;
  RocSummary roc;
  std::vector<std::string> skipped_ids;  // rejected annotations at this point
};

struct SweepResult {
  PerturbKind kind;
  std::vector<SweepPoint> points;
  RocSummary baseline;  // pipeline at the identity parameter
};

/// Scales the chosen boundary of every annotation by each area factor and
/// reruns the pipeline on the same comparison pairs. The scale list must
/// contain 1.0; that identity point reproduces the baseline bit-exactly.
/// Annotations whose scaled pupil reaches the limbic area are skipped and
/// reported, dropping only their pairs.
SweepResult run_scale_sweep(const Dataset& dataset, PerturbKind boundary,
                            std::span<const double> scales,
                            const PipelineConfig& config);

/// Translates every normalization center along +x by offset * limbic mean
/// radius for each offset; the offset list must contain 0.
SweepResult run_center_sweep(const Dataset& dataset,
                             std::span<const double> offsets,
                             const PipelineConfig& config);

/// For each base scale s, probe codes at scale s are matched against gallery
/// codes at the scale one delta step toward the unscaled version
/// (s > 1 pairs with max(1, s - delta), s < 1 with min(1, s + delta));
/// at s = 1 the partner is 1 + delta, so the zero-difference point stays
/// comparable to the plain scale sweep.
SweepResult run_cross_scale(const Dataset& dataset, PerturbKind boundary,
                            std::span<const double> base_scales, double delta,
                            const PipelineConfig& config);

/// Returns the dataset with only the listed images' limbic boundaries scaled
/// by the given area factor, recording them in injected_ids.
Dataset inject_outlier_segmentation(const Dataset& dataset,
                                    std::span<const std::string> image_ids,
                                    double scale);

/// Default sweep grids.
std::vector<double> default_scale_grid();   // 0.5 .. 1.1 step 0.05
std::vector<double> default_offset_grid();  // -0.5 .. 0.5 step 0.1

}  // namespace iris
