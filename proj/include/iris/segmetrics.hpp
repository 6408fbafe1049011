#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "iris/geom.hpp"

namespace iris {

struct ConfusionCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;

  std::int64_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionCounts&) const = default;
};

struct PrecisionRecallF {
  double precision = 0.0;
  double recall = 0.0;
  double fmeasure = 0.0;
};

struct PerImageMetrics {
  ConfusionCounts counts;
  double precision = 0.0;
  double recall = 0.0;
  double fmeasure = 0.0;
};

/// The five database-level accuracy measures plus the per-image components.
struct DatabaseMetrics {
  double e1 = 0.0;
  double e2 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double fmeasure = 0.0;
  std::vector<PerImageMetrics> per_image;
};

/// Four-way pixel classification of a prediction against ground truth.
/// Throws DimensionMismatch when the masks differ in size.
ConfusionCounts confusion(const SegmentationMask& pred,
                          const SegmentationMask& gt);

/// Mean rate of pixel disagreement, (1/N) * sum (fp_i + fn_i) / (m*n).
double e1(std::span<const ConfusionCounts> counts);

/// Averaged type-I/type-II error rate,
/// 1/2 * mean(fp/(fp+tn)) + 1/2 * mean(fn/(fn+tp)).
/// Zero-denominator terms contribute 0.
double e2(std::span<const ConfusionCounts> counts);

/// Mean per-image precision / recall / F (per-image harmonic means averaged).
/// Zero-denominator convention: P = 0 when tp+fp = 0, R = 0 when tp+fn = 0,
/// F = 0 when P+R = 0.
PrecisionRecallF precision_recall_f(std::span<const ConfusionCounts> counts);

DatabaseMetrics database_metrics(std::span<const ConfusionCounts> counts);

/// Indices whose F value has |z| > 3 under the population mean / standard
/// deviation. Empty when sigma = 0 or fewer than two values.
std::vector<std::size_t> z_outliers(std::span<const double> fvalues);

}  // namespace iris
