#include "iris/segmetrics.hpp"

#include <cmath>

#include "iris/errors.hpp"

namespace iris {

namespace {

double ratio_or_zero(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

PerImageMetrics per_image(const ConfusionCounts& c) {
  PerImageMetrics m;
  m.counts = c;
  m.precision = ratio_or_zero(c.tp, c.tp + c.fp);
  m.recall = ratio_or_zero(c.tp, c.tp + c.fn);
  const double pr = m.precision + m.recall;
  m.fmeasure = pr == 0.0 ? 0.0 : 2.0 * m.recall * m.precision / pr;
  return m;
}

void require_non_empty(std::span<const ConfusionCounts> counts) {
  if (counts.empty()) raise("EmptySequence", "no confusion counts given");
}

}  // namespace

ConfusionCounts confusion(const SegmentationMask& pred,
                          const SegmentationMask& gt) {
  if (pred.width != gt.width || pred.height != gt.height)
    raise("DimensionMismatch", "mask dimensions differ");
  ConfusionCounts c;
  const std::size_t n = pred.bits.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool p = pred.bits[i] != 0;
    const bool g = gt.bits[i] != 0;
    if (p && g)
      ++c.tp;
    else if (p && !g)
      ++c.fp;
    else if (!p && g)
      ++c.fn;
    else
      ++c.tn;
  }
  return c;
}

double e1(std::span<const ConfusionCounts> counts) {
  require_non_empty(counts);
  double acc = 0.0;
  for (const ConfusionCounts& c : counts)
    acc += static_cast<double>(c.fp + c.fn) / static_cast<double>(c.total());
  return acc / static_cast<double>(counts.size());
}

double e2(std::span<const ConfusionCounts> counts) {
  require_non_empty(counts);
  double type1 = 0.0, type2 = 0.0;
  for (const ConfusionCounts& c : counts) {
    type1 += ratio_or_zero(c.fp, c.fp + c.tn);
    type2 += ratio_or_zero(c.fn, c.fn + c.tp);
  }
  const double n = static_cast<double>(counts.size());
  return 0.5 * (type1 / n) + 0.5 * (type2 / n);
}

PrecisionRecallF precision_recall_f(std::span<const ConfusionCounts> counts) {
  require_non_empty(counts);
  double p = 0.0, r = 0.0, f = 0.0;
  for (const ConfusionCounts& c : counts) {
    const PerImageMetrics m = per_image(c);
    p += m.precision;
    r += m.recall;
    f += m.fmeasure;
  }
  const double n = static_cast<double>(counts.size());
  return {p / n, r / n, f / n};
}

DatabaseMetrics database_metrics(std::span<const ConfusionCounts> counts) {
  require_non_empty(counts);
  DatabaseMetrics db;
  db.e1 = e1(counts);
  db.e2 = e2(counts);
  const PrecisionRecallF prf = precision_recall_f(counts);
  db.precision = prf.precision;
  db.recall = prf.recall;
  db.fmeasure = prf.fmeasure;
  db.per_image.reserve(counts.size());
  for (const ConfusionCounts& c : counts) db.per_image.push_back(per_image(c));
  return db;
}

std::vector<std::size_t> z_outliers(std::span<const double> fvalues) {
  std::vector<std::size_t> out;
  const std::size_t n = fvalues.size();
  if (n < 2) return out;
  double mean = 0.0;
  for (double v : fvalues) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : fvalues) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);  // population variance
  if (var == 0.0) return out;
  const double sigma = std::sqrt(var);
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs((fvalues[i] - mean) / sigma) > 3.0) out.push_back(i);
  return out;
}

}  // namespace iris
