#include "iris/batch.hpp"

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "iris/errors.hpp"
#include "iris/segmetrics.hpp"

namespace iris {

namespace {

// Exceptions must not escape inside an OpenMP region, so the batch inputs
// are validated serially before the loops run.
void check_pairs(std::span<const IrisCode> codes,
                 std::span<const std::pair<int, int>> pairs) {
  const int n = static_cast<int>(codes.size());
  for (const auto& [a, b] : pairs)
    if (a < 0 || b < 0 || a >= n || b >= n)
      raise("DimensionMismatch", "pair index outside the code list");
  for (const IrisCode& c : codes) {
    if (c.fingerprint != codes[0].fingerprint)
      raise("FingerprintMismatch", "mixed encoder parameters in code list");
    if (c.columns != codes[0].columns || c.bands != codes[0].bands)
      raise("DimensionMismatch", "mixed code dimensions in code list");
  }
}

void check_mask_dims(std::span<const SegmentationMask> pred,
                     std::span<const SegmentationMask> gt) {
  if (pred.size() != gt.size())
    raise("DimensionMismatch", "mask list sizes differ");
  for (std::size_t i = 0; i < pred.size(); ++i)
    if (pred[i].width != gt[i].width || pred[i].height != gt[i].height)
      raise("DimensionMismatch", "mask dimensions differ");
}

}  // namespace

std::vector<SegmentationMask> rasterize_all(
    std::span<const EyeAnnotation> annotations, int width, int height) {
  std::vector<SegmentationMask> out(annotations.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(annotations.size()); ++i)
    out[i] = rasterize_iris_mask(annotations[i], width, height);
  return out;
}

std::vector<SegmentationMask> rasterize_all_serial(
    std::span<const EyeAnnotation> annotations, int width, int height) {
  std::vector<SegmentationMask> out;
  out.reserve(annotations.size());
  for (const EyeAnnotation& ann : annotations)
    out.push_back(rasterize_iris_mask(ann, width, height));
  return out;
}

void check_normalize_inputs(std::span<const DatasetImage> images,
                            std::span<const EyeAnnotation> annotations,
                            int width, int height) {
  if (images.size() != annotations.size())
    raise("DimensionMismatch", "image/annotation counts differ");
  if (width < 16 || height < 4)
    raise("InvalidDimensions", "texture must be at least 16x4");
  for (const DatasetImage& di : images)
    if (di.image.width <= 0 || di.image.height <= 0)
      raise("InvalidDimensions", "empty image in batch");
}

std::vector<NormalizedTexture> normalize_all(
    std::span<const DatasetImage> images,
    std::span<const EyeAnnotation> annotations, int width, int height) {
  check_normalize_inputs(images, annotations, width, height);
  std::vector<NormalizedTexture> out(images.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(images.size()); ++i)
    out[i] = normalize(images[i].image, annotations[i], width, height);
  return out;
}

std::vector<NormalizedTexture> normalize_all_serial(
    std::span<const DatasetImage> images,
    std::span<const EyeAnnotation> annotations, int width, int height) {
  check_normalize_inputs(images, annotations, width, height);
  std::vector<NormalizedTexture> out;
  out.reserve(images.size());
  for (std::size_t i = 0; i < images.size(); ++i)
    out.push_back(normalize(images[i].image, annotations[i], width, height));
  return out;
}

std::vector<IrisCode> encode_all(std::span<const NormalizedTexture> textures,
                                 const EncoderParams& params) {
  std::vector<IrisCode> out(textures.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(textures.size()); ++i)
    out[i] = encode(textures[i], params);
  return out;
}

std::vector<IrisCode> encode_all_serial(
    std::span<const NormalizedTexture> textures, const EncoderParams& params) {
  std::vector<IrisCode> out;
  out.reserve(textures.size());
  for (const NormalizedTexture& t : textures) out.push_back(encode(t, params));
  return out;
}

std::vector<double> match_pairs(std::span<const IrisCode> codes,
                                std::span<const std::pair<int, int>> pairs,
                                int max_shift) {
  check_pairs(codes, pairs);
  std::vector<double> out(pairs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(pairs.size()); ++i)
    out[i] = match(codes[pairs[i].first], codes[pairs[i].second], max_shift)
                 .distance;
  return out;
}

std::vector<double> match_pairs_serial(
    std::span<const IrisCode> codes,
    std::span<const std::pair<int, int>> pairs, int max_shift) {
  check_pairs(codes, pairs);
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs)
    out.push_back(match(codes[a], codes[b], max_shift).distance);
  return out;
}

std::vector<ConfusionCounts> confusion_all(
    std::span<const SegmentationMask> pred,
    std::span<const SegmentationMask> gt) {
  check_mask_dims(pred, gt);
  std::vector<ConfusionCounts> out(pred.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(pred.size()); ++i)
    out[i] = confusion(pred[i], gt[i]);
  return out;
}

std::vector<ConfusionCounts> confusion_all_serial(
    std::span<const SegmentationMask> pred,
    std::span<const SegmentationMask> gt) {
  check_mask_dims(pred, gt);
  std::vector<ConfusionCounts> out;
  out.reserve(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i)
    out.push_back(confusion(pred[i], gt[i]));
  return out;
}

void set_max_threads(int jobs) {
#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#else
  (void)jobs;
#endif
}

}  // namespace iris
