#pragma once

#include <span>
#include <utility>
#include <vector>

#include "iris/datasets.hpp"
#include "iris/encoder.hpp"
#include "iris/rubbersheet.hpp"
#include "iris/segmetrics.hpp"

namespace iris {

/// Batch kernels over whole datasets. Every kernel writes each output slot
/// independently, so the OpenMP versions are bit-identical to their serial
/// references for any thread count; the serial twins stay as the testing
/// reference and the benchmark baseline.
///
/// Inputs must be pre-validated: the kernels do not throw for valid data.

std::vector<SegmentationMask> rasterize_all(
    std::span<const EyeAnnotation> annotations, int width, int height);
std::vector<SegmentationMask> rasterize_all_serial(
    std::span<const EyeAnnotation> annotations, int width, int height);

std::vector<NormalizedTexture> normalize_all(
    std::span<const DatasetImage> images,
    std::span<const EyeAnnotation> annotations, int width, int height);
std::vector<NormalizedTexture> normalize_all_serial(
    std::span<const DatasetImage> images,
    std::span<const EyeAnnotation> annotations, int width, int height);

std::vector<IrisCode> encode_all(std::span<const NormalizedTexture> textures,
                                 const EncoderParams& params);
std::vector<IrisCode> encode_all_serial(
    std::span<const NormalizedTexture> textures, const EncoderParams& params);

std::vector<double> match_pairs(std::span<const IrisCode> codes,
                                std::span<const std::pair<int, int>> pairs,
                                int max_shift);
std::vector<double> match_pairs_serial(
    std::span<const IrisCode> codes,
    std::span<const std::pair<int, int>> pairs, int max_shift);

std::vector<ConfusionCounts> confusion_all(
    std::span<const SegmentationMask> pred,
    std::span<const SegmentationMask> gt);
std::vector<ConfusionCounts> confusion_all_serial(
    std::span<const SegmentationMask> pred,
    std::span<const SegmentationMask> gt);

/// Caps the worker count of all parallel kernels (no-op without OpenMP).
void set_max_threads(int jobs);

}  // namespace iris
