#include "iris/perturblab.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "iris/errors.hpp"

namespace iris {

namespace {

std::vector<EyeAnnotation> annotations_of(const Dataset& ds) {
  std::vector<EyeAnnotation> out;
  out.reserve(ds.images.size());
  for (const DatasetImage& di : ds.images) out.push_back(di.annotation);
  return out;
}

std::vector<LabeledComparison> label_pairs(const Dataset& ds,
                                           const PairList& pairs,
                                           std::span<const double> distances) {
  std::vector<LabeledComparison> rows;
  rows.reserve(pairs.genuine.size() + pairs.imposter.size());
  std::size_t k = 0;
  for (const auto& [i, j] : pairs.genuine)
    rows.push_back({ds.images[i].image_id, ds.images[j].image_id, true,
                    distances[k++]});
  for (const auto& [i, j] : pairs.imposter)
    rows.push_back({ds.images[i].image_id, ds.images[j].image_id, false,
                    distances[k++]});
  return rows;
}

std::vector<std::pair<int, int>> all_pairs(const PairList& pairs) {
  std::vector<std::pair<int, int>> out;
  out.reserve(pairs.genuine.size() + pairs.imposter.size());
  out.insert(out.end(), pairs.genuine.begin(), pairs.genuine.end());
  out.insert(out.end(), pairs.imposter.begin(), pairs.imposter.end());
  return out;
}

RocSummary roc_of(std::span<const LabeledComparison> rows, double far) {
  return roc_summary(split_scores(rows), far);
}

/// Applies one scale step to the selected boundary; nullopt when the scaled
/// annotation violates pupil < limbic.
std::optional<EyeAnnotation> scale_annotation(const EyeAnnotation& ann,
                                              PerturbKind boundary,
                                              double scale) {
  EyeAnnotation out = ann;
  if (boundary == PerturbKind::limbic_scale)
    out.limbic = scale_boundary_area(ann.limbic, scale);
  else
    out.pupil = scale_boundary_area(ann.pupil, scale);
  if (!(boundary_area(out.pupil) < boundary_area(out.limbic)))
    return std::nullopt;
  return out;
}

/// Codes for every image under the given per-annotation perturbation;
/// images whose perturbed annotation is rejected get no code and land in
/// skipped.
std::vector<IrisCode> encode_dataset(
    const Dataset& ds, std::span<const std::optional<EyeAnnotation>> perturbed,
    const PipelineConfig& cfg, std::vector<std::string>* skipped) {
  std::vector<DatasetImage> kept_images;
  std::vector<EyeAnnotation> kept_annotations;
  std::vector<std::size_t> kept_index;
  for (std::size_t i = 0; i < ds.images.size(); ++i) {
    if (perturbed[i]) {
      kept_images.push_back(ds.images[i]);
      kept_annotations.push_back(*perturbed[i]);
      kept_index.push_back(i);
    } else if (skipped) {
      skipped->push_back(ds.images[i].image_id);
    }
  }
  const std::vector<NormalizedTexture> textures = normalize_all(
      kept_images, kept_annotations, cfg.texture_width, cfg.texture_height);
  const std::vector<IrisCode> kept_codes = encode_all(textures, cfg.encoder);

  std::vector<IrisCode> codes(ds.images.size());
  for (std::size_t k = 0; k < kept_index.size(); ++k)
    codes[kept_index[k]] = kept_codes[k];
  return codes;
}

bool has_code(const IrisCode& c) { return c.columns > 0; }

/// Matches the baseline pair protocol, dropping only pairs that touch a
/// skipped image.
std::vector<LabeledComparison> match_dataset(const Dataset& ds,
                                             const PairList& pairs,
                                             std::span<const IrisCode> probe,
                                             std::span<const IrisCode> gallery,
                                             const PipelineConfig& cfg) {
  std::vector<std::pair<int, int>> wanted;
  std::vector<bool> genuine_flag;
  for (const auto& [i, j] : pairs.genuine)
    if (has_code(probe[i]) && has_code(gallery[j])) {
      wanted.push_back({i, j});
      genuine_flag.push_back(true);
    }
  for (const auto& [i, j] : pairs.imposter)
    if (has_code(probe[i]) && has_code(gallery[j])) {
      wanted.push_back({i, j});
      genuine_flag.push_back(false);
    }

  // Cross-dataset matching reuses the pair kernel over a concatenated list:
  // probe indices stay, gallery indices move up by the probe count.
  std::vector<IrisCode> combined(probe.begin(), probe.end());
  combined.insert(combined.end(), gallery.begin(), gallery.end());
  const int offset = static_cast<int>(probe.size());
  std::vector<std::pair<int, int>> shifted;
  shifted.reserve(wanted.size());
  for (const auto& [i, j] : wanted) shifted.push_back({i, j + offset});

  // Placeholder codes of skipped images never reach match(); give them the
  // shared fingerprint so the batch pre-check accepts the list.
  IrisCode proto;
  for (const IrisCode& c : combined)
    if (has_code(c)) {
      proto = c;
      break;
    }
  for (IrisCode& c : combined)
    if (!has_code(c)) c = proto;

  const std::vector<double> distances =
      match_pairs(combined, shifted, cfg.max_shift);

  std::vector<LabeledComparison> rows;
  rows.reserve(wanted.size());
  for (std::size_t k = 0; k < wanted.size(); ++k)
    rows.push_back({ds.images[wanted[k].first].image_id,
                    ds.images[wanted[k].second].image_id, genuine_flag[k],
                    distances[k]});
  return rows;
}

}  // namespace

PipelineResult run_pipeline(const Dataset& ds, const PipelineConfig& cfg) {
  const std::vector<EyeAnnotation> anns = annotations_of(ds);
  const std::vector<NormalizedTexture> textures =
      normalize_all(ds.images, anns, cfg.texture_width, cfg.texture_height);
  const std::vector<IrisCode> codes = encode_all(textures, cfg.encoder);
  const PairList pairs = enumerate_pairs(ds);
  const std::vector<double> distances =
      match_pairs(codes, all_pairs(pairs), cfg.max_shift);
  PipelineResult result;
  result.scores = label_pairs(ds, pairs, distances);
  result.roc = roc_of(result.scores, cfg.far);
  return result;
}

SweepResult run_scale_sweep(const Dataset& ds, PerturbKind boundary,
                            std::span<const double> scales,
                            const PipelineConfig& cfg) {
  if (boundary != PerturbKind::limbic_scale &&
      boundary != PerturbKind::pupil_scale)
    raise("InvalidConfig", "scale sweep needs a boundary kind");
  if (std::find(scales.begin(), scales.end(), 1.0) == scales.end())
    raise("InvalidScaleSet", "scale sweep must include 1.0");

  const PairList pairs = enumerate_pairs(ds);
  SweepResult result;
  result.kind = boundary;
  result.baseline = run_pipeline(ds, cfg).roc;

  for (double s : scales) {
    SweepPoint point;
    point.parameter = s;
    std::vector<std::optional<EyeAnnotation>> perturbed;
    perturbed.reserve(ds.images.size());
    for (const DatasetImage& di : ds.images)
      perturbed.push_back(scale_annotation(di.annotation, boundary, s));
    const std::vector<IrisCode> codes =
        encode_dataset(ds, perturbed, cfg, &point.skipped_ids);
    const std::vector<LabeledComparison> rows =
        match_dataset(ds, pairs, codes, codes, cfg);
    point.roc = roc_of(rows, cfg.far);
    result.points.push_back(std::move(point));
  }
  return result;
}

SweepResult run_center_sweep(const Dataset& ds, std::span<const double> offsets,
                             const PipelineConfig& cfg) {
  if (std::find(offsets.begin(), offsets.end(), 0.0) == offsets.end())
    raise("InvalidScaleSet", "center sweep must include 0");

  const PairList pairs = enumerate_pairs(ds);
  SweepResult result;
  result.kind = PerturbKind::center_translate;
  result.baseline = run_pipeline(ds, cfg).roc;

  for (double t : offsets) {
    SweepPoint point;
    point.parameter = t;
    std::vector<std::optional<EyeAnnotation>> perturbed;
    perturbed.reserve(ds.images.size());
    for (const DatasetImage& di : ds.images) {
      EyeAnnotation ann = di.annotation;
      ann.center = translate_center(ann.center, ann.limbic, t);
      perturbed.push_back(std::move(ann));
    }
    const std::vector<IrisCode> codes =
        encode_dataset(ds, perturbed, cfg, &point.skipped_ids);
    const std::vector<LabeledComparison> rows =
        match_dataset(ds, pairs, codes, codes, cfg);
    point.roc = roc_of(rows, cfg.far);
    result.points.push_back(std::move(point));
  }
  return result;
}

SweepResult run_cross_scale(const Dataset& ds, PerturbKind boundary,
                            std::span<const double> base_scales, double delta,
                            const PipelineConfig& cfg) {
  if (boundary != PerturbKind::limbic_scale &&
      boundary != PerturbKind::pupil_scale)
    raise("InvalidConfig", "cross-scale sweep needs a boundary kind");
  if (delta < 0.0) raise("InvalidConfig", "delta must be >= 0");

  const auto partner_of = [delta](double s) {
    if (s > 1.0) return std::max(1.0, s - delta);
    if (s < 1.0) return std::min(1.0, s + delta);
    return 1.0 + delta;
  };

  // Encode once per distinct scale value in the union of bases and partners.
  std::map<double, std::vector<IrisCode>> codes_at;
  const auto codes_for = [&](double s) -> const std::vector<IrisCode>& {
    auto it = codes_at.find(s);
    if (it == codes_at.end()) {
      std::vector<std::optional<EyeAnnotation>> perturbed;
      perturbed.reserve(ds.images.size());
      for (const DatasetImage& di : ds.images)
        perturbed.push_back(scale_annotation(di.annotation, boundary, s));
      it = codes_at.emplace(s, encode_dataset(ds, perturbed, cfg, nullptr))
               .first;
    }
    return it->second;
  };

  const PairList pairs = enumerate_pairs(ds);
  SweepResult result;
  result.kind = PerturbKind::cross_scale;
  result.baseline = run_pipeline(ds, cfg).roc;

  for (double s : base_scales) {
    SweepPoint point;
    point.parameter = s;
    const std::vector<IrisCode>& probe = codes_for(s);
    const std::vector<IrisCode>& gallery = codes_for(partner_of(s));
    for (std::size_t i = 0; i < ds.images.size(); ++i)
      if (!has_code(probe[i]) || !has_code(gallery[i]))
        point.skipped_ids.push_back(ds.images[i].image_id);
    const std::vector<LabeledComparison> rows =
        match_dataset(ds, pairs, probe, gallery, cfg);
    point.roc = roc_of(rows, cfg.far);
    result.points.push_back(std::move(point));
  }
  return result;
}

Dataset inject_outlier_segmentation(const Dataset& ds,
                                    std::span<const std::string> image_ids,
                                    double scale) {
  Dataset out = ds;
  for (const std::string& id : image_ids) {
    bool found = false;
    for (DatasetImage& di : out.images) {
      if (di.image_id == id) {
        di.annotation.limbic = scale_boundary_area(di.annotation.limbic, scale);
        validate_annotation(di.annotation);
        out.injected_ids.push_back(id);
        found = true;
        break;
      }
    }
    if (!found) raise("UnknownImageId", "no image named '" + id + "'");
  }
  return out;
}

std::vector<double> default_scale_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 12; ++i) grid.push_back(0.5 + 0.05 * i);
  grid[10] = 1.0;  // keep the identity point exact
  return grid;
}

std::vector<double> default_offset_grid() {
  std::vector<double> grid;
  for (int i = -5; i <= 5; ++i) grid.push_back(0.1 * i);
  grid[5] = 0.0;
  return grid;
}

}  // namespace iris
