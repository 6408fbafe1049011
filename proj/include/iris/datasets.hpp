#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "iris/evalstats.hpp"
#include "iris/geom.hpp"
#include "iris/image.hpp"
#include "iris/rubbersheet.hpp"

namespace iris {

/// Binary P5 PGM with maxval <= 255. Canonical header "P5\n<w> <h>\n<max>\n"
/// round-trips byte-identically.
GrayImage read_pgm(std::istream& in);
GrayImage read_pgm_file(const std::filesystem::path& path);
void write_pgm(std::ostream& out, const GrayImage& image);
void write_pgm_file(const std::filesystem::path& path, const GrayImage& image);

/// Line-oriented annotation records:
///   imageId,<boundary>,<boundary>[,point:<x>:<y>]
/// with boundary one of
///   circle:<cx>:<cy>:<r>
///   ellipse:<cx>:<cy>:<a>:<b>:<rot>
///   polygon:<x1>:<y1>:...       (>= 3 vertices)
/// '#' starts a comment. Missing center defaults to the pupil centroid.
std::vector<EyeAnnotation> read_annotations(std::istream& in);
std::vector<EyeAnnotation> read_annotations_file(const std::filesystem::path& path);
void write_annotations(std::ostream& out, std::span<const EyeAnnotation> annotations);
void write_annotations_file(const std::filesystem::path& path,
                            std::span<const EyeAnnotation> annotations);

/// Score files: "idA,idB,label,distance" rows, label genuine|imposter.
std::vector<LabeledComparison> read_scores(std::istream& in);
std::vector<LabeledComparison> read_scores_file(const std::filesystem::path& path);
void write_scores(std::ostream& out, std::span<const LabeledComparison> rows);
void write_scores_file(const std::filesystem::path& path,
                       std::span<const LabeledComparison> rows);

ScoreSet split_scores(std::span<const LabeledComparison> rows);

/// Lossless texture container for pipeline staging: magic "NTX1",
/// u32 width, u32 height (little-endian), width*height float64 values,
/// width*height flag bytes.
void write_texture(std::ostream& out, const NormalizedTexture& texture);
NormalizedTexture read_texture(std::istream& in);
void write_texture_file(const std::filesystem::path& path,
                        const NormalizedTexture& texture);
NormalizedTexture read_texture_file(const std::filesystem::path& path);

/// Debug view of a texture as an 8-bit image (values * 255, half-up).
GrayImage texture_to_image(const NormalizedTexture& texture);

/// One image of a working dataset: pixels plus ground-truth annotation.
struct DatasetImage {
  std::string image_id;
  GrayImage image;
  EyeAnnotation annotation;
};

struct Dataset {
  std::vector<DatasetImage> images;
  std::vector<std::string> injected_ids;  // provenance of outlier injection
};

/// Eye identity of an image id: the part before the last '_'.
std::string eye_of(const std::string& image_id);

/// Loads PGM images named "<imageId>.pgm" for every annotation record.
Dataset load_dataset(const std::filesystem::path& images_dir,
                     const std::filesystem::path& annotations_file);

/// Published per-database segmentation accuracy row.
struct SegmentationRow {
  std::string database;
  std::string segmentation;
  double fmeasure = 0.0;  // percent
  double e1 = 0.0;        // percent
  double e2 = 0.0;        // percent
};

/// Published per-(database, segmentation, feature) recognition row.
struct CombinationRow {
  std::string database;
  std::string segmentation;
  std::string feature;
  double fmeasure = 0.0;  // percent
  double eer = 0.0;       // percent
  double auc = 0.0;       // percent
  double op001 = 0.0;     // percent, FRR at FAR = 0.01%
};

struct PaperTables {
  std::vector<SegmentationRow> segmentation_rows;
  std::vector<CombinationRow> combination_rows;
};

/// The embedded read-only fixture; integrity-checked against a frozen
/// checksum on first use.
const PaperTables& paper_tables();

struct Table3Entry {
  std::string database;
  std::string feature;
  double rho_eer = 0.0;
  double rho_auc = 0.0;
  double rho_op001 = 0.0;
  bool eer_ties = false;
  bool auc_ties = false;
  bool op001_ties = false;
};

/// Rank correlation of the F-measure against each ROC column over the six
/// segmentations of a database. EER and OP columns are negated before
/// correlating so that agreement in quality ordering reports positive rho.
/// Columns containing equal (rounded) published values are flagged as ties.
std::vector<Table3Entry> recompute_table3(const PaperTables& tables);

}  // namespace iris
