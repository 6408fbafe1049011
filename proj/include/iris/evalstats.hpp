#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace iris {

/// Genuine / imposter dissimilarity populations. Lower distance = better
/// match; a comparison is accepted when its score is <= the threshold.
struct ScoreSet {
  std::vector<double> genuine;
  std::vector<double> imposter;
};

struct RocSummary {
  double eer = 0.0;
  double auc = 0.0;
  double frr_at_far = 0.0;
  double far = 0.0;  // operating FAR for frr_at_far
  bool operator==(const RocSummary&) const = default;
};

struct RocPoint {
  double threshold = 0.0;
  double far = 0.0;
  double frr = 0.0;
};

/// EER from the linear interpolation of the FAR/FRR crossing, AUC as the
/// probability that a random genuine score beats a random imposter score
/// (ties count 1/2), and the FRR at the largest threshold with FAR <= far.
RocSummary roc_summary(const ScoreSet& scores, double far);

/// Threshold at the FAR/FRR crossing (the first candidate threshold where
/// FAR >= FRR); used as the default operating point for system comparison.
double eer_threshold(const ScoreSet& scores);

/// FAR/FRR evaluated at every distinct score value, for plotting.
std::vector<RocPoint> roc_curve(const ScoreSet& scores);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov: D = sup |ECDF_x - ECDF_y|, p-value from
/// the asymptotic Kolmogorov distribution at effective size
/// n_x*n_y/(n_x+n_y).
KsResult ks_2sample(std::span<const double> x, std::span<const double> y);

/// 2x2 agreement table between two systems over the same comparisons.
struct McNemarTable {
  std::int64_t both_correct = 0;        // a
  std::int64_t only_second_correct = 0; // b
  std::int64_t only_first_correct = 0;  // c
  std::int64_t both_wrong = 0;          // d

  std::int64_t total() const {
    return both_correct + only_second_correct + only_first_correct + both_wrong;
  }
};

struct McNemarResult {
  double chi_squared = 0.0;
  bool reject_at_1_percent = false;  // chi^2 > 6.64
};

/// Continuity-corrected chi^2 = (|b - c| - 1)^2 / (b + c).
/// Throws DegenerateTable when b + c = 0.
McNemarResult mcnemar_edwards(const McNemarTable& table);

/// Rank correlation; ties receive average ranks. Throws LengthMismatch /
/// TooShort. Returns 0 when either rank vector is constant.
double spearman(std::span<const double> x, std::span<const double> y);

/// One labeled comparison of a score file row.
struct LabeledComparison {
  std::string id_a;
  std::string id_b;
  bool genuine = false;
  double distance = 0.0;
  bool operator==(const LabeledComparison&) const = default;
};

/// Classifies each shared comparison as correct (genuine accepted or
/// imposter rejected) per system and accumulates the agreement table.
/// The two sequences must cover the same comparisons with the same labels.
McNemarTable classify_for_mcnemar(std::span<const LabeledComparison> sys1,
                                  std::span<const LabeledComparison> sys2,
                                  double threshold1, double threshold2);

}  // namespace iris
