#include "iris/evalstats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "iris/errors.hpp"

namespace iris {

namespace {

void require_scores(const ScoreSet& s) {
  if (s.genuine.empty() || s.imposter.empty())
    raise("EmptyPopulation", "both genuine and imposter scores are required");
}

/// FAR/FRR at every candidate threshold (sorted distinct score values),
/// preceded by a -inf sentinel point (FAR 0, FRR 1).
std::vector<RocPoint> curve_points(const ScoreSet& s) {
  std::vector<double> gen = s.genuine;
  std::vector<double> imp = s.imposter;
  std::sort(gen.begin(), gen.end());
  std::sort(imp.begin(), imp.end());

  std::vector<double> thresholds;
  thresholds.reserve(gen.size() + imp.size());
  std::merge(gen.begin(), gen.end(), imp.begin(), imp.end(),
             std::back_inserter(thresholds));
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  std::vector<RocPoint> points;
  points.reserve(thresholds.size() + 1);
  points.push_back({-std::numeric_limits<double>::infinity(), 0.0, 1.0});
  const double ng = static_cast<double>(gen.size());
  const double ni = static_cast<double>(imp.size());
  for (double t : thresholds) {
    const auto gle = std::upper_bound(gen.begin(), gen.end(), t) - gen.begin();
    const auto ile = std::upper_bound(imp.begin(), imp.end(), t) - imp.begin();
    points.push_back({t, static_cast<double>(ile) / ni,
                      1.0 - static_cast<double>(gle) / ng});
  }
  return points;
}

/// Mann-Whitney AUC in exact half-units: counts 2 per genuine < imposter
/// pair and 1 per tie.
double auc_pair_probability(const ScoreSet& s) {
  std::vector<double> gen = s.genuine;
  std::vector<double> imp = s.imposter;
  std::sort(gen.begin(), gen.end());
  std::sort(imp.begin(), imp.end());
  std::int64_t half_units = 0;
  std::size_t lo = 0, hi = 0;
  for (double v : imp) {
    while (lo < gen.size() && gen[lo] < v) ++lo;
    if (hi < lo) hi = lo;
    while (hi < gen.size() && gen[hi] <= v) ++hi;
    half_units += 2 * static_cast<std::int64_t>(lo) +
                  static_cast<std::int64_t>(hi - lo);
  }
  return 0.5 * static_cast<double>(half_units) /
         static_cast<double>(gen.size() * imp.size());
}

}  // namespace

std::vector<RocPoint> roc_curve(const ScoreSet& scores) {
  require_scores(scores);
  return curve_points(scores);
}

double eer_threshold(const ScoreSet& scores) {
  require_scores(scores);
  const std::vector<RocPoint> pts = curve_points(scores);
  for (const RocPoint& p : pts)
    if (p.far >= p.frr) return p.threshold;
  return pts.back().threshold;
}

RocSummary roc_summary(const ScoreSet& scores, double far) {
  require_scores(scores);
  if (!(far > 0.0 && far < 1.0))
    raise("InvalidConfig", "operating FAR must lie in (0, 1)");

  const std::vector<RocPoint> pts = curve_points(scores);

  RocSummary out;
  out.far = far;
  out.auc = auc_pair_probability(scores);

  // EER: first point where FAR >= FRR closes the crossing interval; linear
  // interpolation of both curves inside it meets where the gap vanishes.
  out.eer = 0.5;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double gap = pts[i].frr - pts[i].far;
    if (gap <= 0.0) {
      if (gap == 0.0) {
        out.eer = pts[i].far;
      } else {
        const double prev_gap = pts[i - 1].frr - pts[i - 1].far;
        const double alpha = prev_gap / (prev_gap - gap);
        out.eer = pts[i - 1].far + alpha * (pts[i].far - pts[i - 1].far);
      }
      break;
    }
  }

  // FRR at the largest threshold with FAR <= far.
  double frr = 1.0;
  for (const RocPoint& p : pts) {
    if (p.far <= far) frr = p.frr;
  }
  out.frr_at_far = frr;
  return out;
}

KsResult ks_2sample(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty())
    raise("EmptySequence", "both samples must be non-empty");
  std::vector<double> a(x.begin(), x.end());
  std::vector<double> b(y.begin(), y.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());

  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }

  // Survival function of the Kolmogorov distribution at sqrt(n_e) * D,
  // series truncated at 100 terms; below lambda = 0.2 it is 1 to within
  // double precision.
  const double n_eff = na * nb / (na + nb);
  const double lambda = std::sqrt(n_eff) * d;
  double p = 1.0;
  if (lambda >= 0.2) {
    double acc = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double term = std::exp(-2.0 * k * k * lambda * lambda);
      acc += (k % 2 == 1) ? term : -term;
    }
    p = std::clamp(2.0 * acc, 0.0, 1.0);
  }
  return {d, p};
}

McNemarResult mcnemar_edwards(const McNemarTable& table) {
  const std::int64_t b = table.only_second_correct;
  const std::int64_t c = table.only_first_correct;
  if (b + c == 0)
    raise("DegenerateTable", "no disagreeing comparisons (b + c = 0)");
  const double diff = std::abs(static_cast<double>(b - c)) - 1.0;
  const double chi = diff * diff / static_cast<double>(b + c);
  return {chi, chi > 6.64};
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) raise("LengthMismatch", "sequences differ in length");
  if (x.size() < 2) raise("TooShort", "need at least two observations");

  const auto ranks = [](std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
      i = j + 1;
    }
    return r;
  };

  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mx;
    const double dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

McNemarTable classify_for_mcnemar(std::span<const LabeledComparison> sys1,
                                  std::span<const LabeledComparison> sys2,
                                  double threshold1, double threshold2) {
  if (sys1.size() != sys2.size())
    raise("ComparisonSetMismatch", "systems cover different comparison counts");

  std::map<std::pair<std::string, std::string>, const LabeledComparison*> index;
  for (const LabeledComparison& c : sys2) index[{c.id_a, c.id_b}] = &c;

  McNemarTable table;
  for (const LabeledComparison& c1 : sys1) {
    const auto it = index.find({c1.id_a, c1.id_b});
    if (it == index.end())
      raise("ComparisonSetMismatch",
            "comparison " + c1.id_a + "/" + c1.id_b + " missing in system 2");
    const LabeledComparison& c2 = *it->second;
    if (c1.genuine != c2.genuine)
      raise("ComparisonSetMismatch",
            "label disagreement on " + c1.id_a + "/" + c1.id_b);
    const auto correct = [](const LabeledComparison& c, double t) {
      return c.genuine ? c.distance <= t : c.distance > t;
    };
    const bool ok1 = correct(c1, threshold1);
    const bool ok2 = correct(c2, threshold2);
    if (ok1 && ok2)
      ++table.both_correct;
    else if (!ok1 && ok2)
      ++table.only_second_correct;
    else if (ok1 && !ok2)
      ++table.only_first_correct;
    else
      ++table.both_wrong;
  }
  return table;
}

}  // namespace iris
