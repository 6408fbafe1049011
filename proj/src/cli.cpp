#include "iris/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "iris/batch.hpp"
#include "iris/datasets.hpp"
#include "iris/errors.hpp"
#include "iris/perturblab.hpp"
#include "iris/rng.hpp"
#include "iris/segmetrics.hpp"
#include "iris/synthgen.hpp"
#include "iris/version.hpp"

namespace iris {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// Every run drops a manifest that pins its inputs and effective parameters;
/// re-running the same manifest reproduces the outputs byte for byte.
void write_manifest(const fs::path& out_dir, const std::string& subcommand,
                    const std::map<std::string, std::string>& params) {
  std::string canonical = subcommand;
  for (const auto& [k, v] : params) canonical += ";" + k + "=" + v;
  json m;
  m["tool"] = kToolName;
  m["version"] = kToolVersion;
  m["subcommand"] = subcommand;
  m["params"] = params;
  char fp[24];
  std::snprintf(fp, sizeof fp, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical)));
  m["config_fingerprint"] = fp;
  std::ofstream out(out_dir / "manifest.json", std::ios::binary);
  out << m.dump(2) << "\n";
}

void ensure_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) raise("ParseError", "cannot create output directory " + dir.string());
}

std::vector<fs::path> list_files(const fs::path& dir, const std::string& ext) {
  if (!fs::is_directory(dir))
    raise("ParseError", "not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ext)
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) raise("ParseError", "empty value list: '" + csv + "'");
  return out;
}

std::string grid_to_string(std::span<const double> grid) {
  std::string s;
  for (double v : grid) {
    if (!s.empty()) s += ",";
    s += fmt(v);
  }
  return s;
}

// ---------------------------------------------------------------- synth --

struct SynthOpts {
  std::string out;
  SynthConfig cfg;
};

int run_synth(const SynthOpts& o) {
  const fs::path out_dir(o.out);
  ensure_out_dir(out_dir);
  const Dataset ds = generate(o.cfg);
  std::vector<EyeAnnotation> anns;
  for (const DatasetImage& di : ds.images) {
    write_pgm_file(out_dir / (di.image_id + ".pgm"), di.image);
    anns.push_back(di.annotation);
  }
  write_annotations_file(out_dir / "annotations.txt", anns);
  write_manifest(out_dir, "synth",
                 {{"eyes", std::to_string(o.cfg.num_eyes)},
                  {"images_per_eye", std::to_string(o.cfg.images_per_eye)},
                  {"size", std::to_string(o.cfg.image_size)},
                  {"seed", std::to_string(o.cfg.seed)},
                  {"noise_sigma", fmt(o.cfg.noise_sigma)},
                  {"rotation_jitter", fmt(o.cfg.rotation_jitter)},
                  {"boundary_jitter", fmt(o.cfg.boundary_jitter)},
                  {"out", o.out}});
  std::cout << "wrote " << ds.images.size() << " images to " << o.out << "\n";
  return 0;
}

// -------------------------------------------------------------- segeval --

struct SegevalOpts {
  std::string pred, gt, images, out;
  std::string name = "segmentation";
};

int run_segeval(const SegevalOpts& o) {
  const fs::path out_dir(o.out);
  ensure_out_dir(out_dir);

  const std::vector<EyeAnnotation> gt = read_annotations_file(o.gt);
  std::vector<EyeAnnotation> pred_all = read_annotations_file(o.pred);
  std::map<std::string, const EyeAnnotation*> pred_by_id;
  for (const EyeAnnotation& a : pred_all) pred_by_id[a.image_id] = &a;

  std::vector<SegmentationMask> gt_masks, pred_masks;
  std::vector<std::string> ids;
  for (const EyeAnnotation& g : gt) {
    const auto it = pred_by_id.find(g.image_id);
    if (it == pred_by_id.end())
      raise("ComparisonSetMismatch",
            "prediction missing for image '" + g.image_id + "'");
    const GrayImage img = read_pgm_file(fs::path(o.images) / (g.image_id + ".pgm"));
    gt_masks.push_back(rasterize_iris_mask(g, img.width, img.height));
    pred_masks.push_back(
        rasterize_iris_mask(*it->second, img.width, img.height));
    ids.push_back(g.image_id);
  }

  const std::vector<ConfusionCounts> counts = confusion_all(pred_masks, gt_masks);
  const DatabaseMetrics db = database_metrics(counts);

  {
    std::ofstream out(out_dir / "report.csv", std::ios::binary);
    out << "# segmentation,fmeasure_pct,e1_pct,e2_pct\n";
    out << o.name << "," << fmt_fixed(db.fmeasure * 100.0, 2) << ","
        << fmt_fixed(db.e1 * 100.0, 2) << "," << fmt_fixed(db.e2 * 100.0, 2)
        << "\n";
  }
  {
    std::ofstream out(out_dir / "per_image.csv", std::ios::binary);
    out << "# imageId,tp,fp,fn,tn,precision,recall,fmeasure\n";
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const PerImageMetrics& m = db.per_image[i];
      out << ids[i] << "," << m.counts.tp << "," << m.counts.fp << ","
          << m.counts.fn << "," << m.counts.tn << "," << fmt(m.precision)
          << "," << fmt(m.recall) << "," << fmt(m.fmeasure) << "\n";
    }
  }
  {
    std::vector<double> f;
    for (const PerImageMetrics& m : db.per_image) f.push_back(m.fmeasure);
    const std::vector<std::size_t> outliers = z_outliers(f);
    std::ofstream out(out_dir / "outliers.csv", std::ios::binary);
    out << "# imageId,fmeasure\n";
    for (std::size_t idx : outliers)
      out << ids[idx] << "," << fmt(f[idx]) << "\n";
  }
  write_manifest(out_dir, "segeval",
                 {{"pred", o.pred},
                  {"gt", o.gt},
                  {"images", o.images},
                  {"name", o.name},
                  {"out", o.out}});
  std::cout << o.name << ": F=" << fmt_fixed(db.fmeasure * 100.0, 2)
            << "% E1=" << fmt_fixed(db.e1 * 100.0, 2)
            << "% E2=" << fmt_fixed(db.e2 * 100.0, 2) << "%\n";
  return 0;
}

// ------------------------------------------------------------ normalize --

struct NormalizeOpts {
  std::string images, annotations, out;
  int width = 512;
  int height = 64;
  bool dump_pgm = false;
};

int run_normalize(const NormalizeOpts& o) {
  const fs::path out_dir(o.out);
  ensure_out_dir(out_dir);
  const Dataset ds = load_dataset(o.images, o.annotations);
  std::vector<EyeAnnotation> anns;
  for (const DatasetImage& di : ds.images) anns.push_back(di.annotation);
  const std::vector<NormalizedTexture> textures =
      normalize_all(ds.images, anns, o.width, o.height);
  for (std::size_t i = 0; i < textures.size(); ++i) {
    write_texture_file(out_dir / (ds.images[i].image_id + ".ntx"), textures[i]);
    if (o.dump_pgm)
      write_pgm_file(out_dir / (ds.images[i].image_id + ".pgm"),
                     texture_to_image(textures[i]));
  }
  write_manifest(out_dir, "normalize",
                 {{"images", o.images},
                  {"annotations", o.annotations},
                  {"width", std::to_string(o.width)},
                  {"height", std::to_string(o.height)},
                  {"dump_pgm", o.dump_pgm ? "1" : "0"},
                  {"out", o.out}});
  std::cout << "wrote " << textures.size() << " textures to " << o.out << "\n";
  return 0;
}

// --------------------------------------------------------------- encode --

struct EncodeOpts {
  std::string textures, out;
  EncoderParams params;
};

int run_encode(const EncodeOpts& o) {
  const fs::path out_dir(o.out);
  ensure_out_dir(out_dir);
  const std::vector<fs::path> files = list_files(o.textures, ".ntx");
  if (files.empty()) raise("ParseError", "no .ntx files in " + o.textures);
  std::vector<NormalizedTexture> textures;
  textures.reserve(files.size());
  for (const fs::path& f : files) textures.push_back(read_texture_file(f));
  const std::vector<IrisCode> codes = encode_all(textures, o.params);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    std::ofstream out(out_dir / (files[i].stem().string() + ".irc"),
                      std::ios::binary);
    write_iris_code(out, codes[i]);
  }
  write_manifest(out_dir, "encode",
                 {{"textures", o.textures},
                  {"bands", std::to_string(o.params.bands)},
                  {"wavelength", fmt(o.params.wavelength)},
                  {"sigma", fmt(o.params.sigma_ratio)},
                  {"out", o.out}});
  std::cout << "wrote " << codes.size() << " codes to " << o.out << "\n";
  return 0;
}

// ---------------------------------------------------------------- match --

struct MatchOpts {
  std::string codes, out;
  int max_shift = 7;
};

int run_match(const MatchOpts& o) {
  const fs::path out_dir(o.out);
  ensure_out_dir(out_dir);
  const std::vector<fs::path> files = list_files(o.codes, ".irc");
  if (files.size() < 2) raise("ParseError", "need at least two .irc files");
  std::vector<IrisCode> codes;
  std::vector<std::string> ids;
  for (const fs::path& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) raise("ParseError", "cannot open " + f.string());
    codes.push_back(read_iris_code(in));
    ids.push_back(f.stem().string());
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < static_cast<int>(codes.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(codes.size()); ++j)
      pairs.push_back({i, j});
  const std::vector<double> distances = match_pairs(codes, pairs, o.max_shift);
  std::vector<LabeledComparison> rows;
  rows.reserve(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k)
    rows.push_back({ids[pairs[k].first], ids[pairs[k].second],
                    eye_of(ids[pairs[k].first]) == eye_of(ids[pairs[k].second]),
                    distances[k]});
  write_scores_file(out_dir / "scores.csv", rows);
  write_manifest(out_dir, "match",
                 {{"codes", o.codes},
                  {"max_shift", std::to_string(o.max_shift)},
                  {"out", o.out}});
  std::cout << "wrote " << rows.size() << " comparisons to " << o.out << "\n";
  return 0;
}

// ------------------------------------------------------------------ roc --

struct RocOpts {
  std::string scores, out;
  double far = 1e-4;
};

int run_roc(const RocOpts& o) {
  const fs::path out_dir(o.out);
  ensure_out_dir(out_dir);
  const std::vector<LabeledComparison> rows = read_scores_file(o.scores);
  const ScoreSet set = split_scores(rows);
  const RocSummary summary = roc_summary(set, o.far);
  {
    std::ofstream out(out_dir / "summary.csv", std::ios::binary);
    out << "# eer,auc,frr_at_far,far\n";
    out << fmt(summary.eer) << "," << fmt(summary.auc) << ","
        << fmt(summary.frr_at_far) << "," << fmt(summary.far) << "\n";
  }
  {
    std::ofstream out(out_dir / "curve.csv", std::ios::binary);
    out << "# threshold,far,frr\n";
    for (const RocPoint& p : roc_curve(set))
      out << fmt(p.threshold) << "," << fmt(p.far) << "," << fmt(p.frr) << "\n";
  }
  write_manifest(out_dir, "roc",
                 {{"scores", o.scores}, {"far", fmt(o.far)}, {"out", o.out}});
  std::cout << "eer=" << fmt(summary.eer) << " auc=" << fmt(summary.auc)
            << " frr@far=" << fmt(summary.frr_at_far) << "\n";
  return 0;
}

// ---------------------------------------------------------------- stats --

struct KsOpts {
  std::string a, b, out;
  std::string population = "genuine";
};

int run_stats_ks(const KsOpts& o) {
  const fs::path out_dir(o.out);
  ensure_out_dir(out_dir);
  const auto pick = [&](const std::string& file) {
    const ScoreSet s = split_scores(read_scores_file(file));
    if (o.population == "genuine") return s.genuine;
    if (o.population == "imposter") return s.imposter;
    raise("ParseError", "population must be genuine or imposter");
  };
  const std::vector<double> x = pick(o.a);
  const std::vector<double> y = pick(o.b);
  const KsResult r = ks_2sample(x, y);
  std::ofstream out(out_dir / "stats_ks.csv", std::ios::binary);
  out << "# population,statistic,p_value\n";
  out << o.population << "," << fmt(r.statistic) << "," << fmt(r.p_value)
      << "\n";
  write_manifest(out_dir, "stats",
                 {{"test", "ks"},
                  {"a", o.a},
                  {"b", o.b},
                  {"population", o.population},
                  {"out", o.out}});
  std::cout << "ks statistic=" << fmt(r.statistic)
            << " p=" << fmt(r.p_value) << "\n";
  return 0;
}

struct McNemarOpts {
  std::string a, b, out;
  double threshold_a = -1.0, threshold_b = -1.0;
  std::int64_t b_count = -1, c_count = -1, a_count = 0, d_count = 0;
};

int run_stats_mcnemar(const McNemarOpts& o) {
  const fs::path out_dir(o.out);
  ensure_out_dir(out_dir);
  McNemarTable table;
  if (o.b_count >= 0 || o.c_count >= 0) {
    if (o.b_count < 0 || o.c_count < 0)
      raise("ParseError", "--b-count and --c-count go together");
    table = {o.a_count, o.b_count, o.c_count, o.d_count};
  } else {
    if (o.a.empty() || o.b.empty())
      raise("ParseError", "need --a/--b score files or explicit counts");
    const std::vector<LabeledComparison> sys1 = read_scores_file(o.a);
    const std::vector<LabeledComparison> sys2 = read_scores_file(o.b);
    const double t1 = o.threshold_a >= 0.0
                          ? o.threshold_a
                          : eer_threshold(split_scores(sys1));
    const double t2 = o.threshold_b >= 0.0
                          ? o.threshold_b
                          : eer_threshold(split_scores(sys2));
    table = classify_for_mcnemar(sys1, sys2, t1, t2);
  }
  const McNemarResult r = mcnemar_edwards(table);
  std::ofstream out(out_dir / "stats_mcnemar.csv", std::ios::binary);
  out << "# a,b,c,d,n,chi_squared,reject_at_1pct\n";
  out << table.both_correct << "," << table.only_second_correct << ","
      << table.only_first_correct << "," << table.both_wrong << ","
      << table.total() << "," << fmt(r.chi_squared) << ","
      << (r.reject_at_1_percent ? "1" : "0") << "\n";
  write_manifest(out_dir, "stats", {{"test", "mcnemar"}, {"out", o.out}});
  std::cout << "chi_squared=" << fmt(r.chi_squared)
            << " reject_at_1pct=" << (r.reject_at_1_percent ? "yes" : "no")
            << "\n";
  return 0;
}

struct SpearmanOpts {
  std::string x, y, out;
  bool negate_y = false;
};

int run_stats_spearman(const SpearmanOpts& o) {
  const fs::path out_dir(o.out);
  ensure_out_dir(out_dir);
  const std::vector<double> x = parse_grid(o.x);
  std::vector<double> y = parse_grid(o.y);
  if (o.negate_y)
    for (double& v : y) v = -v;
  const double rho = spearman(x, y);
  std::ofstream out(out_dir / "stats_spearman.csv", std::ios::binary);
  out << "# rho\n" << fmt(rho) << "\n";
  write_manifest(out_dir, "stats",
                 {{"test", "spearman"},
                  {"x", o.x},
                  {"y", o.y},
                  {"negate_y", o.negate_y ? "1" : "0"},
                  {"out", o.out}});
  std::cout << "rho=" << fmt(rho) << "\n";
  return 0;
}

// ---------------------------------------------------------------- sweep --

struct SweepOpts {
  std::string images, annotations, out;
  std::string kind;  // limbic | pupil | center | cross
  std::string scales, offsets;
  double delta = 0.1;
  int width = 512, height = 64;
  EncoderParams params;
  int max_shift = 7;
  double far = 1e-4;
};

void write_sweep_files(const fs::path& out_dir, const SweepResult& result) {
  {
    std::ofstream out(out_dir / "series.csv", std::ios::binary);
    out << "# parameter,eer,auc,frr_at_far\n";
    for (const SweepPoint& p : result.points)
      out << fmt(p.parameter) << "," << fmt(p.roc.eer) << ","
          << fmt(p.roc.auc) << "," << fmt(p.roc.frr_at_far) << "\n";
  }
  {
    std::ofstream out(out_dir / "baseline.csv", std::ios::binary);
    out << "# eer,auc,frr_at_far,far\n";
    out << fmt(result.baseline.eer) << "," << fmt(result.baseline.auc) << ","
        << fmt(result.baseline.frr_at_far) << "," << fmt(result.baseline.far)
        << "\n";
  }
  {
    std::ofstream out(out_dir / "skipped.csv", std::ios::binary);
    out << "# parameter,imageId\n";
    for (const SweepPoint& p : result.points)
      for (const std::string& id : p.skipped_ids)
        out << fmt(p.parameter) << "," << id << "\n";
  }
}

int run_sweep(const SweepOpts& o) {
  const fs::path out_dir(o.out);
  ensure_out_dir(out_dir);
  const Dataset ds = load_dataset(o.images, o.annotations);

  PipelineConfig cfg;
  cfg.texture_width = o.width;
  cfg.texture_height = o.height;
  cfg.encoder = o.params;
  cfg.max_shift = o.max_shift;
  cfg.far = o.far;

  SweepResult result;
  std::map<std::string, std::string> params{
      {"images", o.images},   {"annotations", o.annotations},
      {"kind", o.kind},       {"width", std::to_string(o.width)},
      {"height", std::to_string(o.height)},
      {"bands", std::to_string(o.params.bands)},
      {"wavelength", fmt(o.params.wavelength)},
      {"sigma", fmt(o.params.sigma_ratio)},
      {"max_shift", std::to_string(o.max_shift)},
      {"far", fmt(o.far)},    {"out", o.out}};

  if (o.kind == "limbic" || o.kind == "pupil") {
    const std::vector<double> grid =
        o.scales.empty() ? default_scale_grid() : parse_grid(o.scales);
    params["scales"] = grid_to_string(grid);
    result = run_scale_sweep(ds,
                             o.kind == "limbic" ? PerturbKind::limbic_scale
                                                : PerturbKind::pupil_scale,
                             grid, cfg);
  } else if (o.kind == "center") {
    const std::vector<double> grid =
        o.offsets.empty() ? default_offset_grid() : parse_grid(o.offsets);
    params["offsets"] = grid_to_string(grid);
    result = run_center_sweep(ds, grid, cfg);
  } else if (o.kind == "cross") {
    const std::vector<double> grid =
        o.scales.empty() ? default_scale_grid() : parse_grid(o.scales);
    params["scales"] = grid_to_string(grid);
    params["delta"] = fmt(o.delta);
    result = run_cross_scale(ds, PerturbKind::limbic_scale, grid, o.delta, cfg);
  } else {
    raise("ParseError", "kind must be limbic, pupil, center or cross");
  }

  write_sweep_files(out_dir, result);
  write_manifest(out_dir, "sweep", params);
  std::cout << "wrote " << result.points.size() << " sweep points to "
            << o.out << "\n";
  return 0;
}

// --------------------------------------------------------------- tables --

int run_tables(const std::string& out_path) {
  const fs::path out_dir(out_path);
  ensure_out_dir(out_dir);
  const std::vector<Table3Entry> entries = recompute_table3(paper_tables());
  std::ofstream out(out_dir / "table3.csv", std::ios::binary);
  out << "# database,feature,sroc_eer,sroc_auc,sroc_op001,rounded_ties\n";
  for (const Table3Entry& e : entries) {
    std::string ties;
    if (e.eer_ties) ties += "eer";
    if (e.auc_ties) ties += ties.empty() ? "auc" : "|auc";
    if (e.op001_ties) ties += ties.empty() ? "op001" : "|op001";
    if (ties.empty()) ties = "-";
    out << e.database << "," << e.feature << "," << fmt_fixed(e.rho_eer, 3)
        << "," << fmt_fixed(e.rho_auc, 3) << "," << fmt_fixed(e.rho_op001, 3)
        << "," << ties << "\n";
  }
  write_manifest(out_dir, "tables", {{"out", out_path}});
  std::cout << "wrote table3.csv with " << entries.size() << " rows\n";
  return 0;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args) {
  CLI::App app{"iris segmentation-influence evaluation toolkit"};
  app.set_version_flag("--version", std::string(kToolVersion));
  int jobs = 0;
  app.add_option("--jobs", jobs, "max worker threads (0 = default)");

  SynthOpts synth_opts;
  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  synth->add_option("--out", synth_opts.out, "output directory")->required();
  synth->add_option("--eyes", synth_opts.cfg.num_eyes, "number of eyes");
  synth->add_option("--images-per-eye", synth_opts.cfg.images_per_eye,
                    "images per eye");
  synth->add_option("--size", synth_opts.cfg.image_size, "image side, pixels");
  synth->add_option("--seed", synth_opts.cfg.seed, "dataset seed");
  synth->add_option("--noise-sigma", synth_opts.cfg.noise_sigma,
                    "additive noise, gray levels");
  synth->add_option("--rotation-jitter", synth_opts.cfg.rotation_jitter,
                    "texture rotation jitter, radians");
  synth->add_option("--boundary-jitter", synth_opts.cfg.boundary_jitter,
                    "boundary radius jitter, fraction");

  SegevalOpts segeval_opts;
  CLI::App* segeval =
      app.add_subcommand("segeval", "segmentation accuracy vs ground truth");
  segeval->add_option("--pred", segeval_opts.pred, "predicted annotations")
      ->required();
  segeval->add_option("--gt", segeval_opts.gt, "ground-truth annotations")
      ->required();
  segeval->add_option("--images", segeval_opts.images, "image directory")
      ->required();
  segeval->add_option("--name", segeval_opts.name, "segmentation label");
  segeval->add_option("--out", segeval_opts.out, "output directory")->required();

  NormalizeOpts normalize_opts;
  CLI::App* normalize_cmd =
      app.add_subcommand("normalize", "rubbersheet-normalize a dataset");
  normalize_cmd->add_option("--images", normalize_opts.images, "image directory")
      ->required();
  normalize_cmd
      ->add_option("--annotations", normalize_opts.annotations,
                   "annotation file")
      ->required();
  normalize_cmd->add_option("--out", normalize_opts.out, "output directory")
      ->required();
  normalize_cmd->add_option("--width", normalize_opts.width, "angular samples");
  normalize_cmd->add_option("--height", normalize_opts.height, "radial samples");
  normalize_cmd->add_flag("--dump-pgm", normalize_opts.dump_pgm,
                          "also write 8-bit texture previews");

  EncodeOpts encode_opts;
  CLI::App* encode_cmd = app.add_subcommand("encode", "extract iris codes");
  encode_cmd->add_option("--textures", encode_opts.textures, ".ntx directory")
      ->required();
  encode_cmd->add_option("--out", encode_opts.out, "output directory")->required();
  encode_cmd->add_option("--bands", encode_opts.params.bands, "radial bands");
  encode_cmd->add_option("--wavelength", encode_opts.params.wavelength,
                         "filter wavelength, samples");
  encode_cmd->add_option("--sigma", encode_opts.params.sigma_ratio,
                         "filter bandwidth ratio");

  MatchOpts match_opts;
  CLI::App* match_cmd =
      app.add_subcommand("match", "match all code pairs in a directory");
  match_cmd->add_option("--codes", match_opts.codes, ".irc directory")->required();
  match_cmd->add_option("--out", match_opts.out, "output directory")->required();
  match_cmd->add_option("--max-shift", match_opts.max_shift,
                        "rotation compensation, columns");

  RocOpts roc_opts;
  CLI::App* roc_cmd = app.add_subcommand("roc", "ROC summary of a score file");
  roc_cmd->add_option("--scores", roc_opts.scores, "score file")->required();
  roc_cmd->add_option("--out", roc_opts.out, "output directory")->required();
  roc_cmd->add_option("--far", roc_opts.far, "operating FAR");

  CLI::App* stats = app.add_subcommand("stats", "statistical tests");
  stats->require_subcommand(1);
  KsOpts ks_opts;
  CLI::App* ks_cmd = stats->add_subcommand("ks", "two-sample KS test");
  ks_cmd->add_option("--a", ks_opts.a, "score file A")->required();
  ks_cmd->add_option("--b", ks_opts.b, "score file B")->required();
  ks_cmd->add_option("--population", ks_opts.population, "genuine | imposter");
  ks_cmd->add_option("--out", ks_opts.out, "output directory")->required();

  McNemarOpts mcnemar_opts;
  CLI::App* mcnemar_cmd =
      stats->add_subcommand("mcnemar", "Edwards-corrected McNemar test");
  mcnemar_cmd->add_option("--a", mcnemar_opts.a, "score file, system 1");
  mcnemar_cmd->add_option("--b", mcnemar_opts.b, "score file, system 2");
  mcnemar_cmd->add_option("--threshold-a", mcnemar_opts.threshold_a,
                          "decision threshold, system 1 (default: its EER)");
  mcnemar_cmd->add_option("--threshold-b", mcnemar_opts.threshold_b,
                          "decision threshold, system 2 (default: its EER)");
  mcnemar_cmd->add_option("--b-count", mcnemar_opts.b_count,
                          "only-system-2-correct count");
  mcnemar_cmd->add_option("--c-count", mcnemar_opts.c_count,
                          "only-system-1-correct count");
  mcnemar_cmd->add_option("--a-count", mcnemar_opts.a_count,
                          "both-correct count");
  mcnemar_cmd->add_option("--d-count", mcnemar_opts.d_count,
                          "both-wrong count");
  mcnemar_cmd->add_option("--out", mcnemar_opts.out, "output directory")
      ->required();

  SpearmanOpts spearman_opts;
  CLI::App* spearman_cmd =
      stats->add_subcommand("spearman", "rank correlation of two lists");
  spearman_cmd->add_option("--x", spearman_opts.x, "comma-separated values")
      ->required();
  spearman_cmd->add_option("--y", spearman_opts.y, "comma-separated values")
      ->required();
  spearman_cmd->add_flag("--negate-y", spearman_opts.negate_y,
                         "negate y before ranking");
  spearman_cmd->add_option("--out", spearman_opts.out, "output directory")
      ->required();

  SweepOpts sweep_opts;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "perturbation sweep over a dataset");
  sweep_cmd->add_option("--images", sweep_opts.images, "image directory")
      ->required();
  sweep_cmd
      ->add_option("--annotations", sweep_opts.annotations, "annotation file")
      ->required();
  sweep_cmd->add_option("--out", sweep_opts.out, "output directory")->required();
  sweep_cmd
      ->add_option("--kind", sweep_opts.kind, "limbic | pupil | center | cross")
      ->required();
  sweep_cmd->add_option("--scales", sweep_opts.scales,
                        "comma-separated area factors");
  sweep_cmd->add_option("--offsets", sweep_opts.offsets,
                        "comma-separated center offsets");
  sweep_cmd->add_option("--delta", sweep_opts.delta, "cross-scale difference");
  sweep_cmd->add_option("--width", sweep_opts.width, "angular samples");
  sweep_cmd->add_option("--height", sweep_opts.height, "radial samples");
  sweep_cmd->add_option("--bands", sweep_opts.params.bands, "radial bands");
  sweep_cmd->add_option("--wavelength", sweep_opts.params.wavelength,
                        "filter wavelength");
  sweep_cmd->add_option("--sigma", sweep_opts.params.sigma_ratio,
                        "filter bandwidth ratio");
  sweep_cmd->add_option("--max-shift", sweep_opts.max_shift,
                        "rotation compensation, columns");
  sweep_cmd->add_option("--far", sweep_opts.far, "operating FAR");

  std::string tables_out;
  CLI::App* tables_cmd =
      app.add_subcommand("tables", "recompute the published rank correlations");
  tables_cmd->add_option("--out", tables_out, "output directory")->required();

  app.require_subcommand(1);

  std::vector<const char*> argv;
  argv.push_back(kToolName);
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  set_max_threads(jobs);

  try {
    if (synth->parsed()) return run_synth(synth_opts);
    if (segeval->parsed()) return run_segeval(segeval_opts);
    if (normalize_cmd->parsed()) return run_normalize(normalize_opts);
    if (encode_cmd->parsed()) return run_encode(encode_opts);
    if (match_cmd->parsed()) return run_match(match_opts);
    if (roc_cmd->parsed()) return run_roc(roc_opts);
    if (stats->parsed()) {
      if (ks_cmd->parsed()) return run_stats_ks(ks_opts);
      if (mcnemar_cmd->parsed()) return run_stats_mcnemar(mcnemar_opts);
      if (spearman_cmd->parsed()) return run_stats_spearman(spearman_opts);
    }
    if (sweep_cmd->parsed()) return run_sweep(sweep_opts);
    if (tables_cmd->parsed()) return run_tables(tables_out);
  } catch (const Error& e) {
    json err;
    err["error"] = e.code();
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err;
    err["error"] = "Internal";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 3;
  }
  return 1;
}

}  // namespace iris
