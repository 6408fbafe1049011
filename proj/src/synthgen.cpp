#include "iris/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "iris/errors.hpp"
#include "iris/rng.hpp"

namespace iris {

namespace {

constexpr double kPi = std::numbers::pi;

// Identity texture field: a coarse random grid in polar coordinates,
// bilinearly interpolated with angular wrap-around. The grid pitch (32
// angular cells over 2*pi) keeps the angular features near the encoder's
// default wavelength once unrolled to 512 columns.
constexpr int kFieldAngular = 32;
constexpr int kFieldRadial = 8;

struct TextureField {
  std::vector<double> grid;  // kFieldRadial rows x kFieldAngular cols, [0,1]

  double sample(double theta, double rho) const {
    double a = theta / (2.0 * kPi) * kFieldAngular;
    a -= std::floor(a / kFieldAngular) * kFieldAngular;  // wrap to [0, A)
    const double r = std::clamp(rho, 0.0, 1.0) * (kFieldRadial - 1);
    const int a0 = static_cast<int>(a) % kFieldAngular;
    const int a1 = (a0 + 1) % kFieldAngular;
    const int r0 = std::min(static_cast<int>(r), kFieldRadial - 2);
    const int r1 = r0 + 1;
    const double da = a - std::floor(a);
    const double dr = r - r0;
    const double top = (1.0 - da) * grid[r0 * kFieldAngular + a0] +
                       da * grid[r0 * kFieldAngular + a1];
    const double bot = (1.0 - da) * grid[r1 * kFieldAngular + a0] +
                       da * grid[r1 * kFieldAngular + a1];
    return (1.0 - dr) * top + dr * bot;
  }
};

struct EyeBase {
  TextureField field;
  double pupil_radius = 0.0;
  double limbic_radius = 0.0;
  double pupil_ratio = 1.0;  // semi_b / semi_a
  double limbic_ratio = 1.0;
  double pupil_angle = 0.0;
  double limbic_angle = 0.0;
};

std::vector<EyeBase> make_eyes(const SynthConfig& cfg) {
  std::vector<EyeBase> eyes(cfg.num_eyes);
  const double size = static_cast<double>(cfg.image_size);
  for (int e = 0; e < cfg.num_eyes; ++e) {
    Rng rng(derive_seed(cfg.seed, 1, static_cast<std::uint64_t>(e)));
    EyeBase& eye = eyes[e];
    eye.field.grid.resize(kFieldAngular * kFieldRadial);
    for (double& v : eye.field.grid) v = rng.uniform();
    eye.pupil_radius = size * rng.uniform(0.10, 0.15);
    eye.limbic_radius = size * rng.uniform(0.30, 0.36);
    eye.pupil_ratio = rng.uniform(0.95, 1.0);
    eye.limbic_ratio = rng.uniform(0.95, 1.0);
    eye.pupil_angle = rng.uniform(0.0, kPi);
    eye.limbic_angle = rng.uniform(0.0, kPi);
  }
  return eyes;
}

std::uint8_t quantize(double v) {
  const double scaled = std::floor(v * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

// Rendering is a pure function of (config, eye index, image index), so the
// image loop can run in any order on any number of threads.
DatasetImage render_image(const SynthConfig& cfg, const EyeBase& eye, int e,
                          int i) {
  Rng rng(derive_seed(cfg.seed, 2, static_cast<std::uint64_t>(e),
                      static_cast<std::uint64_t>(i)));
  const double size = static_cast<double>(cfg.image_size);

  const double jitter = cfg.boundary_jitter;
  const double pupil_r = eye.pupil_radius * (1.0 + jitter * rng.uniform(-1.0, 1.0));
  const double limbic_r = eye.limbic_radius * (1.0 + jitter * rng.uniform(-1.0, 1.0));
  const Point2D center{size * 0.5 + rng.uniform(-1.0, 1.0),
                       size * 0.5 + rng.uniform(-1.0, 1.0)};
  const double rotation = cfg.rotation_jitter * rng.uniform(-1.0, 1.0);

  EyeAnnotation ann;
  char id[32];
  std::snprintf(id, sizeof id, "e%03d_i%02d", e, i);
  ann.image_id = id;
  ann.pupil = Boundary::ellipse(center, pupil_r, pupil_r * eye.pupil_ratio,
                                eye.pupil_angle);
  ann.limbic = Boundary::ellipse(center, limbic_r, limbic_r * eye.limbic_ratio,
                                 eye.limbic_angle);
  ann.center = center;
  validate_annotation(ann);

  GrayImage img = make_image(cfg.image_size, cfg.image_size);
  for (int y = 0; y < cfg.image_size; ++y) {
    for (int x = 0; x < cfg.image_size; ++x) {
      const Point2D p{x + 0.5, y + 0.5};
      double v;
      const bool in_limbic = contains(ann.limbic, p);
      const bool in_pupil = contains(ann.pupil, p);
      if (in_limbic && !in_pupil) {
        // Iris annulus: identity texture in the same polar frame the
        // rubbersheet normalization will unroll.
        const double theta = std::atan2(p.y - center.y, p.x - center.x);
        const Point2D pb = sample_boundary(ann.pupil, center, theta);
        const Point2D lb = sample_boundary(ann.limbic, center, theta);
        const double rp = std::hypot(pb.x - center.x, pb.y - center.y);
        const double rl = std::hypot(lb.x - center.x, lb.y - center.y);
        const double d = std::hypot(p.x - center.x, p.y - center.y);
        const double rho =
            rl > rp ? std::clamp((d - rp) / (rl - rp), 0.0, 1.0) : 0.0;
        v = 0.30 + 0.40 * eye.field.sample(theta - rotation, rho);
      } else if (in_pupil) {
        v = 0.05;  // dark pupil (NIR-like ordering pupil < iris < sclera)
      } else {
        v = 0.85;  // bright sclera
      }
      v += cfg.noise_sigma / 255.0 * rng.normal();
      img.at(x, y) = quantize(v);
    }
  }

  DatasetImage out;
  out.image_id = ann.image_id;
  out.annotation = std::move(ann);
  out.image = std::move(img);
  return out;
}

void validate_config(const SynthConfig& cfg) {
  if (cfg.num_eyes < 2 || cfg.images_per_eye < 2 || cfg.image_size < 64)
    raise("InvalidConfig",
          "need >= 2 eyes, >= 2 images per eye and image size >= 64");
  if (cfg.noise_sigma < 0.0 || cfg.boundary_jitter < 0.0 ||
      cfg.boundary_jitter > 0.03 || cfg.rotation_jitter < 0.0)
    raise("InvalidConfig", "jitter parameters out of range (boundary <= 0.03)");
}

}  // namespace

Dataset generate(const SynthConfig& cfg) {
  validate_config(cfg);
  const std::vector<EyeBase> eyes = make_eyes(cfg);
  Dataset ds;
  const std::int64_t total =
      static_cast<std::int64_t>(cfg.num_eyes) * cfg.images_per_eye;
  ds.images.resize(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < total; ++k) {
    const int e = static_cast<int>(k / cfg.images_per_eye);
    const int i = static_cast<int>(k % cfg.images_per_eye);
    ds.images[static_cast<std::size_t>(k)] = render_image(cfg, eyes[e], e, i);
  }
  return ds;
}

Dataset generate_serial(const SynthConfig& cfg) {
  validate_config(cfg);
  const std::vector<EyeBase> eyes = make_eyes(cfg);
  Dataset ds;
  ds.images.reserve(static_cast<std::size_t>(cfg.num_eyes) * cfg.images_per_eye);
  for (int e = 0; e < cfg.num_eyes; ++e)
    for (int i = 0; i < cfg.images_per_eye; ++i)
      ds.images.push_back(render_image(cfg, eyes[e], e, i));
  return ds;
}

PairList enumerate_pairs(const Dataset& dataset) {
  PairList pairs;
  const int n = static_cast<int>(dataset.images.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool same_eye = eye_of(dataset.images[i].image_id) ==
                            eye_of(dataset.images[j].image_id);
      (same_eye ? pairs.genuine : pairs.imposter).push_back({i, j});
    }
  }
  return pairs;
}

}  // namespace iris
