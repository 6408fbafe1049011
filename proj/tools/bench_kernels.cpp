// Timings of the OpenMP batch kernels against their serial references on a
// synthetic workload. Build with OpenMP to see the speedups.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "iris/batch.hpp"
#include "iris/perturblab.hpp"
#include "iris/synthgen.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(auto fn) {
  const auto start = Clock::now();
  fn();
  const auto stop = Clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-14s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;

  iris::SynthConfig cfg;
  cfg.num_eyes = quick ? 4 : 16;
  cfg.images_per_eye = quick ? 3 : 6;
  cfg.image_size = quick ? 96 : 256;

#ifdef _OPENMP
  std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled (serial build)\n");
#endif

  iris::Dataset ds_serial, ds_parallel;
  const double gen_serial =
      time_ms([&] { ds_serial = iris::generate_serial(cfg); });
  const double gen_parallel = time_ms([&] { ds_parallel = iris::generate(cfg); });
  report("generate", gen_serial, gen_parallel);

  const iris::Dataset& ds = ds_parallel;
  std::vector<iris::EyeAnnotation> anns;
  for (const auto& di : ds.images) anns.push_back(di.annotation);

  std::vector<iris::SegmentationMask> masks;
  const double rast_serial = time_ms([&] {
    masks = iris::rasterize_all_serial(anns, cfg.image_size, cfg.image_size);
  });
  std::vector<iris::SegmentationMask> masks_p;
  const double rast_parallel = time_ms([&] {
    masks_p = iris::rasterize_all(anns, cfg.image_size, cfg.image_size);
  });
  report("rasterize_all", rast_serial, rast_parallel);

  const int tex_w = quick ? 256 : 512;
  const int tex_h = 64;
  std::vector<iris::NormalizedTexture> textures;
  const double norm_serial = time_ms([&] {
    textures = iris::normalize_all_serial(ds.images, anns, tex_w, tex_h);
  });
  std::vector<iris::NormalizedTexture> textures_p;
  const double norm_parallel = time_ms([&] {
    textures_p = iris::normalize_all(ds.images, anns, tex_w, tex_h);
  });
  report("normalize_all", norm_serial, norm_parallel);

  const iris::EncoderParams params;
  std::vector<iris::IrisCode> codes;
  const double enc_serial =
      time_ms([&] { codes = iris::encode_all_serial(textures, params); });
  std::vector<iris::IrisCode> codes_p;
  const double enc_parallel =
      time_ms([&] { codes_p = iris::encode_all(textures, params); });
  report("encode_all", enc_serial, enc_parallel);

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < static_cast<int>(codes.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(codes.size()); ++j)
      pairs.push_back({i, j});
  std::vector<double> d_serial, d_parallel;
  const double match_serial =
      time_ms([&] { d_serial = iris::match_pairs_serial(codes, pairs, 7); });
  const double match_parallel =
      time_ms([&] { d_parallel = iris::match_pairs(codes, pairs, 7); });
  report("match_pairs", match_serial, match_parallel);

  // The whole point of the serial references: identical results.
  bool ok = ds_serial.images.size() == ds_parallel.images.size() &&
            masks == masks_p && textures == textures_p && codes == codes_p &&
            d_serial == d_parallel;
  for (std::size_t i = 0; ok && i < ds_serial.images.size(); ++i)
    ok = ds_serial.images[i].image == ds_parallel.images[i].image;
  std::printf("serial/parallel outputs identical: %s\n", ok ? "yes" : "NO");
  return ok ? 0 : 1;
}
