#include "iris/encoder.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include "iris/errors.hpp"
#include "iris/rng.hpp"

namespace iris {

namespace {

using Complex = std::complex<double>;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 transform. sign = -1 forward, +1 inverse
/// (inverse is unnormalized).
void fft_radix2(std::vector<Complex>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const Complex wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

std::vector<Complex> dft(const std::vector<Complex>& in, int sign) {
  const std::size_t n = in.size();
  if (is_power_of_two(n)) {
    std::vector<Complex> a = in;
    fft_radix2(a, sign);
    return a;
  }
  // Plain O(n^2) transform for non-power-of-two lengths.
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc(0.0, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      const double ang =
          sign * 2.0 * std::numbers::pi * static_cast<double>(k * t % n) /
          static_cast<double>(n);
      acc += in[t] * Complex(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

/// Positive-frequency log-Gabor transfer sampled on DFT bins.
std::vector<double> log_gabor_transfer(int n, double wavelength,
                                       double sigma_ratio) {
  std::vector<double> h(n, 0.0);
  const double f0 = 1.0 / wavelength;
  const double denom = 2.0 * std::log(sigma_ratio) * std::log(sigma_ratio);
  for (int k = 1; k <= n / 2; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(n);
    const double l = std::log(f / f0);
    h[k] = std::exp(-(l * l) / denom);
  }
  return h;  // h[0] = 0 (zero DC), negative frequencies zero
}

constexpr double kZeroFlush = 1e-10;

bool sign_bit(double v) {
  if (std::abs(v) < kZeroFlush) v = 0.0;
  return v >= 0.0;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
               static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
  out.write(b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>(v >> (8 * i)));
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) raise("TruncatedData", "unexpected end of code file");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) raise("TruncatedData", "unexpected end of code file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

}  // namespace

std::uint64_t EncoderParams::fingerprint() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "lg;bands=%d;wavelength=%.17g;sigma=%.17g",
                bands, wavelength, sigma_ratio);
  return fnv1a64(buf);
}

IrisCode encode(const NormalizedTexture& texture, const EncoderParams& params) {
  if (params.bands < 1 || params.bands > 32 ||
      texture.height % params.bands != 0)
    raise("BadBandCount", "band count must divide the texture height (max 32)");

  const int w = texture.width;
  const int rows_per_band = texture.height / params.bands;
  const std::vector<double> transfer =
      log_gabor_transfer(w, params.wavelength, params.sigma_ratio);

  IrisCode code;
  code.columns = w;
  code.bands = params.bands;
  code.fingerprint = params.fingerprint();
  code.column_bits.assign(static_cast<std::size_t>(w), 0);

  std::vector<Complex> signal(static_cast<std::size_t>(w));
  for (int band = 0; band < params.bands; ++band) {
    for (int j = 0; j < w; ++j) {
      double acc = 0.0;
      for (int r = 0; r < rows_per_band; ++r)
        acc += texture.at(j, band * rows_per_band + r);
      signal[j] = Complex(acc / rows_per_band, 0.0);
    }
    std::vector<Complex> spectrum = dft(signal, -1);
    for (int k = 0; k < w; ++k) spectrum[k] *= transfer[k];
    std::vector<Complex> response = dft(spectrum, +1);
    const double inv_n = 1.0 / static_cast<double>(w);
    for (int j = 0; j < w; ++j) {
      const Complex v = response[j] * inv_n;
      if (sign_bit(v.real()))
        code.column_bits[j] |= 1ULL << (band * 2);
      if (sign_bit(v.imag()))
        code.column_bits[j] |= 1ULL << (band * 2 + 1);
    }
  }
  return code;
}

MatchScore match(const IrisCode& a, const IrisCode& b, int max_shift) {
  if (a.fingerprint != b.fingerprint)
    raise("FingerprintMismatch", "codes built with different encoder parameters");
  if (a.columns != b.columns || a.bands != b.bands)
    raise("DimensionMismatch", "code dimensions differ");
  if (max_shift < 0) raise("InvalidConfig", "max_shift must be >= 0");

  const int w = a.columns;
  const double total = static_cast<double>(a.total_bits());
  MatchScore best{2.0, 0};
  // Shift order 0, -1, +1, -2, +2, ... so ties keep the smallest |s|,
  // negative first.
  for (int step = 0; step <= 2 * max_shift; ++step) {
    const int s = (step % 2 == 1) ? -(step + 1) / 2 : step / 2;
    std::int64_t differing = 0;
    for (int c = 0; c < w; ++c) {
      const int shifted = ((c + s) % w + w) % w;
      differing += std::popcount(a.column_bits[c] ^ b.column_bits[shifted]);
    }
    const double d = static_cast<double>(differing) / total;
    if (d < best.distance) best = {d, s};
  }
  return best;
}

void write_iris_code(std::ostream& out, const IrisCode& code) {
  out.write("IRC1", 4);
  put_u32(out, static_cast<std::uint32_t>(code.columns));
  put_u32(out, static_cast<std::uint32_t>(code.bands));
  put_u64(out, code.fingerprint);
  const std::int64_t nbits = code.total_bits();
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>((nbits + 7) / 8), 0);
  for (int c = 0; c < code.columns; ++c) {
    for (int k = 0; k < 2 * code.bands; ++k) {
      if ((code.column_bits[c] >> k) & 1u) {
        const std::int64_t idx = static_cast<std::int64_t>(c) * 2 * code.bands + k;
        bytes[idx / 8] |= static_cast<std::uint8_t>(1u << (idx % 8));
      }
    }
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

IrisCode read_iris_code(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "IRC1")
    raise("MalformedHeader", "not an iris code file");
  IrisCode code;
  code.columns = static_cast<int>(get_u32(in));
  code.bands = static_cast<int>(get_u32(in));
  code.fingerprint = get_u64(in);
  if (code.columns <= 0 || code.bands <= 0 || code.bands > 32)
    raise("MalformedHeader", "implausible code dimensions");
  code.column_bits.assign(static_cast<std::size_t>(code.columns), 0);
  const std::int64_t nbits = code.total_bits();
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>((nbits + 7) / 8));
  in.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!in) raise("TruncatedData", "code file shorter than header promises");
  for (int c = 0; c < code.columns; ++c) {
    for (int k = 0; k < 2 * code.bands; ++k) {
      const std::int64_t idx = static_cast<std::int64_t>(c) * 2 * code.bands + k;
      if ((bytes[idx / 8] >> (idx % 8)) & 1u)
        code.column_bits[c] |= 1ULL << k;
    }
  }
  return code;
}

}  // namespace iris
