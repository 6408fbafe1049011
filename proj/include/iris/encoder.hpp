#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "iris/rubbersheet.hpp"

namespace iris {

struct EncoderParams {
  int bands = 8;            // radial bands, must divide the texture height
  double wavelength = 18.0; // filter center wavelength in angular samples
  double sigma_ratio = 0.5; // sigma_f / f0 of the log-Gabor transfer

  /// Hash over the canonical parameter string; codes built with different
  /// fingerprints must never be compared.
  std::uint64_t fingerprint() const;
};

/// Phase code: `columns` angular positions x `bands` radial bands x 2 bits
/// (real sign, imaginary sign). Column c is stored packed in one 64-bit
/// word, bit index band*2 + component.
struct IrisCode {
  int columns = 0;
  int bands = 0;
  std::uint64_t fingerprint = 0;
  std::vector<std::uint64_t> column_bits;

  std::int64_t total_bits() const {
    return static_cast<std::int64_t>(columns) * bands * 2;
  }
  bool bit(int column, int band, int component) const {
    return (column_bits[column] >> (band * 2 + component)) & 1u;
  }
  bool operator==(const IrisCode&) const = default;
};

struct MatchScore {
  double distance = 0.0;  // fractional Hamming distance in [0, 1]
  int best_shift = 0;     // minimizing column shift
};

/// Averages each group of height/bands texture rows into a 1D signal,
/// filters it with a positive-frequency log-Gabor transfer
/// G(f) = exp(-(log(f/f0))^2 / (2*log(sigma_ratio)^2)) (zero DC) via
/// length-W circular frequency-domain multiplication, and quantizes the
/// complex response signs (component >= 0 encodes 1; responses below 1e-10
/// in magnitude are treated as zero).
IrisCode encode(const NormalizedTexture& texture, const EncoderParams& params);

/// Minimal fractional Hamming distance over circular column shifts
/// s in [-max_shift, +max_shift]; shift s compares a[c] with b[(c+s) mod W].
/// Ties prefer the smallest |s|, then the negative shift.
MatchScore match(const IrisCode& a, const IrisCode& b, int max_shift);

/// Binary code file: magic "IRC1", u32 columns, u32 bands, u64 fingerprint
/// (all little-endian), then the packed bit stream (flat bit index
/// column*2*bands + band*2 + component, little-endian bit order in bytes).
void write_iris_code(std::ostream& out, const IrisCode& code);
IrisCode read_iris_code(std::istream& in);

}  // namespace iris
