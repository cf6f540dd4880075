#pragma once

// Small shared utilities: deterministic seeded streams, stable hashing and
// the number formatting used by every text emitter. Everything here must be
// reproducible byte-for-byte for a given input, so no locale, no wall clock.

#include <cstdint>
#include <cstdio>
#include <cmath>
#include <string>
#include <string_view>

namespace sliceiso {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Order-free combination of a seed with stream labels/indices. Used to derive
// independent substreams (per run, per flow) from one master seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(seed ^ 0x5851f42d4c957f2dULL) ^ splitmix64(a) ^ (b * 0x2545f4914f6cdd1dULL));
}

// Minimal counter-based generator. Unlike <random> distributions its output
// is pinned by this code alone, which keeps scenario files and metrics stable
// across standard library versions.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(splitmix64(seed ^ 0x9e3779b97f4a7c15ULL)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64(state_);
  }

  // uniform in [0, 1)
  double next_u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_u01(); }

  // uniform integer in [lo, hi] inclusive
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

private:
  std::uint64_t state_;
};

// Snap a generated quantity to the 2^-10 grid. Demands, delays and rates
// produced by the scenario generator are dyadic so that the additive
// bookkeeping done during commit/uncommit and objective evaluation stays
// exact in binary floating point.
inline double snap_to_grid(double v) { return std::round(v * 1024.0) / 1024.0; }

inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Six significant digits, the precision used by all CSV emitters.
inline std::string fmt_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Full-precision round-trippable text for LP files; integral values are
// printed without an exponent or trailing fraction.
inline std::string fmt_exact(double v) {
  char buf[64];
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    std::snprintf(buf, sizeof(buf), "%.0f", v);
  } else {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
  }
  return buf;
}

}  // namespace sliceiso
