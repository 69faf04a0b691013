#pragma once

#include <cstdint>

#include "gv/hyperbolic.hpp"

namespace gv {

// splitmix64 finalizer applied to seed + counter * golden gamma
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter);

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(counter_hash(seed, stream)) {}
  std::uint64_t next() { return counter_hash(seed_, counter_++); }
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Sum of random Fourier modes with integer wavenumbers |m|_inf <= kmax, scaled to max |f| = amplitude.
// Grid independent: the same seed gives samples of the same function on any grid.
Field random_smooth_field(const Grid2D& g, std::uint64_t seed, double amplitude, int kmax = 4);

// Random phases, amplitudes (1 + |m|^2)^{-decay/2} on integer modes 0 < |m|_inf <= kmax; scaled to L2 norm `l2`.
// Grid independent while kmax < n/2.
Field random_power_law_field(const Grid2D& g, std::uint64_t seed, double l2, double decay, int kmax);

// Point sample (h, v1, v2) with |h| <= hmax, |v| <= vmax
struct RandomPoint {
  double h, v1, v2;
};
RandomPoint random_point(CounterRng& rng, double hmax, double vmax);

// Smooth space-time fields that solve nothing: h, v1, v2 sums of modes cos(k.x + omega t + phase).
Trajectory random_trajectory(const Grid2D& g, int n_slices, double dt, std::uint64_t seed, double amplitude = 0.2,
                             int kmax = 3);

}  // namespace gv
