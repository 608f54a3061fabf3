// rng.hpp
// Deterministic random streams. mt19937_64 is fully specified by the
// standard, so identical (master, stream) pairs reproduce identical bits on
// any conforming implementation. Gaussians come from Box-Muller rather than
// std::normal_distribution, whose algorithm is implementation-defined.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "bosesep/tensor_linalg.hpp"

namespace bosesep {

struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  // Derived child stream; mixing keeps distinct (stream, i) pairs distinct.
  Seed substream(std::uint64_t i) const;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline Seed Seed::substream(std::uint64_t i) const {
  return {master, splitmix64(stream ^ splitmix64(i + 0x632BE59BD9B4E019ULL))};
}

class RandomStream {
 public:
  static constexpr const char* algorithm = "mt19937_64+box-muller";

  explicit RandomStream(Seed seed)
      : engine_(splitmix64(splitmix64(seed.master) ^ splitmix64(~seed.stream))) {}

  double uniform() {  // [0, 1)
    return std::generate_canonical<double, 53>(engine_);
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  ComplexVector complex_gaussian(Index d) {
    ComplexVector v(d);
    for (Index i = 0; i < d; ++i) {
      double re = gaussian();
      double im = gaussian();
      v(i) = Complex(re, im);
    }
    return v;
  }

  // Haar-uniform unit vector in C^d (normalized complex Gaussian).
  ComplexVector haar_unit(Index d) {
    ComplexVector v = complex_gaussian(d);
    return v / v.norm();
  }

  // Dirichlet(1, ..., 1): uniform on the probability simplex.
  RealVector dirichlet_uniform(Index r) {
    RealVector w(r);
    for (Index i = 0; i < r; ++i) {
      double u = 0.0;
      do {
        u = uniform();
      } while (u <= 0.0);
      w(i) = -std::log(u);
    }
    return w / w.sum();
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace bosesep
