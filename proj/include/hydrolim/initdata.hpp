#pragma once

// Admissible initial data: v EvenZ with zero mean, barotropic part built from
// a streamfunction (so the z-mean of div_H v vanishes), w diagnosed, and the
// A-functional rescaled to alpha.
//
// Catalog of deterministic kinds (before rescaling):
//   shear        v = (sin(pi y) cos(pi z), 0)                    w = 0
//   vortexpair   v = (sin(pi y) cos(pi z), sin(pi x) cos(pi z))   w = 0
//   overturning  v = (sin(pi x) cos(pi z), 0)                    w = -cos(pi x) sin(pi z)

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hydrolim/spectral.hpp"
#include "hydrolim/velocity.hpp"

namespace hydrolim {

struct InitSpec {
  enum class Kind { Deterministic, RandomSmooth };
  Kind kind = Kind::RandomSmooth;
  std::string name;  // catalog entry, Deterministic only
  std::uint64_t seed = 42;
  double alpha = 0.01;
  double spectral_decay = 0.7;

  /// Throws ConfigError for alpha <= 0, decay <= 0 or an unknown name.
  void validate() const;
};

const std::vector<std::string>& init_catalog();

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(std::mt19937_64& rng);

/// Random real field inside the 2/3 band with |c| = exp(-decay |xi|) and
/// uniform phases. Zero mean; OddZ fields have no m = 0 content.
SpectralScalar random_smooth_scalar(const Grid& g, Parity parity, std::mt19937_64& rng,
                                    double decay = 0.7);

/// Random admissible velocity (unnormalized), w diagnosed.
VelocityState random_admissible(const Grid& g, std::mt19937_64& rng, double decay = 0.7);

VelocityState make_initial(const InitSpec& spec, const Grid& g);

/// base + magnitude * d with d a seeded random admissible state whose
/// A-functional is 1, so A(result - base) = magnitude.
VelocityState perturb_initial(const VelocityState& base, double magnitude, std::uint64_t seed);

}  // namespace hydrolim
