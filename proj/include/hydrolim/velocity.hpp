#pragma once

#include <optional>

#include "hydrolim/spectral.hpp"

namespace hydrolim {

/// Aspect ratio of the thin domain, epsilon in (0, 1].
struct AnisotropyScale {
  double epsilon = 1.0;
  /// Throws ConfigError unless 0 < epsilon <= 1.
  explicit AnisotropyScale(double eps);
};

/// How the third velocity slot is to be read.
///
/// Diagnosed: the slot holds w, recovered from the horizontal velocity.
/// EvolvedScaled: the slot holds eps * w, the unknown of the rescaled
/// anisotropic system.
struct WRole {
  enum class Kind { Diagnosed, EvolvedScaled };
  Kind kind = Kind::Diagnosed;
  double epsilon = 1.0;

  static WRole diagnosed() { return {Kind::Diagnosed, 1.0}; }
  static WRole evolved_scaled(double eps) { return {Kind::EvolvedScaled, eps}; }
  bool is_scaled() const noexcept { return kind == Kind::EvolvedScaled; }
};

struct VelocityState {
  SpectralScalar v1;  // EvenZ
  SpectralScalar v2;  // EvenZ
  SpectralScalar w;   // OddZ; w or eps*w depending on role
  WRole role;

  const Grid& grid() const noexcept { return v1.grid(); }

  /// The vertical velocity w itself (divides the slot by eps when scaled).
  SpectralScalar vertical_velocity() const;

  /// Throws InadmissibleData when parities or grids are inconsistent.
  void check_structure() const;
};

/// Same velocity, third slot rescaled for the anisotropic system (w -> eps*w).
VelocityState as_scaled(const VelocityState& s, double eps);
/// Same velocity with the third slot holding w.
VelocityState as_diagnosed(const VelocityState& s);

}  // namespace hydrolim
