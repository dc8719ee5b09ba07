#include "hydrolim/velocity.hpp"

#include <cmath>
#include <string>

#include "hydrolim/errors.hpp"

namespace hydrolim {

AnisotropyScale::AnisotropyScale(double eps) : epsilon(eps) {
  if (!(eps > 0.0) || !(eps <= 1.0)) {
    throw ConfigError("epsilon must lie in (0, 1], got " + std::to_string(eps));
  }
}

SpectralScalar VelocityState::vertical_velocity() const {
  if (role.is_scaled()) return (1.0 / role.epsilon) * w;
  return w;
}

void VelocityState::check_structure() const {
  if (v1.parity() != Parity::EvenZ || v2.parity() != Parity::EvenZ) {
    throw InadmissibleData("horizontal velocity must be EvenZ");
  }
  if (w.parity() != Parity::OddZ) throw InadmissibleData("vertical velocity must be OddZ");
  if (!(v1.grid() == v2.grid()) || !(v1.grid() == w.grid())) {
    throw InadmissibleData("velocity components live on different grids");
  }
  if (role.is_scaled() && !(role.epsilon > 0.0)) {
    throw InadmissibleData("scaled role needs a positive epsilon");
  }
}

VelocityState as_scaled(const VelocityState& s, double eps) {
  VelocityState out{s.v1, s.v2, eps * s.vertical_velocity(), WRole::evolved_scaled(eps)};
  return out;
}

VelocityState as_diagnosed(const VelocityState& s) {
  return {s.v1, s.v2, s.vertical_velocity(), WRole::diagnosed()};
}

}  // namespace hydrolim
