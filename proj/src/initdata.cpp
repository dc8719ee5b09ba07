#include "hydrolim/initdata.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hydrolim/errors.hpp"
#include "hydrolim/lp_besov.hpp"
#include "hydrolim/operators.hpp"
#include "hydrolim/solvers.hpp"

namespace hydrolim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxAttempts = 8;

// One representative of every Hermitian pair: kx > 0, or kx = 0 and ky >= 0.
bool upper_half(int kx, int ky) { return kx > 0 || (kx == 0 && ky >= 0); }

cplx random_phase(std::mt19937_64& rng) {
  const double theta = 2.0 * kPi * uniform01(rng);
  return {std::cos(theta), std::sin(theta)};
}

VelocityState scaled(VelocityState s, double c) {
  s.v1 *= c;
  s.v2 *= c;
  s.w = diagnose_w(s.v1, s.v2);
  return s;
}

VelocityState catalog_state(const std::string& name, const Grid& g) {
  SpectralScalar v1(g, Parity::EvenZ), v2(g, Parity::EvenZ);
  const cplx sin_mode{0.0, -0.5};  // sin(pi k x) = Im part of e^{i pi k x}
  if (name == "shear") {
    v1.set_real_mode(0, 1, 1, sin_mode);
  } else if (name == "vortexpair") {
    v1.set_real_mode(0, 1, 1, sin_mode);
    v2.set_real_mode(1, 0, 1, sin_mode);
  } else if (name == "overturning") {
    v1.set_real_mode(1, 0, 1, sin_mode);
  } else {
    throw ConfigError("unknown init.name '" + name + "'");
  }
  SpectralScalar w = diagnose_w(v1, v2);
  return {std::move(v1), std::move(v2), std::move(w), WRole::diagnosed()};
}

}  // namespace

const std::vector<std::string>& init_catalog() {
  static const std::vector<std::string> names{"shear", "vortexpair", "overturning"};
  return names;
}

void InitSpec::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("init.alpha must be positive");
  if (!(spectral_decay > 0.0) || !std::isfinite(spectral_decay)) {
    throw ConfigError("init.spectral_decay must be positive");
  }
  if (kind == Kind::Deterministic) {
    const auto& names = init_catalog();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw ConfigError("unknown init.name '" + name + "'");
    }
  }
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

SpectralScalar random_smooth_scalar(const Grid& g, Parity parity, std::mt19937_64& rng,
                                    double decay) {
  SpectralScalar f(g, parity);
  const int kmax = g.dealias_kmax();
  const int mmax = std::min(g.dealias_mmax(), g.nz);
  for (int kx = 0; kx <= kmax; ++kx) {
    for (int ky = -kmax; ky <= kmax; ++ky) {
      if (!upper_half(kx, ky)) continue;
      for (int m = 0; m <= mmax; ++m) {
        if (kx == 0 && ky == 0 && m == 0) continue;
        if (parity == Parity::OddZ && m == 0) continue;
        const double xi = kPi * std::sqrt(static_cast<double>(kx * kx + ky * ky + m * m));
        f.set_real_mode(kx, ky, m, std::exp(-decay * xi) * random_phase(rng));
      }
    }
  }
  return f;
}

VelocityState random_admissible(const Grid& g, std::mt19937_64& rng, double decay) {
  // barotropic part from a streamfunction psi(x, y): v = (d_y psi, -d_x psi)
  SpectralScalar psi(g, Parity::EvenZ);
  const int kmax = g.dealias_kmax();
  for (int kx = 0; kx <= kmax; ++kx) {
    for (int ky = -kmax; ky <= kmax; ++ky) {
      if (!upper_half(kx, ky) || (kx == 0 && ky == 0)) continue;
      const double kk = std::sqrt(static_cast<double>(kx * kx + ky * ky));
      psi.set_real_mode(kx, ky, 0, std::exp(-decay * kPi * kk) / (kPi * kk) * random_phase(rng));
    }
  }
  const HorizontalPair gpsi = grad_h(psi);
  SpectralScalar v1 = random_smooth_scalar(g, Parity::EvenZ, rng, decay);
  SpectralScalar v2 = random_smooth_scalar(g, Parity::EvenZ, rng, decay);
  // baroclinic parts stay random, the z-mean is replaced by the streamfunction flow
  for (int ix = 0; ix < g.nh; ++ix) {
    for (int iy = 0; iy < g.nh; ++iy) {
      const std::size_t i = g.index(ix, iy, 0);
      v1.coeffs()[i] = gpsi.y.coeffs()[i];
      v2.coeffs()[i] = -gpsi.x.coeffs()[i];
    }
  }
  SpectralScalar w = diagnose_w(v1, v2);
  return {std::move(v1), std::move(v2), std::move(w), WRole::diagnosed()};
}

VelocityState make_initial(const InitSpec& spec, const Grid& g) {
  spec.validate();
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    VelocityState s;
    if (spec.kind == InitSpec::Kind::Deterministic) {
      s = catalog_state(spec.name, g);
    } else {
      std::mt19937_64 rng(spec.seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ULL);
      s = random_admissible(g, rng, spec.spectral_decay);
    }
    const double a = besov_pair(s.v1, s.v2).a;
    if (!(a > 0.0) || !std::isfinite(a)) {
      if (spec.kind == InitSpec::Kind::Deterministic) break;
      continue;
    }
    s = scaled(std::move(s), spec.alpha / a);
    check_admissible(s);
    return s;
  }
  throw InadmissibleData("could not draw initial data with a positive A-functional");
}

VelocityState perturb_initial(const VelocityState& base, double magnitude, std::uint64_t seed) {
  if (!(magnitude >= 0.0)) throw ConfigError("perturbation magnitude must be nonnegative");
  if (magnitude == 0.0) return base;
  std::mt19937_64 rng(seed);
  VelocityState d = random_admissible(base.grid(), rng);
  d = scaled(std::move(d), magnitude / besov_pair(d.v1, d.v2).a);
  VelocityState out = as_diagnosed(base);
  out.v1 += d.v1;
  out.v2 += d.v2;
  out.w = diagnose_w(out.v1, out.v2);
  return out;
}

}  // namespace hydrolim
