#pragma once

// Per-sample functionals of a velocity state and checks over trajectories.
//
//   A      ||v||_{B^{1/2}} + ||v||_{B^{3/2}}   (components added)
//   B      ||v||_{B^{5/2}} + ||v||_{B^{7/2}}
//   intB   running trapezoid integral of B over the probe times
//   l2     ||v||_{L^2} of the horizontal velocity
//   div_residual   ||div_H v + d_z w||_{L^2}
//   p_gradH_norm   A-type norm of grad_H p
//   p_dz_norm      ||d_z p||_{B^{1/2}} (anisotropic system only, else 0)
//   intP   running integral of the pressure integrand
//          A(grad_H p) + A(eps^-1 d_z p), the second term for ANS only

#include <cstdint>
#include <optional>
#include <vector>

#include "hydrolim/operators.hpp"
#include "hydrolim/system.hpp"
#include "hydrolim/velocity.hpp"

namespace hydrolim {

struct DiagnosticsRecord {
  double t = 0.0;
  double A = 0.0;
  double B = 0.0;
  double intB = 0.0;
  double l2 = 0.0;
  double div_residual = 0.0;
  double p_gradH_norm = 0.0;
  double p_dz_norm = 0.0;
  double intP = 0.0;
  // Instantaneous pressure integrand behind intP; not exported.
  double p_integrand = 0.0;
};

/// Functionals of one state. intB and intP are left at zero; run() fills
/// them in. `pressure` may carry a precomputed pressure of the matching kind.
DiagnosticsRecord record(const VelocityState& state, const System& system, double t = 0.0,
                         const PressureField* pressure = nullptr);

/// Pressure along the matching recovery path.
PressureField pressure_for(const VelocityState& state, const System& system);

/// Appends `next` to `series`, accumulating intB and intP by the trapezoid rule.
void append_record(std::vector<DiagnosticsRecord>& series, DiagnosticsRecord next);

struct AprioriResult {
  bool pass = true;
  double worst_ratio = 0.0;  // max_t A(t)/A(0)
  std::optional<double> first_violation_t;
  double c_eff = 0.0;        // 2 (A(0) - A(T)) / intB(T)
  bool strictly_decreasing = true;
};

/// A(t) <= A(0) (1 + tol) at every sample, intB(T) finite, and c_eff > 0.
AprioriResult apriori_check(const std::vector<DiagnosticsRecord>& series, double tol = 1e-2);

/// Relative residual of the difference system between two stored
/// trajectories (ANS and primitive, same probe times). For consecutive probes
/// i, i+1 the residual is
///
///   || (d_{i+1} - d_i)/h - (F_i + F_{i+1})/2 || / max(||(F_i + F_{i+1})/2||, tiny),
///
/// d = v_eps - v and F = Lap d - (P_eps N_eps - P_H N)_H. It scales like h^2.
std::vector<double> difference_residual(const std::vector<double>& times,
                                        const std::vector<VelocityState>& ans_states,
                                        const std::vector<VelocityState>& prim_states,
                                        double epsilon, bool nonlinear = true);

struct ProductLawSample {
  double ratio_32 = 0.0;  // ||uv||_{3/2} / (||u||_{3/2} ||v||_{3/2})
  double ratio_52 = 0.0;  // ||uv||_{5/2} / (||u||_{3/2}||v||_{5/2} + ||u||_{5/2}||v||_{3/2})
};

struct ProductLawReport {
  std::vector<ProductLawSample> samples;
  double max_ratio_32 = 0.0;
  double max_ratio_52 = 0.0;
};

/// Product ratios of a single pair. Means of u, v and uv are removed first.
ProductLawSample product_law_ratio(const SpectralScalar& u, const SpectralScalar& v);

/// Ratios over seeded random smooth pairs; ensemble_size >= 10.
ProductLawReport product_law_probe(int ensemble_size, std::uint64_t seed, const Grid& grid);

}  // namespace hydrolim
