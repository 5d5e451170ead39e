#pragma once

#include <complex>
#include <vector>

#include "solenoid/vec2.hpp"

namespace solenoid {

/// Power of xi in front of the Laguerre factor. `paper` keeps xi^(|l|+2) as
/// printed in the source model; `standard` uses the textbook xi^|l|.
enum class ExponentConvention { paper, standard };

/// Laguerre-Gauss mode: radial index p >= 0, winding l, waist in lattice units.
struct LGMode {
  int p = 0;
  int l = 0;
  double waist = 1.0;
};

void validate(const LGMode& mode);

struct BeamTerm {
  LGMode mode;
  std::complex<double> coefficient{1.0, 0.0};
};

/// Coherent superposition of LG modes sharing one axis through `center`.
struct BeamField {
  std::vector<BeamTerm> terms;
  Vec2 center;
  ExponentConvention convention = ExponentConvention::paper;
};

void validate(const BeamField& beam);

BeamField single_mode_beam(const LGMode& mode, Vec2 center,
                           ExponentConvention convention = ExponentConvention::paper);

/// Generalized Laguerre polynomial L_p^alpha(x) by the three-term recurrence.
double laguerre(int p, int alpha, double x);

/// Radial profile f_pl(r) = (-1)^p sqrt(2 p! / (pi (p+|l|)!)) xi^k L_p^|l|(xi^2) exp(-xi^2),
/// xi = sqrt(2) r / waist, with k = |l|+2 (paper) or |l| (standard). Signed.
double lg_radial_amplitude(const LGMode& mode, double r,
                           ExponentConvention convention = ExponentConvention::paper);

/// Transverse field sum_k c_k f_k(|x - center|) exp(i l_k phi). The longitudinal
/// factor is a global phase in the lattice plane and is left out.
std::complex<double> beam_amplitude(const BeamField& beam, Vec2 point);

}  // namespace solenoid
