#include "solenoid/lg_optics.hpp"

#include <cmath>
#include <string>

#include "solenoid/errors.hpp"

namespace solenoid {

void validate(const LGMode& mode) {
  if (mode.p < 0) {
    throw ValidationError("lg_optics: radial index p must be >= 0 (got " + std::to_string(mode.p) + ")");
  }
  if (!(mode.waist > 0.0) || !std::isfinite(mode.waist)) {
    throw ValidationError("lg_optics: beam waist must be positive and finite");
  }
}

void validate(const BeamField& beam) {
  if (beam.terms.empty()) throw ValidationError("lg_optics: beam needs at least one mode");
  for (const auto& term : beam.terms) {
    validate(term.mode);
    if (!std::isfinite(term.coefficient.real()) || !std::isfinite(term.coefficient.imag())) {
      throw ValidationError("lg_optics: mode coefficient must be finite");
    }
  }
  if (!std::isfinite(beam.center.x) || !std::isfinite(beam.center.y)) {
    throw ValidationError("lg_optics: beam center must be finite");
  }
}

BeamField single_mode_beam(const LGMode& mode, Vec2 center, ExponentConvention convention) {
  BeamField beam{{BeamTerm{mode, {1.0, 0.0}}}, center, convention};
  validate(beam);
  return beam;
}

double laguerre(int p, int alpha, double x) {
  if (p < 0 || alpha < 0) throw ValidationError("lg_optics: laguerre needs p >= 0 and alpha >= 0");
  if (p == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < p; ++k) {
    const double next = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

double lg_radial_amplitude(const LGMode& mode, double r, ExponentConvention convention) {
  validate(mode);
  if (!(r >= 0.0)) throw ValidationError("lg_optics: radius must be >= 0");
  const int al = std::abs(mode.l);
  const double xi = std::sqrt(2.0) * r / mode.waist;
  const double xi2 = xi * xi;
  const double norm =
      std::sqrt(2.0 / kPi * std::exp(std::lgamma(mode.p + 1.0) - std::lgamma(mode.p + al + 1.0)));
  const int power = convention == ExponentConvention::paper ? al + 2 : al;
  const double sign = (mode.p % 2 == 0) ? 1.0 : -1.0;
  return sign * norm * std::pow(xi, power) * laguerre(mode.p, al, xi2) * std::exp(-xi2);
}

std::complex<double> beam_amplitude(const BeamField& beam, Vec2 point) {
  const Vec2 d = point - beam.center;
  const double r = norm(d);
  const double phi = r > 0.0 ? std::atan2(d.y, d.x) : 0.0;
  std::complex<double> total{0.0, 0.0};
  for (const auto& term : beam.terms) {
    const double f = lg_radial_amplitude(term.mode, r, beam.convention);
    if (term.mode.l == 0) {
      total += term.coefficient * f;
    } else if (r > 0.0) {
      // f vanishes at the axis for l != 0, so the undefined phase there never matters.
      const double arg = term.mode.l * phi;
      total += term.coefficient * f * std::complex<double>(std::cos(arg), std::sin(arg));
    }
  }
  return total;
}

}  // namespace solenoid
