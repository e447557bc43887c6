#pragma once

#include <optional>

#include "oamcgh/grid.hpp"

namespace oamcgh {

// Largest sigma' accepted for preconditioning: J1 stays monotonic on
// [0, sigma'] (peak at 1.84118...).
inline constexpr double kMaxPreconditionSigmaPrime = 1.8412;

// Grid axis along which the reference-wave carrier varies. `horizontal`
// varies along columns (u = x), `vertical` along rows (u = y).
enum class TiltAxis { horizontal, vertical };

// Off-axis plane reference wave b * exp(-i * carrier), carrier = 2 pi N u / D
// where N is the number of waves of tilt across the aperture diameter D.
struct ReferenceWave {
  double tilt_waves = 100.0;
  double amplitude = 1.0;  // b; build_hologram sets it to a_max
  TiltAxis axis = TiltAxis::horizontal;

  double carrier(const GridGeometry& grid, int row, int col) const;
};

enum class ImaxMode {
  analytic,  // I_max = 4 a_max^2, so sigma' = sigma / 2
  grid_max,  // I_max = max of I over the aperture
};

struct HologramParams {
  enum class Scale { sigma, sigma_prime };

  Scale scale_by = Scale::sigma_prime;
  double scale = 1.72;  // sigma or sigma', per scale_by
  ImaxMode i_max_mode = ImaxMode::analytic;
  bool precondition = false;
  // SLM wavefront error in waves; subtracted from the preconditioned phase.
  std::optional<RealGrid> wfe_map;

  static HologramParams from_sigma(double sigma, ImaxMode mode = ImaxMode::analytic);
  static HologramParams from_sigma_prime(double sigma_prime, ImaxMode mode = ImaxMode::analytic);

  // Throws std::invalid_argument naming the violated condition.
  void validate() const;
};

// f = sigma * I / I_max inside the aperture, 0 outside. Keeps the recording
// inputs for the analytic order series.
struct HologramFunction {
  RealGrid f;
  RealGrid amplitude;  // recorded a
  RealGrid phase;      // recorded phi
  ReferenceWave reference;
  HologramParams params;
  double sigma = 0.0;
  double sigma_prime = 0.0;
  double a_max = 0.0;
  double i_max = 0.0;

  const GridGeometry& geometry() const { return f.geometry(); }
};

// I = a^2 + b^2 + 2 a b cos(phi - carrier), with b = ref.amplitude = a_max.
double recording_intensity(double a, double phi, const ReferenceWave& ref, double carrier);

// Throws std::invalid_argument on mismatched geometry, negative amplitude or
// an all-zero amplitude grid.
HologramFunction build_hologram(const RealGrid& amplitude, const RealGrid& phase,
                                ReferenceWave ref, const HologramParams& params);

// t = exp(-i f) inside the aperture, zero outside. An optional SLM surface
// error W (waves) multiplies every sample by exp(-i 2 pi W).
ComplexField slm_transmittance(const HologramFunction& hologram,
                               const RealGrid* surface_error = nullptr);

// r in [0, 1] with J1(sigma' r) = target, by bisection on the monotonic
// branch. Throws std::out_of_range when target lies outside [0, J1(sigma')],
// std::invalid_argument when sigma' is outside (0, 1.8412].
double invert_j1(double target, double sigma_prime);

struct PreconditionedRecording {
  RealGrid amplitude;  // a / a_max
  RealGrid phase;      // phi
  double scale = 0.0;  // c = J1(sigma') / A_max
};

// Solves J1(sigma' a/a_max) = c A and phi + (sigma'/2)(a/a_max)^2 = Phi, then
// subtracts 2 pi W when a wavefront-error map is given.
PreconditionedRecording precondition(const RealGrid& target_amplitude,
                                     const RealGrid& target_phase, double sigma_prime,
                                     const RealGrid* wfe_map = nullptr);

// Amplitude and phase to record for a target field. The m = -1 order
// conjugates the recorded phase, so the returned phase is -arg(psi): the
// target reads psi = A exp(-i Phi).
struct RecordingTarget {
  RealGrid amplitude;
  RealGrid phase;
};
RecordingTarget recording_target(const ComplexField& target);

}  // namespace oamcgh
