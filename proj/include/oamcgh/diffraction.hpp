#pragma once

#include <optional>
#include <vector>

#include "oamcgh/cgh_synth.hpp"
#include "oamcgh/fidelity.hpp"
#include "oamcgh/grid.hpp"
#include "oamcgh/oam_states.hpp"

namespace oamcgh {

// ---- Analytic order model -------------------------------------------------
//
// With r = a/a_max the thin phase hologram expands into orders
//   t = exp(-i s/2) sum_m (-i)^m J_m(s r) exp(i m (phi - carrier)) exp(-i (s/2) r^2),
// s = sigma'. Under reference-wave illumination exp(-i carrier), order m
// carries (up to a constant phase per order) amplitude (-1)^m J_m(s r) and
// field exp(-i phi_m) with
//   phi_m = -m phi + (m + 1) carrier + (s/2) r^2.

// (-1)^m J_m(sigma' r); equals J1(sigma' r) for m = -1.
double analytic_order_amplitude(int m, double a_over_amax, double sigma_prime);

double analytic_order_phase(int m, double phi, double a_over_amax, double sigma_prime,
                            double carrier);

// Demodulated order-m field amplitude * exp(-i phi_m) (carrier = 0) for
// recorded a/a_max and phi grids.
ComplexField analytic_order_field(int m, const RealGrid& a_over_amax, const RealGrid& phase,
                                  double sigma_prime);

// m = -1 field generated when the target itself is recorded (no
// preconditioning): a = |psi|, phi = -arg psi.
ComplexField analytic_first_order(const ComplexField& target, double sigma_prime);

// Order weights sinc(depth - m), m = m_min..m_max, of a modulo-2pi phase
// profile exp(i depth wrap(l theta)); depth = 1 is a full 2pi excursion.
std::vector<double> modulo2pi_order_weights(int m_min, int m_max, double depth = 1.0);

// Same weights from a numeric azimuthal Fourier transform of the wrapped
// profile (midpoint rule, `samples` points), referenced to the segment
// midpoint phase so they are real.
std::vector<double> modulo2pi_numeric_weights(int l, int m_min, int m_max, double depth = 1.0,
                                              int samples = 1 << 15);

// Max over aperture samples of |series_M - exp(-i f)|, where series_M keeps
// orders |m| <= M of the expansion above.
double jacobi_anger_check(const HologramFunction& hologram, int truncation_m);

// ---- Numeric propagation ----------------------------------------------------

// Unitary centered DFT; pupil -> far field.
ComplexField far_field(const ComplexField& pupil);
// Inverse of far_field; far field -> pupil.
ComplexField back_propagate(const ComplexField& far);

// Far-field window around one diffracted order. Offsets and widths are in
// bins along the tilt axis (fractional allowed); the window spans the full
// extent of the other axis.
struct OrderSpec {
  int m = -1;
  double offset_bins = 0.0;
  double window_width_bins = 0.0;
  TiltAxis axis = TiltAxis::horizontal;
};

// Order m sits at -m * N * n / D bins along a horizontal tilt (n = cols) and
// at +m * N * n / D along a vertical one (n = rows, row index grows
// downward); the window is one order spacing N * n / D wide.
OrderSpec order_spec(int m, const ReferenceWave& ref, const GridGeometry& grid);

// Zeroes bins outside [offset - w/2, offset + w/2) and demodulates the window
// to the zero-frequency bin (exact for fractional offsets). Throws
// std::out_of_range when the window leaves the grid.
ComplexField isolate_order(const ComplexField& far, const OrderSpec& spec);

// ---- Pipeline -------------------------------------------------------------

struct PipelineOptions {
  ImaxMode i_max_mode = ImaxMode::analytic;
  TiltAxis axis = TiltAxis::horizontal;
  // SLM surface error (waves) applied to the transmittance.
  std::optional<RealGrid> slm_surface_error;
  // Wavefront-error map (waves) compensated during preconditioning.
  std::optional<RealGrid> wfe_map;
};

struct PipelineResult {
  ComplexField theory;
  HologramFunction hologram;
  ComplexField far;        // far field of the transmittance
  ComplexField generated;  // isolated, demodulated m = -1 order in the pupil
  OrderSpec order;
  FidelityReport report;
};

// sample -> (precondition) -> hologram -> exp(-i f) -> far field ->
// isolate m = -1 -> back-propagate -> P against the sampled state.
PipelineResult simulate_pipeline(const SuperpositionState& state, double sigma_prime,
                                 double tilt_waves, bool precondition, const GridGeometry& grid,
                                 const PipelineOptions& options = {});

enum class InterferogramAxis { horizontal, vertical };

// |field + exp(i 2 pi N u / D)|^2 inside the aperture (u = x for horizontal,
// y for vertical), divided by its maximum; zero outside the aperture.
RealGrid synth_interferogram(const ComplexField& field, double ref_tilt_waves,
                             InterferogramAxis axis);

}  // namespace oamcgh
