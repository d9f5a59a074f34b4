#include "qfr/closed_forms.hpp"

#include <cmath>

namespace qfr {

bool packet_momentum_in_domain(const ChannelScenario& s) {
  return s.sigma * s.sigma + 2.0 * s.gamma * s.gamma - s.lambda * s.lambda > 0.0;
}

PacketPredictions packet_predictions(const ChannelScenario& s) {
  if (!(s.sigma > 0.0)) throw contract_violation("packet predictions: sigma must be > 0");
  if (s.gamma < 0.0 || s.lambda < 0.0)
    throw contract_violation("packet predictions: channel widths must be >= 0");
  const double hbar = s.params.hbar;
  const double s2 = s.sigma * s.sigma + s.gamma * s.gamma;
  const double u2 = s.sigma * s.sigma + s.lambda * s.lambda;
  PacketPredictions r;
  r.out_density_std = std::sqrt(s2);
  r.out_current_std = std::sqrt(u2);
  r.spread_error_x = std::sqrt(s2) - s.sigma;
  r.out_spread_x = std::sqrt(s2);
  if (!packet_momentum_in_domain(s))
    throw domain_violation(
        "packet predictions: momentum spread requires sigma^2 + 2*gamma^2 - lambda^2 > 0");
  // 2 s^2 - u^2 = sigma^2 + 2 gamma^2 - lambda^2 > 0 in the domain
  const double bracket = s.k * s.k * s2 / (std::sqrt(u2) * std::sqrt(2.0 * s2 - u2)) -
                         s.k * s.k + 1.0 / (4.0 * s2);
  r.out_spread_p = hbar * std::sqrt(bracket);
  r.spread_error_p_printed = std::abs(r.out_spread_p - hbar * s.k);
  r.spread_error_p_variant = std::abs(r.out_spread_p - hbar / (2.0 * s.sigma));
  return r;
}

OscillatorPredictions oscillator_predictions(const ChannelScenario& s) {
  const double hbar = s.params.hbar;
  const double m = s.params.mass;
  const double omega = s.params.omega;
  const double sigma_gs = std::sqrt(hbar / (2.0 * m * omega));
  if (std::abs(s.sigma - sigma_gs) > 1e-9)
    throw contract_violation(
        "oscillator predictions: packet width must equal the ground-state width");
  if (s.k != 0.0 || s.x0 != 0.0)
    throw contract_violation("oscillator predictions: the ground state is at rest at 0");
  if (s.gamma < 0.0) throw contract_violation("oscillator predictions: gamma must be >= 0");
  const double g2 = s.gamma * s.gamma;
  const double d = hbar + 2.0 * m * omega * g2;
  OscillatorPredictions r;
  r.mean_h_in = 0.5 * hbar * omega;
  r.std_h_in = 0.0;
  r.mean_h_out = omega * (hbar * hbar + d * d) / (4.0 * d);
  r.std_h_out = std::sqrt(2.0) * m * omega * omega * g2 * (hbar + m * omega * g2) / d;
  r.mean_error_h = std::abs(r.mean_h_out - r.mean_h_in);
  r.spread_error_h = r.std_h_out;
  return r;
}

}  // namespace qfr
