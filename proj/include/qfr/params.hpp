#pragma once
// Physical constants carried by states and operator factories.

namespace qfr {

struct PhysicalParams {
  double hbar = 1.0;
  double mass = 1.0;
  double omega = 1.0;  // oscillator frequency where applicable
  double k_boltzmann = 1.0;
};

}  // namespace qfr
