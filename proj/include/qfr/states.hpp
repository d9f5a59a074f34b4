#pragma once
// Constructors for the benchmark states, each with closed-form moments for
// validation, plus the named catalog the CLI exposes.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfr/operators.hpp"
#include "qfr/params.hpp"
#include "qfr/wavefunction.hpp"

namespace qfr {

// Harmonic-oscillator eigenstate n >= 0 on a line grid (odd node count).
WaveFunction oscillator_eigenstate(int n, const PhysicalParams& p, int resolution = 4097,
                                   double halfwidth_mult = 8.0);

// Ring state with definite occupation number n: exp(-i n phi)/sqrt(2 pi) on a
// periodic grid over [-pi, pi).
WaveFunction ring_number_state(int n, const PhysicalParams& p, int resolution = 4096);

// Gaussian packet centered at x0 with spatial spread sigma and carrier wave
// number k: exactly normalized, <x> = x0, dx = sigma, <p> = hbar k,
// dp = hbar/(2 sigma).
WaveFunction gaussian_packet(double x0, double sigma, double k, const PhysicalParams& p,
                             int resolution = 4097, double halfwidth_mult = 8.0);

// Freely evolved Gaussian packet at time t (analytic dispersion). The grid
// must cover both the initial and the drifted, broadened packet; use
// free_packet_grid to build one grid valid for a whole set of times.
Grid free_packet_grid(double x0, double sigma, double k, const std::vector<double>& times,
                      const PhysicalParams& p, int resolution = 4097,
                      double halfwidth_mult = 8.0);
WaveFunction free_packet_at(double x0, double sigma, double k, double t,
                            const PhysicalParams& p, const Grid& grid);

// Ground state of a hard-wall rectangular box with side lengths a and b,
// rotated 45 degrees relative to the grid axes so that neither Cartesian
// momentum component is conserved individually. Grid spacing is chosen so the
// box edges pass through grid nodes (exact when b/a is an integer), which
// keeps the edge-kink discretization error at the 1e-4 level.
WaveFunction rotated_box_ground(double a, double b, const PhysicalParams& p,
                                int nodes_per_axis = 512);

// Closed-form moment table entry attached to catalog states.
struct MomentCheck {
  std::string observable;  // "x", "p", "H", "N", "phi", "px", "py"
  double mean = 0.0;
  double std_dev = 0.0;
  double tol = 1e-8;
};

struct CatalogEntry {
  std::string name;                 // e.g. "qo:n=2" (the CLI state grammar)
  WaveFunction wf;
  std::vector<std::string> pairs;   // observable pairs to check, e.g. "x,p"
  std::vector<MomentCheck> moments;
};

// Resolve an observable name ("x", "p", "H", "N", "phi", "px", "py") for a
// given state's representation into an operator.
OperatorSpec observable_by_name(const std::string& name, const PhysicalParams& p);

// The standard verification set: oscillator eigenstates n=0..4, ring number
// states n=0..3, Gaussian packets, rotated boxes (1,2) and (1,3), and free
// packets at two times.
std::vector<CatalogEntry> default_catalog(const PhysicalParams& p, int resolution = 4097,
                                          int box_resolution = 384);

// Parse "name:key=value,key=value" state descriptions, e.g.
//   qo:n=2    qo_phase:n=1    packet:x0=0,sigma=1,k=2    well2d:a=1,b=2
//   free:sigma=1,k=0,t=1
// Throws contract_violation on unknown names/keys.
WaveFunction state_from_description(const std::string& description, const PhysicalParams& p,
                                    int resolution = 4097);

}  // namespace qfr
