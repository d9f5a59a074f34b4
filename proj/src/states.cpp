#include "qfr/states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>

#include "qfr/errors.hpp"
#include "qfr/operators.hpp"

namespace qfr {

namespace {

constexpr double pi = std::numbers::pi;

int make_odd(int n) { return n % 2 == 0 ? n + 1 : n; }

// Shortest plain decimal for catalog names: 1 -> "1", 0.5 -> "0.5".
std::string format_compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Physicists' Hermite polynomial by upward recurrence; n is small here.
double hermite(int n, double x) {
  double h0 = 1.0, h1 = 2.0 * x;
  if (n == 0) return h0;
  for (int m = 1; m < n; ++m) {
    const double h2 = 2.0 * x * h1 - 2.0 * m * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

}  // namespace

WaveFunction oscillator_eigenstate(int n, const PhysicalParams& p, int resolution,
                                   double halfwidth_mult) {
  if (n < 0) throw contract_violation("oscillator state: n must be >= 0");
  const double ell = std::sqrt(p.hbar / (p.mass * p.omega));  // length scale
  const double width = halfwidth_mult * ell * std::sqrt(n + 1.0);
  WaveFunction wf;
  wf.axes = {Grid::line(-width, width, make_odd(resolution))};
  wf.params = p;
  wf.samples.resize(wf.size());
  for (int i = 0; i < wf.axes[0].n; ++i) {
    const double xi = wf.axes[0].node(i) / ell;
    wf.samples[i] = hermite(n, xi) * std::exp(-0.5 * xi * xi);
  }
  return normalized(std::move(wf));
}

WaveFunction ring_number_state(int n, const PhysicalParams& p, int resolution) {
  WaveFunction wf;
  // nodes symmetric about 0 so the discrete angle mean vanishes exactly
  const double h = 2.0 * pi / resolution;
  wf.axes = {Grid::periodic(-pi + 0.5 * h, pi + 0.5 * h, resolution)};
  wf.params = p;
  wf.rep = Representation::angle;
  wf.samples.resize(wf.size());
  const double amp = 1.0 / std::sqrt(2.0 * pi);
  for (int i = 0; i < resolution; ++i) {
    const double phi = wf.axes[0].node(i);
    wf.samples[i] = amp * std::exp(cplx{0.0, -n * phi});
  }
  return wf;  // rectangle-rule norm is exactly 1 already
}

WaveFunction gaussian_packet(double x0, double sigma, double k, const PhysicalParams& p,
                             int resolution, double halfwidth_mult) {
  if (!(sigma > 0.0)) throw contract_violation("packet: sigma must be > 0");
  const double width = halfwidth_mult * sigma;
  WaveFunction wf;
  wf.axes = {Grid::line(x0 - width, x0 + width, make_odd(resolution))};
  wf.params = p;
  wf.samples.resize(wf.size());
  for (int i = 0; i < wf.axes[0].n; ++i) {
    const double dx = wf.axes[0].node(i) - x0;
    wf.samples[i] = std::exp(cplx{-dx * dx / (4.0 * sigma * sigma), k * dx});
  }
  return normalized(std::move(wf));
}

Grid free_packet_grid(double x0, double sigma, double k, const std::vector<double>& times,
                      const PhysicalParams& p, int resolution, double halfwidth_mult) {
  if (times.empty()) throw contract_violation("free packet grid: need at least one time");
  double lo = x0, hi = x0, wmax = sigma;
  for (double t : times) {
    const double center = x0 + p.hbar * k * t / p.mass;
    const double tau = p.hbar * t / (2.0 * p.mass * sigma * sigma);
    const double spread = sigma * std::sqrt(1.0 + tau * tau);
    lo = std::min(lo, center);
    hi = std::max(hi, center);
    wmax = std::max(wmax, spread);
  }
  const double pad = halfwidth_mult * wmax;
  return Grid::line(lo - pad, hi + pad, make_odd(resolution));
}

WaveFunction free_packet_at(double x0, double sigma, double k, double t,
                            const PhysicalParams& p, const Grid& grid) {
  if (!(sigma > 0.0)) throw contract_violation("packet: sigma must be > 0");
  // dispersive evolution of the Gaussian packet in closed form:
  //   psi(x,t) ~ beta^{-1/2} exp{ (-X^2/4s^2 + ikX - ik^2 s^2 tau) / beta },
  //   X = x - x0, tau = hbar t / (2 m s^2), beta = 1 + i tau.
  const double tau = p.hbar * t / (2.0 * p.mass * sigma * sigma);
  const cplx beta{1.0, tau};
  WaveFunction wf;
  wf.axes = {grid};
  wf.params = p;
  wf.samples.resize(wf.size());
  const cplx inv_beta = 1.0 / beta;
  for (int i = 0; i < grid.n; ++i) {
    const double dx = grid.node(i) - x0;
    const cplx num{-dx * dx / (4.0 * sigma * sigma), k * dx - k * k * sigma * sigma * tau};
    wf.samples[i] = std::exp(num * inv_beta) / std::sqrt(beta);
  }
  return normalized(std::move(wf));
}

WaveFunction rotated_box_ground(double a, double b, const PhysicalParams& p,
                                int nodes_per_axis) {
  if (!(a > 0.0) || !(b > 0.0)) throw contract_violation("box: sides must be > 0");
  if (!(a < b)) throw contract_violation("box: sides must satisfy a < b");
  if (nodes_per_axis < 64) throw contract_violation("box: need at least 64 nodes per axis");
  const int n = nodes_per_axis;
  const double sqrt2 = std::numbers::sqrt2;
  // The box is rotated 45 degrees: edges run along x+y = const and y-x =
  // const. Choose the spacing h = a*sqrt(2)/K so those edge lines pass
  // through grid nodes (exactly when b/a is an integer); kinks of the wave
  // function then sit on nodes instead of sweeping through cells, which keeps
  // the derivative stencil error near the edges at the 1e-4 level.
  const double span = (a + b) / sqrt2;
  const int k_steps = std::max(8, static_cast<int>(std::floor((n - 7) * a * sqrt2 / span)));
  const double h = a * sqrt2 / k_steps;
  const double x_lo = -h * (std::ceil(b / (sqrt2 * h) - 1e-9) + 3.0);
  const double y_lo = -3.0 * h;
  WaveFunction wf;
  wf.axes = {Grid::line(x_lo, x_lo + (n - 1) * h, n),
             Grid::line(y_lo, y_lo + (n - 1) * h, n)};
  wf.params = p;
  wf.samples.assign(wf.size(), cplx{0.0, 0.0});
  const double edge_tol = 1e-9 * h;
  for (int i = 0; i < n; ++i) {
    const double x = wf.axes[0].node(i);
    for (int j = 0; j < n; ++j) {
      const double y = wf.axes[1].node(j);
      const double x1 = (x + y) / sqrt2;
      const double y1 = (y - x) / sqrt2;
      if (x1 > edge_tol && x1 < a - edge_tol && y1 > edge_tol && y1 < b - edge_tol)
        wf.samples[static_cast<size_t>(i) * n + j] =
            std::sin(pi * x1 / a) * std::sin(pi * y1 / b);
    }
  }
  return normalized(std::move(wf));
}

OperatorSpec observable_by_name(const std::string& name, const PhysicalParams& p) {
  if (name == "x") return position_op(0);
  if (name == "y") return position_op(1);
  if (name == "p" || name == "px") return momentum_op(p, 0);
  if (name == "py") return momentum_op(p, 1);
  if (name == "H") return oscillator_hamiltonian(p);
  if (name == "N") return number_op();
  if (name == "phi") return angle_op();
  if (name == "E") return energy_op(p);
  if (name == "t") return time_op();
  throw contract_violation("unknown observable name: " + name);
}

std::vector<CatalogEntry> default_catalog(const PhysicalParams& p, int resolution,
                                          int box_resolution) {
  std::vector<CatalogEntry> out;
  const double ell = std::sqrt(p.hbar / (p.mass * p.omega));

  for (int n = 0; n <= 4; ++n) {
    CatalogEntry e;
    e.name = "qo:n=" + std::to_string(n);
    e.wf = oscillator_eigenstate(n, p, resolution);
    e.pairs = {"x,p", "x,H", "p,H"};
    const double dx = ell * std::sqrt(n + 0.5);
    const double dp = (p.hbar / ell) * std::sqrt(n + 0.5);
    // p and H involve finite differences of an oscillatory profile, so their
    // accuracy at the default resolution trails the multiplicative x moments
    e.moments = {{"x", 0.0, dx, 1e-8},
                 {"p", 0.0, dp, 1e-7},
                 {"H", (n + 0.5) * p.hbar * p.omega, 0.0, 1e-7}};
    out.push_back(std::move(e));
  }

  for (int n = 0; n <= 3; ++n) {
    CatalogEntry e;
    e.name = "qo_phase:n=" + std::to_string(n);
    e.wf = ring_number_state(n, p, resolution);
    e.pairs = {"N,phi"};
    const int nn = e.wf.axes[0].n;
    const double dphi = pi / std::sqrt(3.0) * std::sqrt(1.0 - 1.0 / (double(nn) * nn));
    e.moments = {{"N", double(n), 0.0, 1e-8}, {"phi", 0.0, dphi, 1e-10}};
    out.push_back(std::move(e));
  }

  const struct {
    double x0, sigma, k;
  } packets[] = {{0.0, 1.0, 0.0}, {1.0, 0.5, 2.0}, {-1.0, 2.0, 1.0}};
  for (const auto& pk : packets) {
    CatalogEntry e;
    e.name = "packet:x0=" + format_compact(pk.x0) + ",sigma=" + format_compact(pk.sigma) +
             ",k=" + format_compact(pk.k);
    e.wf = gaussian_packet(pk.x0, pk.sigma, pk.k, p, resolution);
    e.pairs = {"x,p"};
    e.moments = {{"x", pk.x0, pk.sigma, 1e-8},
                 {"p", p.hbar * pk.k, p.hbar / (2.0 * pk.sigma), 1e-8}};
    out.push_back(std::move(e));
  }

  const struct {
    double a, b;
  } boxes[] = {{1.0, 2.0}, {1.0, 3.0}};
  for (const auto& bx : boxes) {
    CatalogEntry e;
    e.name = "well2d:a=" + format_compact(bx.a) + ",b=" + format_compact(bx.b);
    e.wf = rotated_box_ground(bx.a, bx.b, p, box_resolution);
    e.pairs = {"px,py"};
    const double scale = p.hbar * pi / (bx.a * bx.b);
    const double dpx = scale * std::sqrt(0.5 * (bx.a * bx.a + bx.b * bx.b));
    e.moments = {{"px", 0.0, dpx, 2e-3 * dpx}, {"py", 0.0, dpx, 2e-3 * dpx}};
    out.push_back(std::move(e));
  }

  {
    const std::vector<double> times{0.5, 1.0};
    const Grid g = free_packet_grid(0.0, 1.0, 0.0, times, p, resolution);
    for (double t : times) {
      CatalogEntry e;
      e.name = "free:sigma=1,k=0,t=" + format_compact(t);
      e.wf = free_packet_at(0.0, 1.0, 0.0, t, p, g);
      e.pairs = {"x,p"};
      const double tau = p.hbar * t / (2.0 * p.mass);
      e.moments = {{"x", 0.0, std::sqrt(1.0 + tau * tau), 1e-8},
                   {"p", 0.0, p.hbar / 2.0, 1e-8}};
      out.push_back(std::move(e));
    }
  }
  return out;
}

namespace {

std::map<std::string, double> parse_kv(const std::string& text) {
  std::map<std::string, double> kv;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    const size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw contract_violation("state description: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    try {
      size_t used = 0;
      kv[key] = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw contract_violation("state description: bad numeric value '" + val + "'");
    }
    pos = comma + 1;
  }
  return kv;
}

double take(std::map<std::string, double>& kv, const std::string& key, double fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  const double v = it->second;
  kv.erase(it);
  return v;
}

}  // namespace

WaveFunction state_from_description(const std::string& description, const PhysicalParams& p,
                                    int resolution) {
  const size_t colon = description.find(':');
  const std::string name = description.substr(0, colon);
  std::map<std::string, double> kv =
      colon == std::string::npos ? std::map<std::string, double>{}
                                 : parse_kv(description.substr(colon + 1));
  WaveFunction wf;
  if (name == "qo") {
    wf = oscillator_eigenstate(static_cast<int>(take(kv, "n", 0)), p, resolution);
  } else if (name == "qo_phase") {
    wf = ring_number_state(static_cast<int>(take(kv, "n", 0)), p, resolution);
  } else if (name == "packet") {
    const double x0 = take(kv, "x0", 0.0);
    const double sigma = take(kv, "sigma", 1.0);
    const double k = take(kv, "k", 0.0);
    wf = gaussian_packet(x0, sigma, k, p, resolution);
  } else if (name == "free") {
    const double x0 = take(kv, "x0", 0.0);
    const double sigma = take(kv, "sigma", 1.0);
    const double k = take(kv, "k", 0.0);
    const double t = take(kv, "t", 1.0);
    const Grid g = free_packet_grid(x0, sigma, k, {0.0, t}, p, resolution);
    wf = free_packet_at(x0, sigma, k, t, p, g);
  } else if (name == "well2d") {
    const double a = take(kv, "a", 1.0);
    const double b = take(kv, "b", 2.0);
    const int box_res = std::min(resolution, 512);
    wf = rotated_box_ground(a, b, p, box_res);
  } else {
    throw contract_violation("unknown state name: " + name);
  }
  if (!kv.empty())
    throw contract_violation("state description: unknown key '" + kv.begin()->first + "'");
  return wf;
}

}  // namespace qfr
