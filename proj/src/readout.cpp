#include "yqc/readout.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "yqc/errors.hpp"

namespace yqc {

double bright_rate(double gamma, double rabi, double delta) {
  if (gamma <= 0) throw std::invalid_argument("bright_rate: gamma must be > 0");
  const double s = 2.0 * rabi * rabi / (gamma * gamma);
  const double d = 2.0 * delta / gamma;
  return 0.5 * gamma * s / (1.0 + s + d * d);
}

StretchedTransition default_addressed(const AtomSpec& spec) {
  // the quadrupole-dominated manifold (1P1) is ordered oppositely, so
  // the isolated cycling transition sits at the opposite stretched pair
  if (spec.hyperfine_q > 0) return {+1, spec.nuclear_spin};
  return {-1, -spec.nuclear_spin};
}

DarkRates dark_rates(const AtomSpec& spec, double b_gauss, double rabi,
                     const StretchedTransition& addressed,
                     double probe_detuning) {
  if (addressed.mj != 1 && addressed.mj != -1)
    throw std::invalid_argument("dark_rates: addressed mJ must be +1 or -1");
  const int ni = spec.nuclear_dim();
  const int ne = spec.excited_dim();
  const int mji = 1 - addressed.mj;  // electronic triplet row of the sigma channel
  const auto es = excited_spectrum(spec, b_gauss, 0.0);

  const auto ground_energy = [&](double mi) {
    return -spec.g_i * constants::mu_nuclear * b_gauss * mi;
  };

  // the addressed stretched product state is an exact eigenstate
  const int addressed_product = mji * ni + nuclear_index(spec, addressed.mi);
  int addressed_state = 0;
  double best = 0.0;
  for (int nu = 0; nu < ne; ++nu) {
    const double w = std::norm(es.eigenvectors(addressed_product, nu));
    if (w > best) {
      best = w;
      addressed_state = nu;
    }
  }
  const double t_addressed =
      es.eigenvalues(addressed_state) - ground_energy(addressed.mi);
  const double probe_frequency = t_addressed + probe_detuning;

  DarkRates out;
  for (int k = 0; k < ni; ++k) {
    const double mi = nuclear_label(spec, k);
    if (mi == addressed.mi) continue;
    for (int nu = 0; nu < ne; ++nu) {
      // sigma probe couples |g, mi> to the bare product |mJ, mi>
      const double beta = std::abs(es.eigenvectors(mji * ni + k, nu));
      if (beta <= 1e-6) continue;
      DarkChannel ch;
      ch.ground_mi = mi;
      ch.excited_index = nu;
      ch.beta = beta;
      ch.detuning = probe_frequency - (es.eigenvalues(nu) - ground_energy(mi));
      ch.rate = bright_rate(spec.decay_rate, beta * rabi, ch.detuning);
      if (ch.rate > out.max_rate) {
        out.max_rate = ch.rate;
        out.dominant_mi = mi;
      }
      out.channels.push_back(ch);
    }
  }
  return out;
}

std::vector<ReadoutPoint> scan_readout(const AtomSpec& spec,
                                       const std::vector<double>& b_grid,
                                       const std::vector<double>& omega_grid,
                                       double probe_detuning) {
  const auto addressed = default_addressed(spec);
  std::vector<ReadoutPoint> out;
  out.reserve(b_grid.size() * omega_grid.size());
  for (const double b : b_grid) {
    for (const double rabi : omega_grid) {
      ReadoutPoint p;
      p.b_gauss = b;
      p.rabi = rabi;
      p.probe_detuning = probe_detuning;
      p.r_bright = bright_rate(spec.decay_rate, rabi, probe_detuning);
      const auto dark = dark_rates(spec, b, rabi, addressed, probe_detuning);
      p.r_dark = dark.max_rate;
      p.dominant_mi = dark.dominant_mi;
      p.contrast = p.r_dark > 0 ? p.r_bright / p.r_dark
                                : std::numeric_limits<double>::infinity();
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace yqc
