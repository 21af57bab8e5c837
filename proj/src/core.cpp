#include "ramsey/core.hpp"

#include <cmath>
#include <sstream>

#include "ramsey/errors.hpp"

namespace ramsey {

void PhysicalParams::validate() const {
  const bool finite = std::isfinite(k) && std::isfinite(omega) && std::isfinite(delta) &&
                      std::isfinite(width) && std::isfinite(gap);
  if (!finite) throw InvalidParameters("non-finite parameter: " + describe());
  if (!(k > 0)) throw InvalidParameters("k must be positive: " + describe());
  if (!(omega >= 0)) throw InvalidParameters("omega must be non-negative: " + describe());
  if (!(width > 0)) throw InvalidParameters("barrier width l must be positive: " + describe());
  if (!(gap >= 0)) throw InvalidParameters("gap L must be non-negative: " + describe());
}

std::string PhysicalParams::describe() const {
  std::ostringstream out;
  out.precision(17);
  out << "k=" << k << " omega=" << omega << " delta=" << delta << " l=" << width
      << " L=" << gap;
  return out.str();
}

double effective_rabi(double omega, double delta) { return std::hypot(omega, delta); }

DressedEigenvalues dressed_eigenvalues(double omega, double delta) {
  const double omega_eff = effective_rabi(omega, delta);
  DressedEigenvalues out;
  if (omega_eff == 0.0) return out;
  if (delta >= 0.0) {
    out.minus = 0.5 * (-delta - omega_eff);
    out.plus = -0.25 * omega * omega / out.minus;
  } else {
    out.plus = 0.5 * (-delta + omega_eff);
    out.minus = -0.25 * omega * omega / out.plus;
  }
  return out;
}

ChannelKinematics channel_kinematics(const PhysicalParams& params) {
  return make_kinematics<double>(params);
}

}  // namespace ramsey
