// SPDX-License-Identifier: Apache-2.0
#include "dbf/link_budget.hpp"

#include <cmath>
#include <stdexcept>

#include "dbf/types.hpp"

namespace dbf {

void LinkBudgetParams::validate() const {
  if (!(distance > 0.0)) throw std::invalid_argument("budget.distance must be > 0");
  if (!(frequency > 0.0)) throw std::invalid_argument("budget.frequency must be > 0");
  if (!(atmospheric_rain_loss >= 0.0))
    throw std::invalid_argument("budget.atmospheric_rain_loss must be >= 0");
  if (!(tx_losses >= 0.0)) throw std::invalid_argument("budget.tx_losses must be >= 0");
  if (!(rx_losses >= 0.0)) throw std::invalid_argument("budget.rx_losses must be >= 0");
  if (!std::isfinite(eirp) || !std::isfinite(rx_antenna_gain) || !std::isfinite(sensitivity))
    throw std::invalid_argument("budget values must be finite");
}

double wavelength(double frequency) {
  if (!(frequency > 0.0)) throw std::invalid_argument("frequency must be > 0");
  return FreeSpaceConstants::light_speed / frequency;
}

double fspl(double distance, double frequency) {
  if (!(distance > 0.0)) throw std::invalid_argument("distance must be > 0");
  return 20.0 * std::log10(4.0 * kPi * distance / wavelength(frequency));
}

double fspl_distance(double loss_db, double frequency) {
  return std::pow(10.0, loss_db / 20.0) * wavelength(frequency) / (4.0 * kPi);
}

BudgetResult received_power(const LinkBudgetParams& p) {
  p.validate();
  BudgetResult r;
  r.fspl = fspl(p.distance, p.frequency);
  const double eirp_dbm = p.eirp + 30.0;
  r.received_power = eirp_dbm - r.fspl - p.atmospheric_rain_loss - p.tx_losses - p.rx_losses +
                     p.rx_antenna_gain;
  r.margin_vs_sensitivity = r.received_power - p.sensitivity;
  return r;
}

std::uint64_t min_coherent_satellites(double required_enhancement_db) {
  if (!std::isfinite(required_enhancement_db))
    throw std::invalid_argument("required enhancement must be finite");
  if (required_enhancement_db <= 0.0) return 1;
  const double ratio = std::pow(10.0, required_enhancement_db / 20.0);
  if (!(ratio < 9.0e15)) throw std::invalid_argument("required enhancement out of range");
  auto n = static_cast<std::uint64_t>(std::ceil(ratio));
  auto meets = [&](std::uint64_t k) {
    return 20.0 * std::log10(static_cast<double>(k)) >= required_enhancement_db;
  };
  // The ceil above can land one off when the ratio sits on an integer.
  while (!meets(n)) ++n;
  while (n > 1 && meets(n - 1)) --n;
  return n;
}

}  // namespace dbf
