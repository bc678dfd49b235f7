// SPDX-License-Identifier: Apache-2.0
//
// Single-satellite downlink budget in received-power terms.
#pragma once

#include <cstdint>

namespace dbf {

struct LinkBudgetParams {
  double distance = 550e3;            // m
  double frequency = 3.5e9;           // Hz
  double eirp = 36.7;                 // dBW
  double tx_antenna_gain = 37.1;      // dBi, informational: already inside EIRP
  double rx_antenna_gain = 0.0;       // dBi
  double atmospheric_rain_loss = 5.0; // dB
  double tx_losses = 2.0;             // dB
  double rx_losses = 2.0;             // dB
  double sensitivity = -96.5;         // dBm, n78 reference sensitivity

  void validate() const;
  bool operator==(const LinkBudgetParams&) const = default;
};

struct BudgetResult {
  double fspl = 0.0;                   // dB
  double received_power = 0.0;         // dBm
  double margin_vs_sensitivity = 0.0;  // dB, negative means deficit
};

double wavelength(double frequency);

/// Free-space path loss 20 log10(4 pi d / lambda).
double fspl(double distance, double frequency);

/// Distance at which the free-space path loss equals `loss_db`.
double fspl_distance(double loss_db, double frequency);

/// EIRP(dBm) - FSPL - atmospheric/rain - tx losses - rx losses + rx gain.
/// Both loss terms are subtracted after EIRP; that order reproduces the
/// published -100.4 dBm for the 550 km / 3.5 GHz case.
BudgetResult received_power(const LinkBudgetParams& p);

/// Smallest N >= 1 whose ideal coherent gain 20 log10(N) meets the
/// requirement.
std::uint64_t min_coherent_satellites(double required_enhancement_db);

}  // namespace dbf
