#pragma once

#include "rwkb/config.hpp"

#include <ostream>
#include <string>

namespace rwkb {

inline constexpr int exit_success = 0;
inline constexpr int exit_config_error = 2;
inline constexpr int exit_numerical_failure = 3;

/// Columns n_r,l,branch,E_semiclassical,E_closed_form,E_oracle,residual.
/// E_closed_form is empty unless the potential is Coulomb, E_oracle unless
/// with_oracle is set. Failed levels are listed after the table.
int run_spectrum(const RunConfig& config, std::ostream& out);

/// Columns E,I_r_over_hbar,status over energy_points energies spaced evenly in
/// [energy_min, energy_max]. Energies without a bound region are flagged in the
/// status column.
int run_action_table(const RunConfig& config, std::ostream& out);

/// Columns r,value,amplitude,phase for level (n_r, l), after a header with n_r,
/// l and E.
int run_wavefunction(const RunConfig& config, std::ostream& out);

/// Columns n_r,l,E_semiclassical,E_oracle,E_closed_form,difference, where
/// difference = |E_semiclassical - E_oracle| / m c^2; fails if the largest
/// difference exceeds verify_tolerance.
int run_verify(const RunConfig& config, std::ostream& out);

/// Dispatches on config.command. Config errors map to exit 2 and numerical
/// errors to exit 3, with the message on `err`.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Column documentation for --help.
std::string column_help();

} // namespace rwkb
