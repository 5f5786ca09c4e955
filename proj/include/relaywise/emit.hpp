#pragma once

#include <iosfwd>
#include <string>

#include "relaywise/sweep.hpp"

namespace relaywise {

/// Formats a double with 12 significant digits ("%.12g").
std::string fmt_g12(double v);

// CSV columns: budget, mode, relay_id, user_id, power, user_capacity_bits,
// class_or_strategy, sum_capacity_bits. The label column carries the user
// class for pure modes and the per-user strategy for hybrid modes;
// sum_capacity_bits repeats the network sum for the row's budget/mode.
void write_network_csv_rows(const NetworkResult& net, const Scenario& scenario, Mode mode,
                            double budget, std::ostream& out);
void write_sweep_csv(const SweepResult& result, const Scenario& scenario, std::ostream& out);
void write_network_csv(const NetworkResult& net, const Scenario& scenario, Mode mode,
                       double budget, std::ostream& out);

std::string sweep_to_json(const SweepResult& result, const Scenario& scenario);
std::string network_to_json(const NetworkResult& net, const Scenario& scenario, Mode mode,
                            double budget);

/// Self-contained SVG of sum capacity vs relay power, one polyline per mode.
void write_sweep_svg(const SweepResult& result, std::ostream& out);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace relaywise
