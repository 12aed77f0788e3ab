#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "tprophet/analytics.hpp"
#include "tprophet/engine.hpp"

namespace tprophet {

/// "1;3" with one-based ids; empty for the empty set.
std::string held_field(StockSet s);

/// %.17g, enough digits to round-trip a double.
std::string format_double(double value);

/// step,price_1..price_k,held,cashflow. Steps are one-based.
void write_trace_csv(std::ostream& out, const Trace& trace);

void write_stats_header(std::ostream& out);
void write_stats_row(std::ostream& out, std::string_view policy, const MonteCarloStats& stats);

struct RatioRow {
  std::string instance_id;
  std::string matroid_kind;
  Rational density;
  RatioReport report;
};

void write_ratio_header(std::ostream& out);
/// Rationals as "p/q"; an undefined ratio is written as "undefined".
void write_ratio_row(std::ostream& out, const RatioRow& row);

}  // namespace tprophet
