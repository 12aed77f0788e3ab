#include "tprophet/csv.hpp"

#include <cstdio>

namespace tprophet {

std::string held_field(StockSet s) {
  std::string out;
  for (std::size_t e : s.elements()) {
    if (!out.empty()) out += ';';
    out += std::to_string(e + 1);
  }
  return out;
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  const std::size_t k = trace.prices.empty() ? 0 : trace.prices.front().size();
  out << "step";
  for (std::size_t s = 1; s <= k; ++s) out << ",price_" << s;
  out << ",held,cashflow\n";
  for (std::size_t t = 0; t < trace.prices.size(); ++t) {
    out << t + 1;
    for (const auto& p : trace.prices[t]) out << ',' << to_string(p);
    out << ',' << held_field(trace.holdings[t]) << ',' << to_string(trace.cashflows[t]) << '\n';
  }
}

void write_stats_header(std::ostream& out) {
  out << "policy,trials,mean,stderr,per_step_mean\n";
}

void write_stats_row(std::ostream& out, std::string_view policy, const MonteCarloStats& stats) {
  out << policy << ',' << stats.trials << ',' << format_double(stats.mean_profit) << ','
      << format_double(stats.std_error) << ',' << format_double(stats.per_step_mean) << '\n';
}

void write_ratio_header(std::ostream& out) {
  out << "instance_id,matroid_kind,density,online,offline,ratio,bound,satisfied\n";
}

void write_ratio_row(std::ostream& out, const RatioRow& row) {
  const RatioReport& r = row.report;
  out << row.instance_id << ',' << row.matroid_kind << ',' << to_string(row.density) << ','
      << to_string(r.online_per_step) << ',' << to_string(r.offline_per_step) << ','
      << (r.ratio ? to_string(*r.ratio) : std::string("undefined")) << ',' << to_string(r.bound)
      << ',' << (r.satisfied ? "true" : "false") << '\n';
}

}  // namespace tprophet
