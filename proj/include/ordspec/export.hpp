#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ordspec/descriptors.hpp"
#include "ordspec/monitor.hpp"
#include "ordspec/nulldist.hpp"
#include "ordspec/stats.hpp"

namespace ordspec {

// Shortest decimal that round-trips to the same double.
std::string format_double(double v);
// Empty string for nullopt/NaN, which is how CSV marks undefined values.
std::string format_optional(std::optional<double> v);

nlohmann::ordered_json to_json(const DescriptorSet& d);
nlohmann::ordered_json to_json(const EigenSummary& e);
nlohmann::ordered_json to_json(const NullDistributionSummary& s);
nlohmann::ordered_json to_json(const MonitorTrace& t);
nlohmann::ordered_json to_json(const GroupComparison& g, Metric metric);

void write_descriptor_csv(std::ostream& os, const DescriptorSet& d);
void write_histogram_csv(std::ostream& os, const Histogram& h);
void write_qq_csv(std::ostream& os, std::span<const QQPoint> points);
void write_trace_csv(std::ostream& os, const MonitorTrace& t);
void write_comparison_csv(std::ostream& os, const GroupComparison& g);

std::string_view to_string(RankSumMethod m);

}  // namespace ordspec
