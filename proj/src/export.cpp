#include "ordspec/export.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

namespace ordspec {

using nlohmann::ordered_json;

namespace {

ordered_json optional_json(std::optional<double> v) {
  if (!v || std::isnan(*v)) return nullptr;
  return *v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string format_optional(std::optional<double> v) {
  return v ? format_double(*v) : std::string();
}

std::string_view to_string(RankSumMethod m) {
  return m == RankSumMethod::exact ? "exact" : "normal_approx";
}

ordered_json to_json(const DescriptorSet& d) {
  ordered_json j;
  j["cid"] = d.cid;
  j["cod"] = d.cod;
  j["entropy"] = d.spectral_entropy;
  j["L_used"] = d.length_used;
  j["q_used"] = d.q_used;
  return j;
}

ordered_json to_json(const EigenSummary& e) {
  ordered_json j;
  j["eigenvalues"] = e.eigenvalues;
  j["partial_sums"] = e.partial_sums;
  return j;
}

ordered_json to_json(const NullDistributionSummary& s) {
  ordered_json j;
  j["descriptor"] = std::string(to_string(s.descriptor));
  j["n"] = s.n;
  j["mode"] = s.mode == NullMode::exact ? "exact" : "monte_carlo";
  j["trials"] = s.trials;
  j["seed"] = s.seed ? ordered_json(*s.seed) : ordered_json(nullptr);
  j["mean"] = s.moments.mean;
  j["std"] = s.moments.std;
  j["standard_error"] = s.standard_error();
  j["skewness"] = s.moments.skewness;
  j["excess_kurtosis"] = s.moments.excess_kurtosis;
  j["histogram"] = {{"bin_edges", s.histogram.edges}, {"counts", s.histogram.counts}};
  return j;
}

ordered_json to_json(const MonitorTrace& t) {
  ordered_json frames = ordered_json::array();
  for (const auto& f : t.frames) {
    ordered_json row;
    row["start_index"] = f.start_index;
    row["cid"] = f.descriptors ? ordered_json(f.descriptors->cid) : ordered_json(nullptr);
    row["cod"] = f.descriptors ? ordered_json(f.descriptors->cod) : ordered_json(nullptr);
    row["entropy"] =
        f.descriptors ? ordered_json(f.descriptors->spectral_entropy) : ordered_json(nullptr);
    row["L_used"] = f.descriptors ? ordered_json(f.descriptors->length_used) : ordered_json(nullptr);
    row["local_energy"] = f.local_energy;
    row["combined_cid"] = optional_json(f.combined_cid);
    row["combined_cod"] = optional_json(f.combined_cod);
    frames.push_back(std::move(row));
  }
  ordered_json j;
  j["frames"] = std::move(frames);
  return j;
}

ordered_json to_json(const GroupComparison& g, Metric metric) {
  ordered_json j;
  j["metric"] = std::string(to_string(metric));
  ordered_json groups = ordered_json::array();
  for (std::size_t i = 0; i < g.names.size(); ++i) {
    groups.push_back({{"name", g.names[i]}, {"n", g.sizes[i]}, {"median", g.medians[i]}});
  }
  j["groups"] = std::move(groups);
  ordered_json pairs = ordered_json::array();
  for (std::size_t a = 0; a < g.names.size(); ++a) {
    for (std::size_t b = a + 1; b < g.names.size(); ++b) {
      pairs.push_back({{"group_a", g.names[a]},
                       {"group_b", g.names[b]},
                       {"p_two_sided", g.p_values[a][b]},
                       {"method", std::string(to_string(g.methods[a][b]))}});
    }
  }
  j["pairs"] = std::move(pairs);
  j["p_matrix"] = g.p_values;
  return j;
}

void write_descriptor_csv(std::ostream& os, const DescriptorSet& d) {
  os << "cid,cod,entropy,L_used,q_used\n"
     << format_double(d.cid) << ',' << format_double(d.cod) << ','
     << format_double(d.spectral_entropy) << ',' << d.length_used << ','
     << format_double(d.q_used) << '\n';
}

void write_histogram_csv(std::ostream& os, const Histogram& h) {
  os << "bin_left,bin_right,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    os << format_double(h.edges[i]) << ',' << format_double(h.edges[i + 1]) << ',' << h.counts[i]
       << '\n';
  }
}

void write_qq_csv(std::ostream& os, std::span<const QQPoint> points) {
  os << "probability,empirical,normal\n";
  for (const auto& p : points) {
    os << format_double(p.probability) << ',' << format_double(p.empirical) << ','
       << format_double(p.normal) << '\n';
  }
}

void write_trace_csv(std::ostream& os, const MonitorTrace& t) {
  os << "start_index,cid,cod,entropy,local_energy,combined_cid,combined_cod\n";
  for (const auto& f : t.frames) {
    os << f.start_index << ',';
    if (f.descriptors) {
      os << format_double(f.descriptors->cid) << ',' << format_double(f.descriptors->cod) << ','
         << format_double(f.descriptors->spectral_entropy);
    } else {
      os << ",,";
    }
    os << ',' << format_double(f.local_energy) << ',' << format_optional(f.combined_cid) << ','
       << format_optional(f.combined_cod) << '\n';
  }
}

void write_comparison_csv(std::ostream& os, const GroupComparison& g) {
  os << "group_a,group_b,n_a,n_b,median_a,median_b,p_two_sided,method\n";
  for (std::size_t a = 0; a < g.names.size(); ++a) {
    for (std::size_t b = a + 1; b < g.names.size(); ++b) {
      os << g.names[a] << ',' << g.names[b] << ',' << g.sizes[a] << ',' << g.sizes[b] << ','
         << format_double(g.medians[a]) << ',' << format_double(g.medians[b]) << ','
         << format_double(g.p_values[a][b]) << ',' << to_string(g.methods[a][b]) << '\n';
    }
  }
}

}  // namespace ordspec
