#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gsd/gershgorin.hpp"
#include "gsd/graph.hpp"

namespace gsd {

// Shortest decimal form that parses back to the same double, so emitted
// files are byte-stable and lossless.
std::string format_real(double x);
std::string format_real_list(const Eigen::VectorXd& values);
std::string format_int_list(const std::vector<int>& values);

// `key = value` text, one pair per line; values are scalars, names, or
// bracketed comma-separated lists. Blank lines and `#` comments are skipped.
struct KeyValues {
  std::vector<std::pair<std::string, std::string>> items;

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;  // throws when missing
  std::string get_or(const std::string& key, std::string fallback) const;
};

KeyValues read_key_values(std::istream& in);
KeyValues read_key_values_file(const std::string& path);

double parse_real(const std::string& text);
long long parse_integer(const std::string& text);
std::uint64_t parse_seed(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
std::vector<std::string> parse_name_list(const std::string& text);

// Graph file: `n <N>` header, optional `pos <i> <x> <y>` per vertex, then
// one `<i> <j> <w>` line per undirected edge, 0-based indices.
void write_graph(std::ostream& out, const Graph& graph);
Graph read_graph(std::istream& in);
void write_graph_file(const std::string& path, const Graph& graph);
Graph read_graph_file(const std::string& path);

// Prior file: band, mean, variances, noise_variance.
struct PriorSpec {
  std::vector<int> band;
  Eigen::VectorXd mean;
  Eigen::VectorXd variances;
  double noise_variance = 0.0;
};

void write_prior(std::ostream& out, const PriorSpec& prior);
PriorSpec read_prior(std::istream& in);
void write_prior_file(const std::string& path, const PriorSpec& prior);
PriorSpec read_prior_file(const std::string& path);

// Design file: method, seed, objective, gap (nan for heuristics, which have
// no duality certificate), proportions and quantized counts.
struct DesignRecord {
  std::string method;
  std::uint64_t seed = 0;
  double objective = 0.0;
  double gap = std::numeric_limits<double>::quiet_NaN();
  Eigen::VectorXd eta;
  std::vector<int> counts;
};

void write_design(std::ostream& out, const DesignRecord& record);
DesignRecord read_design(std::istream& in);
void write_design_file(const std::string& path, const DesignRecord& record);
DesignRecord read_design_file(const std::string& path);

// Disc table: `vertex center radius label` rows for each set, then one
// `containment <label> <pass|fail> <max_violation>` footer line per set.
void write_disc_table(std::ostream& out, const std::vector<DiscSet>& sets,
                      const std::vector<ContainmentReport>& reports);

}  // namespace gsd
