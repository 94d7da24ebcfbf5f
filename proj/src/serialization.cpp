#include "gsd/serialization.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <climits>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gsd {
namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  const std::string body = trim(text);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
    throw std::runtime_error("expected a bracketed list, got: " + text);
  }
  std::vector<std::string> items;
  std::string current;
  for (std::size_t i = 1; i + 1 < body.size(); ++i) {
    if (body[i] == ',') {
      items.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(body[i]);
    }
  }
  const std::string last = trim(current);
  if (!last.empty()) items.push_back(last);
  for (const std::string& item : items) {
    if (item.empty()) throw std::runtime_error("empty element in list: " + text);
  }
  return items;
}

std::ofstream open_for_writing(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

std::ifstream open_for_reading(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  return in;
}

void finish_writing(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("failed while writing " + path);
}

}  // namespace

std::string format_real(double x) {
  // %.15g is enough for most values; widen until the text round-trips.
  std::array<char, 64> buffer{};
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buffer.data(), buffer.size(), "%.*g", precision, x);
    const double back = std::strtod(buffer.data(), nullptr);
    if (back == x || (std::isnan(back) && std::isnan(x))) break;
  }
  return buffer.data();
}

std::string format_real_list(const Eigen::VectorXd& values) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_real(values[i]);
  }
  return out + "]";
}

std::string format_int_list(const std::vector<int>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(values[i]);
  }
  return out + "]";
}

bool KeyValues::has(const std::string& key) const {
  for (const auto& [k, v] : items) {
    if (k == key) return true;
  }
  return false;
}

const std::string& KeyValues::get(const std::string& key) const {
  for (const auto& [k, v] : items) {
    if (k == key) return v;
  }
  throw std::runtime_error("missing required field: " + key);
}

std::string KeyValues::get_or(const std::string& key, std::string fallback) const {
  return has(key) ? get(key) : std::move(fallback);
}

KeyValues read_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("line " + std::to_string(line_number) +
                               ": expected `key = value`, got: " + body);
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error("line " + std::to_string(line_number) + ": empty key");
    }
    out.items.emplace_back(key, value);
  }
  return out;
}

KeyValues read_key_values_file(const std::string& path) {
  std::ifstream in = open_for_reading(path);
  return read_key_values(in);
}

double parse_real(const std::string& text) {
  const std::string body = trim(text);
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(body.c_str(), &end);
  if (end != body.c_str() + body.size() || body.empty() || errno == ERANGE) {
    throw std::runtime_error("not a real number: " + text);
  }
  return value;
}

long long parse_integer(const std::string& text) {
  const std::string body = trim(text);
  errno = 0;
  char* end = nullptr;
  const long long value = std::strtoll(body.c_str(), &end, 10);
  if (end != body.c_str() + body.size() || body.empty() || errno == ERANGE) {
    throw std::runtime_error("not an integer: " + text);
  }
  return value;
}

std::uint64_t parse_seed(const std::string& text) {
  const std::string body = trim(text);
  errno = 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(body.c_str(), &end, 10);
  if (end != body.c_str() + body.size() || body.empty() || errno == ERANGE ||
      body.front() == '-') {
    throw std::runtime_error("not a seed value: " + text);
  }
  return value;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split_list(text)) out.push_back(parse_real(item));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& item : split_list(text)) {
    const long long value = parse_integer(item);
    if (value < INT_MIN || value > INT_MAX) throw std::runtime_error("integer overflow: " + item);
    out.push_back(static_cast<int>(value));
  }
  return out;
}

std::vector<std::string> parse_name_list(const std::string& text) { return split_list(text); }

void write_graph(std::ostream& out, const Graph& graph) {
  out << "n " << graph.num_vertices() << "\n";
  if (graph.has_positions()) {
    const auto& positions = graph.positions();
    for (std::size_t i = 0; i < positions.size(); ++i) {
      out << "pos " << i << " " << format_real(positions[i][0]) << " "
          << format_real(positions[i][1]) << "\n";
    }
  }
  for (const Edge& e : graph.edges()) {
    out << e.i << " " << e.j << " " << format_real(e.weight) << "\n";
  }
}

Graph read_graph(std::istream& in) {
  std::string line;
  int n = -1;
  std::vector<Edge> edges;
  std::vector<std::array<double, 2>> positions;
  std::vector<bool> has_position;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::istringstream tokens(body);
    std::string head;
    tokens >> head;
    const auto fail = [&](const std::string& why) {
      throw std::runtime_error("graph line " + std::to_string(line_number) + ": " + why);
    };
    if (n < 0) {
      int count = 0;
      if (head != "n" || !(tokens >> count) || count < 1) fail("expected header `n <count>`");
      n = count;
      positions.assign(n, {0.0, 0.0});
      has_position.assign(n, false);
      continue;
    }
    if (head == "pos") {
      int i = -1;
      double x = 0, y = 0;
      if (!(tokens >> i >> x >> y) || i < 0 || i >= n) fail("bad position line");
      if (has_position[i]) fail("duplicate position for vertex " + std::to_string(i));
      positions[i] = {x, y};
      has_position[i] = true;
      continue;
    }
    Edge e;
    if (!(std::istringstream(body) >> e.i >> e.j >> e.weight)) fail("bad edge line");
    edges.push_back(e);
  }
  if (n < 0) throw std::runtime_error("graph file has no `n <count>` header");
  const bool any_position =
      std::any_of(has_position.begin(), has_position.end(), [](bool b) { return b; });
  if (any_position) {
    for (int i = 0; i < n; ++i) {
      if (!has_position[i]) {
        throw std::runtime_error("missing position for vertex " + std::to_string(i));
      }
    }
    return Graph(n, std::move(edges), std::move(positions));
  }
  return Graph(n, std::move(edges));
}

void write_graph_file(const std::string& path, const Graph& graph) {
  std::ofstream out = open_for_writing(path);
  write_graph(out, graph);
  finish_writing(out, path);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in = open_for_reading(path);
  return read_graph(in);
}

void write_prior(std::ostream& out, const PriorSpec& prior) {
  out << "band = " << format_int_list(prior.band) << "\n";
  out << "mean = " << format_real_list(prior.mean) << "\n";
  out << "variances = " << format_real_list(prior.variances) << "\n";
  out << "noise_variance = " << format_real(prior.noise_variance) << "\n";
}

PriorSpec read_prior(std::istream& in) {
  const KeyValues kv = read_key_values(in);
  PriorSpec prior;
  prior.band = parse_int_list(kv.get("band"));
  const std::vector<double> mean = parse_real_list(kv.get("mean"));
  const std::vector<double> variances = parse_real_list(kv.get("variances"));
  prior.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), mean.size());
  prior.variances = Eigen::Map<const Eigen::VectorXd>(variances.data(), variances.size());
  prior.noise_variance = parse_real(kv.get("noise_variance"));
  return prior;
}

void write_prior_file(const std::string& path, const PriorSpec& prior) {
  std::ofstream out = open_for_writing(path);
  write_prior(out, prior);
  finish_writing(out, path);
}

PriorSpec read_prior_file(const std::string& path) {
  std::ifstream in = open_for_reading(path);
  return read_prior(in);
}

void write_design(std::ostream& out, const DesignRecord& record) {
  out << "method = " << record.method << "\n";
  out << "seed = " << record.seed << "\n";
  out << "objective = " << format_real(record.objective) << "\n";
  out << "gap = " << format_real(record.gap) << "\n";
  out << "eta = " << format_real_list(record.eta) << "\n";
  out << "counts = " << format_int_list(record.counts) << "\n";
}

DesignRecord read_design(std::istream& in) {
  const KeyValues kv = read_key_values(in);
  DesignRecord record;
  record.method = kv.get("method");
  record.seed = parse_seed(kv.get("seed"));
  record.objective = parse_real(kv.get("objective"));
  record.gap = parse_real(kv.get("gap"));
  const std::vector<double> eta = parse_real_list(kv.get("eta"));
  record.eta = Eigen::Map<const Eigen::VectorXd>(eta.data(), eta.size());
  record.counts = parse_int_list(kv.get("counts"));
  return record;
}

void write_design_file(const std::string& path, const DesignRecord& record) {
  std::ofstream out = open_for_writing(path);
  write_design(out, record);
  finish_writing(out, path);
}

DesignRecord read_design_file(const std::string& path) {
  std::ifstream in = open_for_reading(path);
  return read_design(in);
}

void write_disc_table(std::ostream& out, const std::vector<DiscSet>& sets,
                      const std::vector<ContainmentReport>& reports) {
  if (sets.size() != reports.size()) {
    throw std::invalid_argument("one containment report per disc set required");
  }
  out << "vertex center radius label\n";
  for (const DiscSet& set : sets) {
    const std::string label = to_string(set.label);
    for (int i = 0; i < set.size(); ++i) {
      out << i << " " << format_real(set.centers[i]) << " " << format_real(set.radii[i]) << " "
          << label << "\n";
    }
  }
  out << "\n";
  for (std::size_t s = 0; s < sets.size(); ++s) {
    out << "containment " << to_string(sets[s].label) << " "
        << (reports[s].all_contained ? "pass" : "fail") << " "
        << format_real(reports[s].max_violation) << "\n";
  }
}

}  // namespace gsd
