#include "ctqw/run.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ctqw/collapse.hpp"
#include "ctqw/errors.hpp"
#include "ctqw/graph.hpp"
#include "ctqw/limiting.hpp"
#include "ctqw/spectral.hpp"
#include "ctqw/walk.hpp"

namespace ctqw {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "ctqw 1.0.0";
constexpr const char* kCsvHeader = "t,j,k,p,pi,ratio";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Serialized probabilities never go below zero; roundoff can leave -1e-17.
double clamp_probability(double x) { return x < 0.0 ? 0.0 : x; }

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x));
}

json numbers(const Eigen::VectorXd& v, bool probability) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(number(probability ? clamp_probability(v(i)) : v(i)));
  return arr;
}

std::string csv_number(double x) { return std::isfinite(x) ? format_number(x) : std::string{}; }

struct Source {
  Graph graph;
  std::optional<GluedTreeSpec> tree;
};

Source load_graph(const RunConfig& config) {
  if (config.generation.has_value() == config.graph_file.has_value()) {
    throw ConfigError("exactly one of --generation and --graph-file is required");
  }
  if (config.generation) {
    GluedTreeSpec spec{*config.generation};
    return {build_glued_tree(spec), spec};
  }
  std::ifstream in(*config.graph_file);
  if (!in) throw IoError("cannot open graph file " + *config.graph_file);
  return {parse_edge_list(in), std::nullopt};
}

void require_times(const RunConfig& config) {
  if (config.times.empty()) throw ConfigError("time grid is empty; pass --times or --t-max/--t-steps");
}

void write_csv_header(std::ostream& os, const RunConfig& config, const char* header) {
  if (config.version_header) os << "# " << kVersion << '\n';
  os << header << '\n';
}

void finish_json(std::ostream& os, const RunConfig& config, json doc) {
  if (config.version_header) doc["version"] = kVersion;
  os << doc.dump(2) << '\n';
}

void run_generate(const RunConfig& config, std::ostream& os) {
  const auto source = load_graph(config);
  if (config.version_header) os << "# " << kVersion << '\n';
  os << serialize(source.graph);
}

void run_spectrum(const RunConfig& config, std::ostream& os) {
  const auto source = load_graph(config);
  const auto a = adjacency_matrix(source.graph);
  const auto d = decompose_symmetric(a);
  const auto groups = group_degenerate(d, config.degeneracy_tol);

  if (config.format == OutputFormat::csv) {
    write_csv_header(os, config, "n,lambda,group");
    for (std::size_t g = 0; g < groups.groups.size(); ++g) {
      for (auto n : groups.groups[g]) os << n << ',' << format_number(d.eigenvalues(n)) << ',' << g << '\n';
    }
    return;
  }
  json jgroups = json::array();
  for (std::size_t g = 0; g < groups.groups.size(); ++g) {
    jgroups.push_back({{"value", number(groups.values[g])}, {"indices", groups.groups[g]}});
  }
  finish_json(os, config,
              {{"n_nodes", source.graph.n_nodes()},
               {"eigenvalues", numbers(d.eigenvalues, false)},
               {"tolerance", number(groups.tolerance)},
               {"groups", jgroups}});
}

void run_propagate(const RunConfig& config, std::ostream& os) {
  require_times(config);
  const auto source = load_graph(config);
  const NodeId start{config.start};
  source.graph.check_node(start);
  const auto d = decompose_symmetric(adjacency_matrix(source.graph));

  json frames = json::array();
  if (config.format == OutputFormat::csv) write_csv_header(os, config, kCsvHeader);
  for (double t : config.times) {
    const auto dist = walk_distribution(d, {config.gamma, t}, start);
    Eigen::VectorXd ratio(dist.classical.size());
    for (Eigen::Index j = 0; j < ratio.size(); ++j) ratio(j) = ratio_or_missing(dist.quantum(j), dist.classical(j));

    if (config.format == OutputFormat::csv) {
      for (Eigen::Index j = 0; j < ratio.size(); ++j) {
        os << format_number(t) << ',' << j + 1 << ',' << start.value << ','
           << format_number(clamp_probability(dist.classical(j))) << ','
           << format_number(clamp_probability(dist.quantum(j))) << ',' << csv_number(ratio(j)) << '\n';
      }
    } else {
      frames.push_back({{"t", number(t)},
                        {"p", numbers(dist.classical, true)},
                        {"pi", numbers(dist.quantum, true)},
                        {"ratio", numbers(ratio, false)}});
    }
  }
  if (config.format == OutputFormat::json) {
    finish_json(os, config,
                {{"gamma", number(config.gamma)},
                 {"start", start.value},
                 {"n_nodes", source.graph.n_nodes()},
                 {"frames", frames}});
  }
}

void run_compare(const RunConfig& config, std::ostream& os) {
  require_times(config);
  if (config.pairs.empty()) throw ConfigError("compare needs at least one j:k pair");
  const auto source = load_graph(config);
  for (const auto& [j, k] : config.pairs) {
    source.graph.check_node(NodeId{j});
    source.graph.check_node(NodeId{k});
  }
  const auto d = decompose_symmetric(adjacency_matrix(source.graph));

  if (config.format == OutputFormat::csv) {
    write_csv_header(os, config, kCsvHeader);
    for (double t : config.times) {
      const WalkParams params{config.gamma, t};
      for (const auto& [j, k] : config.pairs) {
        const double p = ctrw_probability(d, params, NodeId{j}, NodeId{k});
        const double pi = ctqw_probability(d, params, NodeId{j}, NodeId{k});
        os << format_number(t) << ',' << j << ',' << k << ',' << format_number(clamp_probability(p)) << ','
           << format_number(clamp_probability(pi)) << ',' << csv_number(ratio_or_missing(pi, p)) << '\n';
      }
    }
    return;
  }
  json series = json::array();
  for (const auto& [j, k] : config.pairs) {
    json ts = json::array();
    json ps = json::array();
    json pis = json::array();
    json ratios = json::array();
    for (double t : config.times) {
      const WalkParams params{config.gamma, t};
      const double p = ctrw_probability(d, params, NodeId{j}, NodeId{k});
      const double pi = ctqw_probability(d, params, NodeId{j}, NodeId{k});
      ts.push_back(number(t));
      ps.push_back(number(clamp_probability(p)));
      pis.push_back(number(clamp_probability(pi)));
      ratios.push_back(number(ratio_or_missing(pi, p)));
    }
    series.push_back({{"j", j}, {"k", k}, {"t", ts}, {"p", ps}, {"pi", pis}, {"ratio", ratios}});
  }
  finish_json(os, config, {{"gamma", number(config.gamma)}, {"series", series}});
}

void run_limit(const RunConfig& config, std::ostream& os) {
  const auto source = load_graph(config);
  const NodeId start{config.start};
  source.graph.check_node(start);
  const auto d = decompose_symmetric(adjacency_matrix(source.graph));
  const auto profile = chi_profile(d, group_degenerate(d, config.degeneracy_tol), start);

  if (config.format == OutputFormat::csv) {
    write_csv_header(os, config, "j,chi");
    for (Eigen::Index j = 0; j < profile.chi.size(); ++j) {
      os << j + 1 << ',' << format_number(clamp_probability(profile.chi(j))) << '\n';
    }
    return;
  }
  finish_json(os, config, {{"start", start.value}, {"chi", numbers(profile.chi, true)}});
}

json structure_json(const RunConfig& config, const ReducedChain& chain, const ReducedWalk& limit, int start) {
  const auto& part = chain.basis;
  json clusters = json::array();
  for (const auto& c : part.clusters) {
    json ids = json::array();
    for (auto n : c) ids.push_back(n.value);
    clusters.push_back(ids);
  }
  json matrix = json::array();
  for (Eigen::Index r = 0; r < chain.matrix.rows(); ++r) matrix.push_back(numbers(chain.matrix.row(r).transpose(), false));
  return {{"direction", config.direction == Direction::left_right ? "left-right" : "top-bottom"},
          {"generation", *config.generation},
          {"start", start},
          {"partition", clusters},
          {"sizes", part.sizes},
          {"bonds", part.bonds},
          {"functionality", part.functionality},
          {"matrix", matrix},
          {"chi", numbers(limit.chi.col(start - 1), true)}};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file << content;
  if (!file) throw IoError("failed writing " + path.string());
}

std::filesystem::path resolve(const RunConfig& config, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative() && config.output_dir) return std::filesystem::path(*config.output_dir) / p;
  return p;
}

void run_collapse(const RunConfig& config, std::ostream& os) {
  require_times(config);
  if (!config.generation || config.graph_file) throw ConfigError("collapse works on glued trees; pass --generation only");
  const GluedTreeSpec spec{*config.generation};
  const auto g = build_glued_tree(spec);
  const auto partition =
      config.direction == Direction::left_right ? left_right_partition(spec, g) : row_partition(spec, g);
  const auto chain = reduce(partition, adjacency_matrix(g));
  const int m = static_cast<int>(partition.cluster_count());
  if (config.start < 1 || config.start > m) {
    throw InvalidNodeError("start cluster " + std::to_string(config.start) + " outside 1.." + std::to_string(m));
  }
  const auto k = static_cast<Eigen::Index>(config.start - 1);

  const auto limit = reduced_walk(chain, {config.gamma, 0.0}, config.degeneracy_tol);
  json structure = structure_json(config, chain, limit, config.start);
  if (config.structure_output) write_file(resolve(config, *config.structure_output), structure.dump(2) + "\n");

  json frames = json::array();
  if (config.format == OutputFormat::csv) write_csv_header(os, config, kCsvHeader);
  for (double t : config.times) {
    const auto walk = reduced_walk(chain, {config.gamma, t}, config.degeneracy_tol);
    const Eigen::VectorXd p = cluster_occupation(partition, walk.classical).col(k);
    const Eigen::VectorXd pi = walk.probabilities.col(k);
    Eigen::VectorXd ratio(m);
    for (Eigen::Index j = 0; j < m; ++j) ratio(j) = ratio_or_missing(pi(j), p(j));
    if (config.format == OutputFormat::csv) {
      for (Eigen::Index j = 0; j < m; ++j) {
        os << format_number(t) << ',' << j + 1 << ',' << config.start << ','
           << format_number(clamp_probability(p(j))) << ',' << format_number(clamp_probability(pi(j))) << ','
           << csv_number(ratio(j)) << '\n';
      }
    } else {
      frames.push_back({{"t", number(t)}, {"p", numbers(p, true)}, {"pi", numbers(pi, true)}, {"ratio", numbers(ratio, false)}});
    }
  }
  if (config.format == OutputFormat::json) {
    structure["gamma"] = number(config.gamma);
    structure["frames"] = frames;
    finish_json(os, config, structure);
  }
}

void dispatch(const RunConfig& config, std::ostream& os) {
  switch (config.command) {
    case Command::generate: return run_generate(config, os);
    case Command::spectrum: return run_spectrum(config, os);
    case Command::propagate: return run_propagate(config, os);
    case Command::limit: return run_limit(config, os);
    case Command::collapse: return run_collapse(config, os);
    case Command::compare: return run_compare(config, os);
  }
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::vector<double> uniform_times(double t_max, int steps) {
  if (steps < 1) throw std::invalid_argument("--t-steps must be >= 1");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("--t-max must be finite and >= 0");
  std::vector<double> times;
  for (int i = 0; i <= steps; ++i) times.push_back(t_max * i / steps);
  return times;
}

std::vector<double> parse_times(const std::string& list) {
  std::vector<double> times;
  std::istringstream in(list);
  for (std::string item; std::getline(in, item, ',');) {
    std::size_t used = 0;
    double t = 0.0;
    try {
      t = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad time '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("bad time '" + item + "'");
    times.push_back(t);
  }
  if (times.empty()) throw std::invalid_argument("empty time list");
  return times;
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& list) {
  std::vector<std::pair<int, int>> pairs;
  std::istringstream in(list);
  for (std::string item; std::getline(in, item, ',');) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("pair '" + item + "' must look like j:k");
    try {
      std::size_t used_j = 0;
      std::size_t used_k = 0;
      const std::string js = item.substr(0, colon);
      const std::string ks = item.substr(colon + 1);
      const int j = std::stoi(js, &used_j);
      const int k = std::stoi(ks, &used_k);
      if (used_j != js.size() || used_k != ks.size()) throw std::invalid_argument(item);
      pairs.emplace_back(j, k);
    } catch (const std::exception&) {
      throw std::invalid_argument("pair '" + item + "' must look like j:k");
    }
  }
  if (pairs.empty()) throw std::invalid_argument("empty pair list");
  return pairs;
}

RunConfig with_environment(RunConfig config) {
  if (!config.degeneracy_tol) {
    if (const char* tol = std::getenv("CTQW_DEGENERACY_TOL"); tol && *tol) config.degeneracy_tol = std::stod(tol);
  }
  if (!config.output_dir) {
    if (const char* dir = std::getenv("CTQW_OUTPUT_DIR"); dir && *dir) config.output_dir = dir;
  }
  return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.output) {
      std::ostringstream buffer;
      dispatch(config, buffer);
      write_file(resolve(config, *config.output), buffer.str());
    } else {
      dispatch(config, out);
    }
    return kExitOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const StructuralError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ParseError& e) {
    err << "error: graph file " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const InvalidNodeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace ctqw
