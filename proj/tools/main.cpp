#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ctqw/run.hpp"

namespace {

struct Flags {
  std::optional<int> generation;
  std::optional<std::string> graph_file;
  double gamma = 1.0;
  int start = 1;
  std::optional<std::string> times;
  std::optional<double> t_max;
  std::optional<int> t_steps;
  std::optional<double> tol;
  std::optional<std::string> format;
  std::optional<std::string> output;
  std::optional<std::string> structure;
  std::string direction = "left-right";
  std::optional<std::string> pairs;
  bool header = false;
};

void add_graph_flags(CLI::App* cmd, Flags& f) {
  auto* gen = cmd->add_option("-g,--generation", f.generation, "glued-tree generation G >= 1");
  auto* file = cmd->add_option("--graph-file", f.graph_file, "edge-list file (one 'i j' pair per line)");
  gen->excludes(file);
  file->excludes(gen);
  cmd->add_option("-o,--output", f.output, "output path (default stdout)");
  cmd->add_flag("--header", f.header, "prefix output with a version line");
}

void add_time_flags(CLI::App* cmd, Flags& f) {
  auto* list = cmd->add_option("--times", f.times, "comma separated times");
  auto* t_max = cmd->add_option("--t-max", f.t_max, "end of a uniform time grid starting at 0");
  auto* t_steps = cmd->add_option("--t-steps", f.t_steps, "number of grid intervals")->check(CLI::PositiveNumber);
  list->excludes(t_max)->excludes(t_steps);
  t_max->needs(t_steps);
  t_steps->needs(t_max);
  cmd->add_option("--gamma", f.gamma, "bond transmission rate")->check(CLI::PositiveNumber);
}

void add_format(CLI::App* cmd, Flags& f) {
  cmd->add_option("--format", f.format, "csv (default) or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_tolerance(CLI::App* cmd, Flags& f) {
  cmd->add_option("--degeneracy-tol", f.tol, "eigenvalue grouping tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-time quantum and classical walks on graphs"};
  app.require_subcommand(1);
  Flags f;

  auto* generate = app.add_subcommand("generate", "write the edge list of a glued tree");
  add_graph_flags(generate, f);

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and degeneracy groups of A");
  add_graph_flags(spectrum, f);
  add_tolerance(spectrum, f);
  spectrum->add_option("--format", f.format, "json (default) or csv")->check(CLI::IsMember({"csv", "json"}));

  auto* propagate = app.add_subcommand("propagate", "p, pi and pi/p for every node from one start node");
  add_graph_flags(propagate, f);
  add_time_flags(propagate, f);
  add_format(propagate, f);
  propagate->add_option("-k,--start", f.start, "start node id")->required();

  auto* limit = app.add_subcommand("limit", "long-time averaged quantum distribution from one start node");
  add_graph_flags(limit, f);
  add_tolerance(limit, f);
  limit->add_option("-k,--start", f.start, "start node id")->required();
  limit->add_option("--format", f.format, "json (default) or csv")->check(CLI::IsMember({"csv", "json"}));

  auto* collapse = app.add_subcommand("collapse", "walk on the reduced cluster chain of a glued tree");
  add_graph_flags(collapse, f);
  add_time_flags(collapse, f);
  add_format(collapse, f);
  add_tolerance(collapse, f);
  collapse->add_option("-k,--start", f.start, "start cluster index")->required();
  collapse->add_option("--direction", f.direction, "left-right or top-bottom")
      ->check(CLI::IsMember({"left-right", "top-bottom"}));
  collapse->add_option("--structure", f.structure, "also write partition and reduced matrix as JSON");

  auto* compare = app.add_subcommand("compare", "p, pi and pi/p time series for chosen node pairs");
  add_graph_flags(compare, f);
  add_time_flags(compare, f);
  add_format(compare, f);
  compare->add_option("--pairs", f.pairs, "comma separated j:k pairs, e.g. 10:1,7:4")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ctqw::kExitOk : ctqw::kExitInvalidInput;
  }

  const std::map<CLI::App*, ctqw::Command> commands{
      {generate, ctqw::Command::generate}, {spectrum, ctqw::Command::spectrum},
      {propagate, ctqw::Command::propagate}, {limit, ctqw::Command::limit},
      {collapse, ctqw::Command::collapse}, {compare, ctqw::Command::compare}};

  ctqw::RunConfig config;
  try {
    config.command = commands.at(app.get_subcommands().front());
    config.generation = f.generation;
    config.graph_file = f.graph_file;
    config.gamma = f.gamma;
    config.start = f.start;
    config.degeneracy_tol = f.tol;
    const bool json_default = config.command == ctqw::Command::spectrum || config.command == ctqw::Command::limit;
    const std::string format = f.format.value_or(json_default ? "json" : "csv");
    config.format = format == "json" ? ctqw::OutputFormat::json : ctqw::OutputFormat::csv;
    config.output = f.output;
    config.structure_output = f.structure;
    config.direction = f.direction == "top-bottom" ? ctqw::Direction::top_bottom : ctqw::Direction::left_right;
    config.version_header = f.header;
    if (f.times) config.times = ctqw::parse_times(*f.times);
    if (f.t_max) config.times = ctqw::uniform_times(*f.t_max, *f.t_steps);
    if (f.pairs) config.pairs = ctqw::parse_pairs(*f.pairs);
    config = ctqw::with_environment(std::move(config));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ctqw::kExitInvalidInput;
  }
  return ctqw::run(config, std::cout, std::cerr);
}
