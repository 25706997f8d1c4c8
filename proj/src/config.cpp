#include "ratenet/config.hpp"

#include <set>
#include <string>

#include "ratenet/error.hpp"

namespace ratenet {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::InvalidArgument, what); }

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) bad(where + " must be an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) bad("unknown key '" + key + "' in " + where);
}

template <class T>
T get(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    bad("bad value for " + where + ": " + j.dump());
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) bad(where + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where + " must be an integer");
  return j.get<int>();
}

std::size_t count(const json& j, const std::string& where) {
  if (!j.is_number_unsigned()) bad(where + " must be a non-negative integer");
  return j.get<std::size_t>();
}

const char* order_name(Order o) {
  return o == Order::Exact ? "exact" : o == Order::Order1 ? "order1" : "order2";
}

const char* free_name(FreeParam f) {
  return f == FreeParam::Tau ? "tau" : f == FreeParam::Weight ? "weight" : "input";
}

GraphExpr parse_expr(const json& j);

std::vector<GraphExpr> parse_factors(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() < 2) bad(where + " needs at least two factors");
  std::vector<GraphExpr> out;
  for (const auto& f : j) out.push_back(parse_expr(f));
  return out;
}

int positive(const json& j, const std::string& key) {
  if (!j.contains(key)) bad("topology '" + j.value("kind", std::string("?")) + "' needs '" + key + "'");
  const int v = integer(j.at(key), key);
  if (v < 1) bad(key + " must be >= 1");
  return v;
}

GraphExpr parse_expr(const json& j) {
  if (j.is_object() && j.size() == 1 && !j.contains("kind")) {
    const auto& [key, value] = *j.items().begin();
    if (key == "cycle") return GraphExpr::cycle(integer(value, "cycle"));
    if (key == "path") return GraphExpr::path(integer(value, "path"));
    bad("unknown factor shorthand '" + key + "'");
  }
  if (!j.is_object() || !j.contains("kind")) bad("topology needs a 'kind'");
  const std::string kind = get<std::string>(j.at("kind"), "kind");
  if (kind == "path" || kind == "cycle") {
    check_keys(j, {"kind", "n"}, kind);
    const int n = positive(j, "n");
    return kind == "path" ? GraphExpr::path(n) : GraphExpr::cycle(n);
  }
  if (kind == "cartesian" || kind == "kronecker") {
    check_keys(j, {"kind", "factors"}, kind);
    if (!j.contains("factors")) bad(kind + " needs 'factors'");
    auto f = parse_factors(j.at("factors"), kind);
    return kind == "cartesian" ? GraphExpr::cartesian(std::move(f)) : GraphExpr::kronecker(std::move(f));
  }
  if (kind == "circular_ladder" || kind == "ladder") {
    check_keys(j, {"kind", "n"}, kind);
    return kind == "ladder" ? ladder(positive(j, "n")) : circular_ladder(positive(j, "n"));
  }
  if (kind == "hypercube") {
    check_keys(j, {"kind", "dim"}, kind);
    return hypercube(positive(j, "dim"));
  }
  if (kind == "torus" || kind == "grid") {
    check_keys(j, {"kind", "a", "b"}, kind);
    return kind == "torus" ? torus(positive(j, "a"), positive(j, "b")) : grid(positive(j, "a"), positive(j, "b"));
  }
  bad("unknown topology kind '" + kind + "'");
}

}  // namespace

TopologySpec parse_topology(const json& j) {
  if (j.is_object() && j.contains("kind")) {
    const std::string kind = get<std::string>(j.at("kind"), "kind");
    if (kind == "circulant") {
      check_keys(j, {"kind", "n", "offsets"}, kind);
      if (!j.contains("offsets")) bad("circulant needs 'offsets'");
      return Circulant{positive(j, "n"), get<std::vector<int>>(j.at("offsets"), "offsets")};
    }
    if (kind == "band") {
      check_keys(j, {"kind", "r", "s", "nu"}, kind);
      if (!j.contains("nu")) bad("band needs 'nu'");
      return BlockCirculantBand{positive(j, "r"), positive(j, "s"), get<std::vector<int>>(j.at("nu"), "nu")};
    }
    if (kind == "complete") {
      check_keys(j, {"kind", "n"}, kind);
      return complete_graph(positive(j, "n"));
    }
    if (kind == "cycle") {
      check_keys(j, {"kind", "n"}, kind);
      return cycle_graph(positive(j, "n"));
    }
  }
  return parse_expr(j);
}

TopologySpec ExperimentConfig::topology_spec() const { return parse_topology(topology); }

SimConfig ExperimentConfig::sim_config() const {
  SimConfig s;
  s.topology = topology_spec();
  s.allow_irregular = allow_irregular;
  s.network = network;
  s.noise = noise;
  s.t_max = horizon;
  s.dt = dt;
  s.trials = trials;
  s.seed = seed;
  s.order = order;
  s.z = z;
  s.h = h;
  s.branch = branch;
  s.pairs = pairs;
  s.tuples = tuples;
  return s;
}

ExperimentConfig bundle_defaults(const std::string& name) {
  ExperimentConfig c;
  c.bundle = name;
  for (int x = -5; x <= 5; ++x) c.radius.x0.push_back(x);
  for (int nu = 1; nu <= 50; ++nu) c.scan.nus.push_back(nu);
  if (name == "table1") {
    c.topology = {{"kind", "circular_ladder"}, {"n", 10}};
    c.network = {1.0, 1.0, 0.0, {1.0, 1.0, 0.0}};
    c.noise = {{0.01, 0.1, 0.1, 0.0, 0.0}, 0.3, 0.4, 0.5};
  } else if (name == "table2") {
    c.topology = {{"kind", "complete"}, {"n", 5}};
    c.network = {0.1, 40.0, -20.0, {1.0, 1.0, 0.0}};
    c.noise = {{0.1, 0.1, 0.1, 0.0, 0.0}, 0.0, 0.0, 0.0};
    c.order = Order::Exact;
    c.horizon = 20.0;
    c.dt = 0.01;
    c.trials = 1000;
  } else {
    bad("unknown bundle '" + name + "' (table1, table2)");
  }
  return c;
}

ExperimentConfig apply_json(ExperimentConfig c, const json& j) {
  check_keys(j,
             {"bundle", "topology", "allow_irregular", "network", "noise", "sim", "branch", "pairs", "tuples",
              "scan", "inputs", "sizes", "threshold", "sync", "radius"},
             "config");
  if (j.contains("bundle")) c.bundle = get<std::string>(j.at("bundle"), "bundle");
  if (j.contains("topology")) {
    parse_topology(j.at("topology"));
    c.topology = j.at("topology");
  }
  if (j.contains("allow_irregular")) c.allow_irregular = get<bool>(j.at("allow_irregular"), "allow_irregular");
  if (j.contains("network")) {
    const auto& n = j.at("network");
    check_keys(n, {"tau", "weight", "input", "rate_max", "slope", "threshold"}, "network");
    if (n.contains("tau")) c.network.tau = number(n.at("tau"), "network.tau");
    if (n.contains("weight")) c.network.weight = number(n.at("weight"), "network.weight");
    if (n.contains("input")) c.network.input = number(n.at("input"), "network.input");
    if (n.contains("rate_max")) c.network.sigmoid.t_max = number(n.at("rate_max"), "network.rate_max");
    if (n.contains("slope")) c.network.sigmoid.slope = number(n.at("slope"), "network.slope");
    if (n.contains("threshold")) c.network.sigmoid.threshold = number(n.at("threshold"), "network.threshold");
  }
  if (j.contains("noise")) {
    const auto& n = j.at("noise");
    check_keys(n, {"sigma", "c1", "c2", "c3"}, "noise");
    if (n.contains("sigma")) {
      const auto& s = n.at("sigma");
      if (!s.is_array() || s.size() != 5) bad("noise.sigma needs five numbers");
      for (std::size_t m = 0; m < 5; ++m) c.noise.sigma[m] = number(s[m], "noise.sigma");
    }
    if (n.contains("c1")) c.noise.c1 = number(n.at("c1"), "noise.c1");
    if (n.contains("c2")) c.noise.c2 = number(n.at("c2"), "noise.c2");
    if (n.contains("c3")) c.noise.c3 = number(n.at("c3"), "noise.c3");
  }
  if (j.contains("sim")) {
    const auto& s = j.at("sim");
    check_keys(s, {"horizon", "dt", "trials", "seed", "order", "z", "h", "trajectory"}, "sim");
    if (s.contains("horizon")) c.horizon = number(s.at("horizon"), "sim.horizon");
    if (s.contains("dt")) c.dt = number(s.at("dt"), "sim.dt");
    if (s.contains("trials")) c.trials = count(s.at("trials"), "sim.trials");
    if (s.contains("seed")) c.seed = get<std::uint64_t>(s.at("seed"), "sim.seed");
    if (s.contains("order")) {
      const auto o = get<std::string>(s.at("order"), "sim.order");
      if (o == "exact") c.order = Order::Exact;
      else if (o == "order1") c.order = Order::Order1;
      else if (o == "order2") c.order = Order::Order2;
      else bad("sim.order must be exact, order1 or order2");
    }
    if (s.contains("z")) {
      const auto z = get<std::string>(s.at("z"), "sim.z");
      if (z == "zero") c.z = ZFamily::Zero;
      else if (z == "exp_decay_J") c.z = ZFamily::ExpDecayJ;
      else bad("sim.z must be zero or exp_decay_J");
    }
    if (s.contains("h")) {
      const auto h = get<std::string>(s.at("h"), "sim.h");
      if (h == "zero") c.h = HFamily::Zero;
      else if (h == "sine_uniform") c.h = HFamily::SineUniform;
      else bad("sim.h must be zero or sine_uniform");
    }
    if (s.contains("trajectory")) c.trajectory = get<bool>(s.at("trajectory"), "sim.trajectory");
  }
  if (j.contains("branch")) {
    if (j.at("branch").is_null()) c.branch.reset();
    else c.branch = integer(j.at("branch"), "branch");
  }
  if (j.contains("pairs")) c.pairs = get<std::vector<std::pair<std::size_t, std::size_t>>>(j.at("pairs"), "pairs");
  if (j.contains("tuples")) c.tuples = get<std::vector<std::vector<std::size_t>>>(j.at("tuples"), "tuples");
  if (j.contains("scan")) {
    const auto& s = j.at("scan");
    check_keys(s, {"n", "nus", "t"}, "scan");
    if (s.contains("n")) c.scan.n = integer(s.at("n"), "scan.n");
    if (s.contains("nus")) c.scan.nus = get<std::vector<int>>(s.at("nus"), "scan.nus");
    if (s.contains("t")) c.scan.t = number(s.at("t"), "scan.t");
  }
  if (j.contains("inputs")) c.inputs = get<std::vector<double>>(j.at("inputs"), "inputs");
  if (j.contains("sizes")) c.sizes = get<std::vector<int>>(j.at("sizes"), "sizes");
  if (j.contains("threshold")) c.threshold = number(j.at("threshold"), "threshold");
  if (j.contains("sync")) {
    const auto& s = j.at("sync");
    check_keys(s, {"free"}, "sync");
    if (s.contains("free")) {
      const auto f = get<std::string>(s.at("free"), "sync.free");
      if (f == "tau") c.sync_free = FreeParam::Tau;
      else if (f == "weight") c.sync_free = FreeParam::Weight;
      else if (f == "input") c.sync_free = FreeParam::Input;
      else bad("sync.free must be tau, weight or input");
    }
  }
  if (j.contains("radius")) {
    const auto& r = j.at("radius");
    check_keys(r, {"x0", "lambda", "n_max"}, "radius");
    if (r.contains("x0")) c.radius.x0 = get<std::vector<double>>(r.at("x0"), "radius.x0");
    if (r.contains("lambda")) c.radius.lambda = get<std::vector<double>>(r.at("lambda"), "radius.lambda");
    if (r.contains("n_max")) c.radius.n_max = integer(r.at("n_max"), "radius.n_max");
  }
  return c;
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["bundle"] = c.bundle;
  j["topology"] = c.topology;
  j["allow_irregular"] = c.allow_irregular;
  j["network"] = {{"tau", c.network.tau},
                  {"weight", c.network.weight},
                  {"input", c.network.input},
                  {"rate_max", c.network.sigmoid.t_max},
                  {"slope", c.network.sigmoid.slope},
                  {"threshold", c.network.sigmoid.threshold}};
  j["noise"] = {{"sigma", c.noise.sigma}, {"c1", c.noise.c1}, {"c2", c.noise.c2}, {"c3", c.noise.c3}};
  j["sim"] = {{"horizon", c.horizon},
              {"dt", c.dt},
              {"trials", c.trials},
              {"seed", c.seed},
              {"order", order_name(c.order)},
              {"z", c.z == ZFamily::ExpDecayJ ? "exp_decay_J" : "zero"},
              {"h", c.h == HFamily::SineUniform ? "sine_uniform" : "zero"},
              {"trajectory", c.trajectory}};
  j["branch"] = c.branch ? json(*c.branch) : json(nullptr);
  j["pairs"] = c.pairs;
  j["tuples"] = c.tuples;
  j["scan"] = {{"n", c.scan.n}, {"nus", c.scan.nus}, {"t", c.scan.t}};
  j["inputs"] = c.inputs;
  j["sizes"] = c.sizes;
  j["threshold"] = c.threshold;
  j["sync"] = {{"free", free_name(c.sync_free)}};
  j["radius"] = {{"x0", c.radius.x0}, {"lambda", c.radius.lambda}, {"n_max", c.radius.n_max}};
  return j;
}

}  // namespace ratenet
