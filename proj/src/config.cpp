#include "orbitcs/config.hpp"

#include "orbitcs/types.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace orbitcs {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

int to_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ConfigError(what + ": expected an integer, got '" + text + "'");
  }
}

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"experiment", {"kind", "seed", "trials", "threads"}},
      {"group", {"kind", "param"}},
      {"representation", {"realization", "degree", "irrep", "blocks", "subgroup", "sigma", "conjugate_by", "file"}},
      {"sensing", {"xi", "xi_file", "omega", "omega_indices", "subgroup", "m", "basis", "normalize"}},
      {"grid", {"s", "m", "n"}},
      {"solver", {"name", "tol_feas", "tol_opt", "max_iter"}},
      {"constant", {"family", "subset_size", "samples"}},
      {"rip", {"s"}},
      {"bound", {"c", "C", "delta", "eta", "C_const"}},
      {"phase", {"plant"}},
      {"counterexample", {"n", "s", "case"}},
      {"output", {"path"}},
  };
  return keys;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& raw) {
  const std::string text = trim(raw);
  std::vector<int> out;
  if (text.empty()) return out;
  if (text.find(':') != std::string::npos) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ':')) parts.push_back(to_int(trim(piece), "range"));
    if (parts.size() < 2 || parts.size() > 3) throw ConfigError("range must be start:stop or start:stop:step");
    const int step = parts.size() == 3 ? parts[2] : 1;
    if (step <= 0) throw ConfigError("range step must be positive");
    for (int v = parts[0]; v <= parts[1]; v += step) out.push_back(v);
    if (out.empty()) throw ConfigError("range '" + text + "' is empty");
    return out;
  }
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    piece = trim(piece);
    if (!piece.empty()) out.push_back(to_int(piece, "list"));
  }
  return out;
}

ExperimentConfig parse_config(std::istream& in, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) throw ConfigError(source + ": unknown section [" + section + "]");
    if (body.empty() && !body.data().empty()) throw ConfigError(source + ": key '" + section + "' outside a section");
    for (const auto& [key, value] : body) {
      (void)value;
      if (!it->second.count(key)) throw ConfigError(source + ": unknown key '" + key + "' in [" + section + "]");
    }
  }

  auto str = [&](const std::string& path, const std::string& fallback) {
    return trim(tree.get<std::string>(path, fallback));
  };
  auto integer = [&](const std::string& path, int fallback) {
    const auto v = tree.get_optional<std::string>(path);
    return v ? to_int(trim(*v), path) : fallback;
  };
  auto real = [&](const std::string& path, double fallback) {
    const auto v = tree.get_optional<std::string>(path);
    if (!v) return fallback;
    try {
      std::size_t used = 0;
      const std::string t = trim(*v);
      const double d = std::stod(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return d;
    } catch (const std::exception&) {
      throw ConfigError(path + ": expected a number, got '" + *v + "'");
    }
  };
  auto boolean = [&](const std::string& path, bool fallback) {
    const auto v = tree.get_optional<std::string>(path);
    if (!v) return fallback;
    const std::string t = trim(*v);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ConfigError(path + ": expected true or false, got '" + t + "'");
  };
  auto list = [&](const std::string& path) {
    try {
      return parse_int_list(tree.get<std::string>(path, ""));
    } catch (const ConfigError& e) {
      throw ConfigError(path + ": " + e.what());
    }
  };

  ExperimentConfig c;
  c.kind = str("experiment.kind", c.kind);
  {
    const std::string seed = str("experiment.seed", std::to_string(c.seed));
    try {
      std::size_t used = 0;
      c.seed = std::stoull(seed, &used);
      if (used != seed.size()) throw std::invalid_argument(seed);
    } catch (const std::exception&) {
      throw ConfigError("experiment.seed: expected a non-negative integer, got '" + seed + "'");
    }
  }
  c.trials = integer("experiment.trials", c.trials);
  c.threads = integer("experiment.threads", c.threads);
  c.group_kind = str("group.kind", c.group_kind);
  c.group_param = integer("group.param", c.group_param);
  c.realization = str("representation.realization", c.realization);
  c.degree = integer("representation.degree", c.degree);
  c.irrep = integer("representation.irrep", c.irrep);
  c.blocks = str("representation.blocks", c.blocks);
  c.subgroup = list("representation.subgroup");
  c.sigma = str("representation.sigma", c.sigma);
  c.conjugate_by = str("representation.conjugate_by", c.conjugate_by);
  c.rep_file = str("representation.file", c.rep_file);
  c.xi = str("sensing.xi", c.xi);
  c.xi_file = str("sensing.xi_file", c.xi_file);
  c.omega = str("sensing.omega", c.omega);
  c.omega_indices = list("sensing.omega_indices");
  c.sensing_subgroup = list("sensing.subgroup");
  c.m = integer("sensing.m", c.m);
  c.basis = str("sensing.basis", c.basis);
  c.normalize = boolean("sensing.normalize", c.normalize);
  c.grid_s = list("grid.s");
  c.grid_m = list("grid.m");
  c.grid_n = list("grid.n");
  c.solver = str("solver.name", c.solver);
  c.tol_feas = real("solver.tol_feas", c.tol_feas);
  c.tol_opt = real("solver.tol_opt", c.tol_opt);
  c.max_iter = integer("solver.max_iter", c.max_iter);
  c.family = str("constant.family", c.family);
  c.subset_size = integer("constant.subset_size", c.subset_size);
  c.samples = integer("constant.samples", c.samples);
  c.rip_s = list("rip.s");
  c.bound_c = real("bound.c", c.bound_c);
  c.bound_C = real("bound.C", c.bound_C);
  c.delta = real("bound.delta", c.delta);
  c.eta = real("bound.eta", c.eta);
  c.c_const = str("bound.C_const", c.c_const);
  c.plant = str("phase.plant", c.plant);
  c.cx_n = integer("counterexample.n", c.cx_n);
  c.cx_s = integer("counterexample.s", c.cx_s);
  c.cx_case = str("counterexample.case", c.cx_case);
  c.output = str("output.path", c.output);

  if (c.trials < 1) throw ConfigError("experiment.trials must be at least 1");
  if (c.threads < 1) throw ConfigError("experiment.threads must be at least 1");
  if (c.max_iter < 1) throw ConfigError("solver.max_iter must be at least 1");
  if (!(c.tol_feas > 0) || !(c.tol_opt > 0)) throw ConfigError("solver tolerances must be positive");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  ExperimentConfig c = parse_config(in, path);
  // File references are relative to the config file.
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();
  auto rebase = [&](std::string& p) {
    if (!p.empty() && std::filesystem::path(p).is_relative()) p = (dir / p).string();
  };
  rebase(c.rep_file);
  rebase(c.xi_file);
  if (c.conjugate_by != "dft" && c.conjugate_by != "u_transform" && c.conjugate_by != "none") rebase(c.conjugate_by);
  if (c.basis != "identity" && c.basis != "dft") rebase(c.basis);
  return c;
}

}  // namespace orbitcs
