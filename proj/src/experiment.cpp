#include "orbitcs/experiment.hpp"

#include "orbitcs/fourier.hpp"
#include "orbitcs/matrix_io.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

namespace orbitcs {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt(std::int64_t v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(std::uint64_t v) { return std::to_string(v); }
std::string fmt_bool(bool v) { return v ? "true" : "false"; }

std::string join(const std::vector<int>& v, char sep = ' ') {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) {
    if (row.size() != header_.size()) throw std::logic_error("CSV row width mismatch");
    rows_.push_back(std::move(row));
  }

  void write(std::ostream& out, bool timestamp) const {
    if (timestamp) {
      const std::time_t now = std::time(nullptr);
      std::tm utc{};
      gmtime_r(&now, &utc);
      out << "# generated " << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ") << '\n';
    }
    write_row(out, header_);
    for (const auto& r : rows_) write_row(out, r);
  }

 private:
  static void write_row(std::ostream& out, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_field(row[i]);
    }
    out << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

const std::vector<std::string> kProvenanceHeader = {"command", "group",    "group_param", "group_order",
                                                    "realization", "degree", "xi",   "omega_mode",
                                                    "basis",   "master_seed", "solver", "tol_feas", "tol_opt"};

std::string xi_label(const ExperimentConfig& c) { return c.xi_file.empty() ? c.xi : "file:" + c.xi_file; }

std::vector<std::string> provenance(const std::string& command, const ExperimentConfig& c, const ResolvedRep& rr) {
  return {command,
          c.group_kind,
          fmt(c.group_param),
          fmt(rr.group->order()),
          rr.label,
          fmt(rr.rep->degree()),
          xi_label(c),
          c.omega,
          c.basis,
          fmt(c.seed),
          c.solver,
          fmt(c.tol_feas),
          fmt(c.tol_opt)};
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::pair<int, int>> parse_blocks(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos) {
        out.emplace_back(std::stoi(item), 1);
      } else {
        out.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
      }
    } catch (const std::exception&) {
      throw ConfigError("representation.blocks: cannot parse '" + item + "' (expected id:multiplicity)");
    }
  }
  if (out.empty()) throw ConfigError("representation.blocks is empty");
  return out;
}

GeneratingVector make_xi(const ExperimentConfig& c, const Representation& rep, Rng& rng) {
  const int n = rep.degree();
  if (!c.xi_file.empty()) {
    GeneratingVector xi;
    xi.values = load_complex_vector(c.xi_file);
    if (xi.values.size() != n) throw ConfigError("sensing.xi_file length does not match the representation degree");
    return xi;
  }
  const XiScheme scheme = parse_xi_scheme(c.xi);
  std::optional<BlockStructure> block;
  if (scheme == XiScheme::structured_block) {
    block = sensing_block_structure(rep);
    if (!block) {
      throw ConfigError("structured_block generating vector needs a representation with a known block structure");
    }
  }
  return sample_generating_vector(n, scheme, rng, block);
}

std::vector<Element> adversarial_indices(const FiniteGroup& group, int s) {
  if (group.kind() != GroupKind::cyclic) {
    throw ConfigError("adversarial sampling without explicit omega_indices needs a cyclic group");
  }
  if (s < 1 || group.order() % s != 0) throw ConfigError("adversarial sampling needs s dividing |G|");
  std::vector<Element> omega;
  for (int k = 0; k < group.order(); ++k) {
    if (k % s != 0) omega.push_back(k);
  }
  if (omega.empty()) throw ConfigError("adversarial sampling set is empty for s = 1");
  return omega;
}

SamplingSet make_omega(const ExperimentConfig& c, const ResolvedRep& rr, int m, int s, Rng& rng,
                       const std::optional<CosetPartition>& sensing_partition) {
  const FiniteGroup& g = *rr.group;
  const SamplingMode mode = parse_sampling_mode(c.omega);
  if (!c.omega_indices.empty() && mode != SamplingMode::uniform_iid && mode != SamplingMode::coset_admissible) {
    return explicit_omega(g, c.omega_indices, mode);
  }
  if (mode == SamplingMode::adversarial) return explicit_omega(g, adversarial_indices(g, s), mode);
  const CosetPartition* partition = nullptr;
  if (mode == SamplingMode::coset_admissible) {
    if (sensing_partition) {
      partition = &*sensing_partition;
    } else if (rr.partition) {
      partition = &*rr.partition;
    } else {
      throw ConfigError("coset_admissible sampling needs sensing.subgroup or an induced representation");
    }
  }
  return sample_omega(g, m, mode, rng, partition);
}

std::optional<CosetPartition> sensing_partition(const ExperimentConfig& c, const GroupPtr& group) {
  if (c.sensing_subgroup.empty()) return std::nullopt;
  return CosetPartition(group, c.sensing_subgroup);
}

int default_m(const ExperimentConfig& c, const ResolvedRep& rr) { return c.m > 0 ? c.m : rr.group->order(); }

// Bound predicted for the recognized realizations, with a short tag.
std::optional<std::pair<double, std::string>> theoretical_bound(const ResolvedRep& rr,
                                                                const std::vector<Element>& omega) {
  const FiniteGroup& g = *rr.group;
  const std::string& base = rr.base_realization;
  if (rr.conjugator) return std::nullopt;
  if (base == "left_regular") return std::make_pair(1.0, std::string("left_regular"));
  if (base == "trivial") return std::make_pair(static_cast<double>(omega.size()), std::string("trivial"));
  if (base == "affine") return std::make_pair(static_cast<double>(affine_omega1(g, omega)), std::string("affine_omega1"));
  if (base == "irreducible" && static_cast<int>(omega.size()) == g.order()) {
    return std::make_pair(static_cast<double>(g.order()) / rr.rep->degree(), std::string("irreducible_full"));
  }
  if (base == "induced" && rr.partition && rr.partition->is_normal() && is_coset_admissible(omega, *rr.partition)) {
    return std::make_pair(1.0, std::string("induced_admissible"));
  }
  return std::nullopt;
}

double u_transform_bound(const BlockStructure& block, int group_order) {
  int worst = 0;
  for (const Block& b : block.blocks()) worst = std::max(worst, (b.multiplicity + b.degree - 1) / b.degree);
  return static_cast<double>(group_order) / block.total_degree() * worst;
}

}  // namespace

// ---------------------------------------------------------------------------
// Resolution

GroupPtr resolve_group(const ExperimentConfig& config) {
  try {
    return make_group(parse_group_kind(config.group_kind), config.group_param);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[group]: ") + e.what());
  }
}

ResolvedRep resolve_base_representation(const ExperimentConfig& config) {
  ResolvedRep rr;
  rr.group = resolve_group(config);
  rr.base_realization = config.realization;
  const std::string& kind = config.realization;
  const GroupPtr& g = rr.group;
  try {
    if (kind == "left_regular") {
      rr.rep = std::make_shared<const Representation>(left_regular(g));
    } else if (kind == "trivial") {
      rr.rep = std::make_shared<const Representation>(trivial_rep(g, config.degree));
    } else if (kind == "irreducible") {
      const auto catalog = irreducible_reps(g);
      if (config.irrep < 0 || config.irrep >= static_cast<int>(catalog.size())) {
        throw ConfigError("representation.irrep " + std::to_string(config.irrep) + " outside the catalog of " +
                          std::to_string(catalog.size()) + " irreducibles");
      }
      rr.rep = std::make_shared<const Representation>(catalog[config.irrep]);
    } else if (kind == "block_diagonal") {
      rr.rep = std::make_shared<const Representation>(
          block_diagonal_from_catalog(irreducible_reps(g), parse_blocks(config.blocks)));
    } else if (kind == "regular_blocks") {
      const auto catalog = irreducible_reps(g);
      std::vector<std::pair<int, int>> blocks;
      for (std::size_t i = 0; i < catalog.size(); ++i) blocks.emplace_back(static_cast<int>(i), catalog[i].degree());
      rr.rep = std::make_shared<const Representation>(block_diagonal_from_catalog(catalog, blocks));
    } else if (kind == "affine") {
      rr.rep = std::make_shared<const Representation>(affine_rep(g));
    } else if (kind == "induced") {
      if (config.subgroup.empty()) throw ConfigError("induced representation needs representation.subgroup");
      rr.partition.emplace(g, config.subgroup);
      const GroupPtr& h = rr.partition->subgroup_group();
      Representation sigma = config.sigma == "regular" ? left_regular(h)
                             : config.sigma == "trivial"
                                 ? trivial_rep(h, 1)
                                 : throw ConfigError("representation.sigma must be trivial or regular");
      rr.rep = std::make_shared<const Representation>(induce(*rr.partition, sigma, CrossSection(*rr.partition)));
    } else if (kind == "matrices") {
      if (config.rep_file.empty()) throw ConfigError("matrices realization needs representation.file");
      auto mats = load_complex_matrices(config.rep_file);
      rr.rep = std::make_shared<const Representation>(g, std::move(mats), "matrices");
    } else {
      throw ConfigError("unknown representation.realization '" + kind + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[representation]: ") + e.what());
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    throw ConfigError(std::string("[representation]: ") + e.what());
  }
  rr.label = kind;
  return rr;
}

std::optional<CMatrix> resolve_conjugator(const ExperimentConfig& config, const Representation& base) {
  const std::string& by = config.conjugate_by;
  if (by.empty() || by == "none") return std::nullopt;
  if (by == "dft") return dft_matrix(base.degree());
  if (by == "u_transform") {
    if (!base.block()) throw ConfigError("conjugate_by = u_transform needs a block-diagonal representation");
    return realization_transform_u(*base.block());
  }
  try {
    CMatrix v = load_complex_matrix(by);
    if (v.rows() != base.degree() || v.cols() != base.degree()) {
      throw ConfigError("conjugator in '" + by + "' has the wrong dimension");
    }
    return v;
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    throw ConfigError(std::string("[representation] conjugate_by: ") + e.what());
  }
}

ResolvedRep resolve_representation(const ExperimentConfig& config) {
  ResolvedRep rr = resolve_base_representation(config);
  rr.conjugator = resolve_conjugator(config, *rr.rep);
  if (rr.conjugator) {
    try {
      Representation conj = conjugate_rep(*rr.rep, *rr.conjugator);
      rr.rep = std::make_shared<const Representation>(std::move(conj));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("[representation] conjugate_by: ") + e.what());
    }
    const std::string by = config.conjugate_by == "dft" || config.conjugate_by == "u_transform" ? config.conjugate_by
                                                                                              : "file";
    rr.label += "+" + by;
  }
  return rr;
}

CMatrix resolve_basis(const ExperimentConfig& config, int n) {
  if (config.basis.empty() || config.basis == "identity") return CMatrix();
  if (config.basis == "dft") return dft_matrix(n);
  try {
    CMatrix b = load_complex_matrix(config.basis);
    if (b.rows() != n || b.cols() != n) throw ConfigError("basis file '" + config.basis + "' has the wrong dimension");
    if (unitarity_defect(b) > kUnitaryTol) throw ConfigError("basis file '" + config.basis + "' is not unitary");
    return b;
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    throw ConfigError(std::string("[sensing] basis: ") + e.what());
  }
}

std::optional<BlockStructure> diagonal_block_structure(const Representation& rep) {
  const int n = rep.degree();
  const int order = rep.group()->order();
  CMatrix diag(order, n);
  for (Element g = 0; g < order; ++g) {
    const CMatrix& m = rep.matrix(g);
    const double off = (m - CMatrix(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
    if (off > 1e-12) return std::nullopt;
    diag.row(g) = m.diagonal().transpose();
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if ((diag.col(a) - diag.col(b)).cwiseAbs().maxCoeff() <= kEquivalenceTol) return std::nullopt;
    }
  }
  std::vector<Block> blocks;
  for (int j = 0; j < n; ++j) blocks.push_back({j, 1, 1});
  return BlockStructure(blocks);
}

std::optional<BlockStructure> sensing_block_structure(const Representation& rep) {
  if (rep.block()) return rep.block();
  return diagonal_block_structure(rep);
}

int rep_d_max(const Representation& rep) {
  std::vector<Representation> catalog;
  try {
    catalog = irreducible_reps(rep.group());
  } catch (const std::invalid_argument&) {
    return 1;
  }
  int best = 1;
  for (const Representation& rho : catalog) {
    const long mult = std::lround(character_inner_product(rep, rho).real());
    if (mult > 1) best = std::max(best, rho.degree());
  }
  return best;
}

// ---------------------------------------------------------------------------
// Counterexamples

Counterexample fourier_counterexample(int n, int s, std::uint64_t seed, const BasisPursuitOptions& bp) {
  if (n < 2 || s < 2 || n % s != 0) {
    throw std::invalid_argument("fourier counterexample needs n, s >= 2 with s dividing n (got n=" +
                                std::to_string(n) + ", s=" + std::to_string(s) + ")");
  }
  const GroupPtr group = make_group(GroupKind::cyclic, n);
  auto rep = std::make_shared<const Representation>(conjugate_rep(left_regular(group), dft_matrix(n)));
  Counterexample cx;
  cx.omega = adversarial_indices(*group, s);
  GeneratingVector xi = sample_generating_vector(n, XiScheme::steinhaus, seed);
  cx.xi = xi.values;
  const MeasurementEnsemble ens =
      build_measurement(rep, xi, explicit_omega(*group, cx.omega, SamplingMode::adversarial));
  cx.phi = ens.phi;
  cx.x = CVector::Zero(n);
  const int spacing = n / s;
  for (int p = 0; p < n; p += spacing) cx.x(p) = std::conj(1.0 / cx.xi(p));
  const CVector y = cx.phi * cx.x;
  cx.null_residual_inf = y.cwiseAbs().maxCoeff();
  cx.recovery = basis_pursuit(cx.phi, y, bp);
  const double x_l1 = cx.x.cwiseAbs().sum();
  const double r_l1 = cx.recovery.estimate.cwiseAbs().sum();
  cx.failure_demonstrated = cx.recovery.residual_norm <= bp.tol_feas * std::max(1.0, y.norm()) &&
                            (cx.recovery.estimate - cx.x).norm() > 1e-4 * cx.x.norm() &&
                            r_l1 <= x_l1 * (1.0 + bp.tol_opt);
  return cx;
}

Counterexample trivial_counterexample(const GroupPtr& group, int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("trivial counterexample needs n >= 3");
  auto rep = std::make_shared<const Representation>(trivial_rep(group, n));
  Counterexample cx;
  GeneratingVector xi = sample_generating_vector(n, XiScheme::complex_gaussian, seed);
  cx.xi = xi.values;
  cx.omega.resize(group->order());
  std::iota(cx.omega.begin(), cx.omega.end(), 0);
  cx.phi = build_measurement(rep, xi, explicit_omega(*group, cx.omega)).phi;
  // Every row is xi^*/sqrt(m), so Phi x only sees <x, xi>.
  std::vector<int> zeros, nonzeros;
  for (int j = 0; j < n; ++j) (std::abs(cx.xi(j)) < 1e-14 ? zeros : nonzeros).push_back(j);
  cx.x = CVector::Zero(n);
  cx.x2 = CVector::Zero(n);
  if (zeros.size() >= 2) {
    cx.x(zeros[0]) = 1.0;
    cx.x2(zeros[1]) = 1.0;
  } else {
    cx.x(nonzeros[0]) = 1.0 / std::conj(cx.xi(nonzeros[0]));
    cx.x2(nonzeros[1]) = 1.0 / std::conj(cx.xi(nonzeros[1]));
  }
  cx.null_residual_inf = (cx.phi * cx.x - cx.phi * cx.x2).cwiseAbs().maxCoeff();
  cx.failure_demonstrated = cx.null_residual_inf <= 1e-10 && (cx.x - cx.x2).norm() > 0.0;
  return cx;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_verify(const ExperimentConfig& config, std::ostream& report) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok, const std::string& detail) {
    report << (ok ? "PASS " : "FAIL ") << name << " (" << detail << ")\n";
    if (!ok) ++failures;
  };
  auto skip = [&](const std::string& name, const std::string& why) { report << "SKIP " << name << " (" << why << ")\n"; };

  ResolvedRep rr = resolve_base_representation(config);
  const GroupPtr& group = rr.group;
  const auto axioms = group->verify_axioms();
  check("group_axioms", !axioms, axioms ? *axioms : "order " + std::to_string(group->order()));

  if (auto v = resolve_conjugator(config, *rr.rep)) {
    const double defect = unitarity_defect(*v);
    check("conjugator_unitarity", defect <= kUnitaryTol, "defect " + fmt(defect));
    if (defect <= kUnitaryTol) {
      rr.rep = std::make_shared<const Representation>(conjugate_rep(*rr.rep, *v));
      rr.conjugator = v;
    }
  }
  const Representation& rep = *rr.rep;
  const double unit = rep.max_unitarity_defect();
  check("rep_unitarity", unit <= kUnitaryTol, "max defect " + fmt(unit));
  const double hom = rep.max_homomorphism_defect();
  check("rep_homomorphism", hom <= kUnitaryTol, "max defect " + fmt(hom));
  if (rep.cocycle()) {
    const double cm = rep.max_cocycle_modulus_defect();
    check("cocycle_modulus", cm <= kUnitaryTol, "max defect " + fmt(cm));
  }

  std::shared_ptr<const std::vector<Representation>> catalog;
  try {
    catalog = std::make_shared<const std::vector<Representation>>(irreducible_reps(group));
  } catch (const std::invalid_argument& e) {
    skip("irreducible_catalog", e.what());
  }
  if (catalog) {
    double cat_defect = 0.0;
    for (const Representation& r : *catalog) {
      cat_defect = std::max({cat_defect, r.max_unitarity_defect(), r.max_homomorphism_defect()});
    }
    check("catalog_unitary_homomorphisms", cat_defect <= kUnitaryTol, "max defect " + fmt(cat_defect));
    const double schur = schur_orthogonality_defect(*catalog);
    check("schur_orthogonality", schur <= kEquivalenceTol, "max defect " + fmt(schur));
    int dim = 0;
    for (const Representation& r : *catalog) dim += r.degree() * r.degree();
    check("catalog_completeness", dim == group->order(),
          "sum d^2 = " + std::to_string(dim) + ", |G| = " + std::to_string(group->order()));
    if (dim == group->order()) {
      Rng rng(config.seed);
      double round = 0.0, planch = 0.0;
      for (int t = 0; t < 10; ++t) {
        CVector f(group->order()), h(group->order());
        for (int i = 0; i < group->order(); ++i) {
          f(i) = rng.complex_gaussian();
          h(i) = rng.complex_gaussian();
        }
        const auto ff = group_fourier(f, catalog);
        const auto hh = group_fourier(h, catalog);
        round = std::max(round, (group_inverse_fourier(ff) - f).cwiseAbs().maxCoeff());
        planch = std::max(planch, std::abs(h.dot(f) - fourier_inner_product(ff, hh)));
      }
      check("fourier_round_trip", round <= kUnitaryTol, "max error " + fmt(round));
      check("plancherel", planch <= kUnitaryTol, "max error " + fmt(planch));
    }
  }

  // Block structure: the representation's own, or the regular decomposition.
  std::optional<BlockStructure> block = rep.block();
  std::shared_ptr<const Representation> block_rep = rr.rep;
  if (!block && catalog) {
    block = regular_block_structure(*catalog);
    std::vector<std::pair<int, int>> ids;
    for (std::size_t i = 0; i < catalog->size(); ++i) ids.emplace_back(static_cast<int>(i), (*catalog)[i].degree());
    block_rep = std::make_shared<const Representation>(block_diagonal_from_catalog(*catalog, ids));
  }
  if (block) {
    const double unit_u = unitarity_defect(realization_transform_u(*block));
    const double sub = u_subrow_defect(*block);
    check("u_transform_subrows", unit_u <= kUnitaryTol && sub <= kUnitaryTol,
          "unitarity " + fmt(unit_u) + ", dichotomy " + fmt(sub));
    bool fits = true;
    for (const Block& b : block->blocks()) fits = fits && b.multiplicity <= b.degree;
    if (fits) {
      const GeneratingVector xi = sample_generating_vector(block->total_degree(), XiScheme::structured_block,
                                                           config.seed, block);
      const double norms = structured_block_norm_defect(xi);
      check("structured_xi_block_norms", norms <= 1e-12, "max defect " + fmt(norms));
      const CMatrix basis = resolve_basis(config, block->total_degree());
      const double ortho = column_orthonormality_defect(*block_rep, xi.values, basis);
      check("column_orthonormality", ortho <= kUnitaryTol, "max defect " + fmt(ortho));
    } else {
      skip("structured_xi_block_norms", "a multiplicity exceeds its block degree");
      skip("column_orthonormality", "a multiplicity exceeds its block degree");
    }
  } else {
    skip("u_transform_subrows", "no block structure available");
  }
  report << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << '\n';
  return failures == 0 ? kExitOk : kExitInvariant;
}

int cmd_constant(const ExperimentConfig& config, const RunOptions& options, std::ostream& csv) {
  const ResolvedRep rr = resolve_representation(config);
  const Representation& rep = *rr.rep;
  CsvTable table(concat(kProvenanceHeader, {"family", "trial", "trial_seed", "omega_size", "sets_evaluated",
                                            "constant", "argmax_coordinate", "bound", "bound_kind", "within_bound",
                                            "omega", "runtime_ms"}));
  bool ok = true;
  const ConstantFamily family = parse_constant_family(config.family);
  const auto admissible = sensing_partition(config, rr.group);

  std::optional<double> u_bound;
  if (rr.conjugator && config.conjugate_by == "u_transform") {
    const ResolvedRep base = resolve_base_representation(config);
    u_bound = u_transform_bound(*base.rep->block(), rr.group->order());
  }
  auto emit = [&](int trial, std::uint64_t tseed, const std::vector<Element>& omega, std::uint64_t sets, double value,
                  int argmax, double ms) {
    std::optional<std::pair<double, std::string>> bound;
    if (u_bound) {
      bound = std::make_pair(*u_bound, std::string("block_u_transform"));
    } else {
      bound = theoretical_bound(rr, omega);
    }
    const bool within = !bound || value <= bound->first + kEquivalenceTol;
    ok = ok && within && value >= 1.0 - kEquivalenceTol;
    table.add(concat(provenance("constant", config, rr),
                     {to_string(family), fmt(trial), fmt(tseed), fmt(static_cast<int>(omega.size())), fmt(sets),
                      fmt(value), fmt(argmax), bound ? fmt(bound->first) : "", bound ? bound->second : "",
                      bound ? fmt_bool(within) : "", join(omega), options.timestamp ? fmt(ms) : ""}));
  };

  if (family == ConstantFamily::single) {
    for (int t = 0; t < config.trials; ++t) {
      const auto start = std::chrono::steady_clock::now();
      const std::uint64_t tseed = trial_seed(config.seed, t);
      Rng rng(tseed);
      const SamplingSet omega = make_omega(config, rr, default_m(config, rr), 1, rng, admissible);
      std::vector<Element> distinct = omega.indices;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      const ConstantReport r = orbit_column_constant(rep, distinct);
      emit(t, tseed, distinct, 1, r.value, r.argmax_coordinate, elapsed_ms(start));
    }
  } else {
    const auto start = std::chrono::steady_clock::now();
    FamilySpec spec;
    spec.kind = family;
    spec.subset_size = config.subset_size;
    spec.samples = config.samples;
    spec.seed = config.seed;
    std::optional<CosetPartition> partition = admissible ? admissible : rr.partition;
    if (family == ConstantFamily::coset_admissible) {
      if (!partition) throw ConfigError("coset_admissible family needs sensing.subgroup or an induced representation");
      spec.partition = &*partition;
    }
    const FamilyReport r = constant_over_family(rep, spec);
    const int argmax = orbit_column_constant(rep, r.argmax_omega).argmax_coordinate;
    emit(0, config.seed, r.argmax_omega, r.sets_evaluated, r.value, argmax, elapsed_ms(start));
  }
  table.write(csv, options.timestamp);
  return ok ? kExitOk : kExitInvariant;
}

int cmd_rip(const ExperimentConfig& config, const RunOptions& options, std::ostream& csv) {
  const ResolvedRep rr = resolve_representation(config);
  const CMatrix basis = resolve_basis(config, rr.rep->degree());
  const auto admissible = sensing_partition(config, rr.group);
  std::vector<int> s_values = !config.rip_s.empty() ? config.rip_s : config.grid_s;
  if (s_values.empty()) s_values = {1, 2};
  std::vector<int> m_values = config.grid_m.empty() ? std::vector<int>{default_m(config, rr)} : config.grid_m;

  CsvTable table(concat(kProvenanceHeader, {"trial", "trial_seed", "m", "s", "delta", "supports_checked",
                                            "witness_support", "runtime_ms"}));
  std::uint64_t counter = 0;
  for (int m : m_values) {
    for (int t = 0; t < config.trials; ++t, ++counter) {
      const std::uint64_t tseed = trial_seed(config.seed, counter);
      Rng rng(tseed);
      GeneratingVector xi = make_xi(config, *rr.rep, rng);
      SamplingSet omega = make_omega(config, rr, m, s_values.front(), rng, admissible);
      const MeasurementEnsemble ens = build_measurement(rr.rep, std::move(xi), std::move(omega), basis, config.normalize);
      for (int s : s_values) {
        const auto start = std::chrono::steady_clock::now();
        const RipReport r = rip_constant(ens, s, config.threads);
        table.add(concat(provenance("rip", config, rr),
                         {fmt(t), fmt(tseed), fmt(static_cast<int>(ens.phi.rows())), fmt(s), fmt(r.delta),
                          fmt(r.supports_checked), join(r.witness_support),
                          options.timestamp ? fmt(elapsed_ms(start)) : ""}));
      }
    }
  }
  table.write(csv, options.timestamp);
  return kExitOk;
}

int cmd_counterexample(const ExperimentConfig& config, const RunOptions& options, std::ostream& csv,
                       std::ostream& report) {
  const std::string& which = config.cx_case;
  CsvTable table(concat(kProvenanceHeader, {"case", "n", "s", "m", "x_support", "null_residual_inf", "x_l1",
                                             "recovered_l1", "recovery_distance", "failure_demonstrated"}));
  const int n = config.cx_n, s = config.cx_s;
  // The constructions fix their own group, realization and sampling; provenance records those.
  auto origin = [&](const std::string& group, int param, int order, const std::string& realization,
                    const std::string& xi, const std::string& omega, const std::string& solver) {
    return std::vector<std::string>{"counterexample", group, fmt(param), fmt(order), realization, fmt(n), xi, omega,
                                    "identity", fmt(config.seed), solver, fmt(config.tol_feas), fmt(config.tol_opt)};
  };
  bool ok = false;
  if (which == "fourier") {
    BasisPursuitOptions bp{config.tol_feas, config.tol_opt, config.max_iter};
    const Counterexample cx = fourier_counterexample(n, s, config.seed, bp);
    int support = 0;
    for (Eigen::Index j = 0; j < cx.x.size(); ++j) support += std::abs(cx.x(j)) > 0.0;
    const int m = static_cast<int>(cx.omega.size());
    const bool shape = support == s && m == n - n / s && cx.null_residual_inf <= 1e-10;
    ok = shape && cx.failure_demonstrated;
    report << "diagonal-character representation of Z/" << n << ", |Omega| = " << m << ", ||x||_0 = " << support
           << ", ||Phi x||_inf = " << fmt(cx.null_residual_inf) << '\n';
    report << "basis pursuit returned ||x_hat||_1 = " << fmt(cx.recovery.estimate.cwiseAbs().sum())
           << " vs ||x||_1 = " << fmt(cx.x.cwiseAbs().sum()) << ", ||x_hat - x||_2 = "
           << fmt((cx.recovery.estimate - cx.x).norm()) << '\n';
    report << (ok ? "recovery fails as constructed" : "construction did not demonstrate failure") << '\n';
    table.add(concat(origin("cyclic", n, n, "left_regular+conjugated", "steinhaus", "adversarial", "basis_pursuit"),
                     {which, fmt(n), fmt(s), fmt(m), fmt(support), fmt(cx.null_residual_inf),
                      fmt(cx.x.cwiseAbs().sum()), fmt(cx.recovery.estimate.cwiseAbs().sum()),
                      fmt((cx.recovery.estimate - cx.x).norm()), fmt_bool(ok)}));
  } else if (which == "trivial") {
    const GroupPtr group = resolve_group(config);
    const Counterexample cx = trivial_counterexample(group, n, config.seed);
    ok = cx.failure_demonstrated;
    report << "trivial representation of degree " << n << " on a group of order " << group->order()
           << ": two distinct 1-sparse vectors with ||Phi x1 - Phi x2||_inf = " << fmt(cx.null_residual_inf) << '\n';
    table.add(concat(origin(config.group_kind, config.group_param, group->order(), "trivial", "complex_gaussian",
                            "fixed_set", "none"),
                     {which, fmt(n), "1", fmt(group->order()), "1", fmt(cx.null_residual_inf),
                      fmt(cx.x.cwiseAbs().sum()), fmt(cx.x2.cwiseAbs().sum()), fmt((cx.x - cx.x2).norm()),
                      fmt_bool(ok)}));
  } else {
    throw ConfigError("counterexample case must be fourier or trivial");
  }
  table.write(csv, options.timestamp);
  return ok ? kExitOk : kExitInvariant;
}

namespace {

struct TrialOutcome {
  bool success = false;
  double error = 0.0;
  double residual = 0.0;
  double l1 = 0.0;
  bool converged = false;
  int m = 0;
  double ms = 0.0;
};

CVector random_plant(int n, int s, Rng& rng) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  CVector x = CVector::Zero(n);
  for (int i = 0; i < s; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
    x(pool[i]) = rng.steinhaus();
  }
  return x;
}

RecoveryResult run_solver(const ExperimentConfig& c, const CMatrix& phi, const CVector& y, int s) {
  if (c.solver == "basis_pursuit") return basis_pursuit(phi, y, {c.tol_feas, c.tol_opt, c.max_iter});
  if (c.solver == "omp") return omp(phi, y, std::min<int>(s, static_cast<int>(phi.rows())));
  if (c.solver == "iht") return iht(phi, y, s, {0.0, c.max_iter});
  if (c.solver == "l0_oracle") return l0_oracle(phi, y, s);
  throw ConfigError("unknown solver.name '" + c.solver + "'");
}

}  // namespace

int cmd_phase_transition(const ExperimentConfig& config, const RunOptions& options, std::ostream& csv) {
  const ResolvedRep rr = resolve_representation(config);
  const int n = rr.rep->degree();
  const CMatrix basis = resolve_basis(config, n);
  const auto admissible = sensing_partition(config, rr.group);
  const std::vector<int> s_values = config.grid_s.empty() ? std::vector<int>{1} : config.grid_s;
  const std::vector<int> m_values = config.grid_m.empty() ? std::vector<int>{default_m(config, rr)} : config.grid_m;
  if (config.plant != "random" && config.plant != "null_space") throw ConfigError("phase.plant must be random or null_space");
  run_solver(config, CMatrix::Identity(1, 1), CVector::Ones(1), 1);  // validates the solver name

  struct Cell {
    int s, m;
  };
  std::vector<Cell> cells;
  for (int s : s_values) {
    if (s < 1 || s > n) throw ConfigError("grid.s entries must lie in 1..n");
    for (int m : m_values) {
      if (m < 1) throw ConfigError("grid.m entries must be positive");
      cells.push_back({s, m});
    }
  }
  const int trials = config.trials;
  const std::size_t total = cells.size() * static_cast<std::size_t>(trials);
  std::vector<TrialOutcome> outcomes(total);
  std::vector<std::uint64_t> seeds(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&]() {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      try {
        const Cell& cell = cells[idx / trials];
        const auto start = std::chrono::steady_clock::now();
        const std::uint64_t tseed = trial_seed(config.seed, idx);
        seeds[idx] = tseed;
        Rng rng(tseed);
        GeneratingVector xi = make_xi(config, *rr.rep, rng);
        SamplingSet omega = make_omega(config, rr, cell.m, cell.s, rng, admissible);
        CVector x;
        if (config.plant == "null_space") {
          if (n % cell.s != 0) throw ConfigError("null_space plant needs s dividing n");
          x = CVector::Zero(n);
          for (int p = 0; p < n; p += n / cell.s) x(p) = std::conj(1.0 / xi.values(p));
        } else {
          x = random_plant(n, cell.s, rng);
        }
        const MeasurementEnsemble ens = build_measurement(rr.rep, std::move(xi), std::move(omega), basis, config.normalize);
        const CVector y = ens.phi * x;
        TrialOutcome out;
        out.m = static_cast<int>(ens.phi.rows());
        try {
          const RecoveryResult r = run_solver(config, ens.phi, y, cell.s);
          out.error = (r.estimate - x).norm();
          out.residual = r.residual_norm;
          out.l1 = r.estimate.cwiseAbs().sum();
          out.converged = r.converged;
          out.success = out.error <= 1e-4 * x.norm();
        } catch (const std::invalid_argument&) {
          out.error = x.norm();
          out.residual = std::numeric_limits<double>::quiet_NaN();
        }
        out.ms = elapsed_ms(start);
        outcomes[idx] = out;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
      }
    }
  };
  const int threads = std::max(1, std::min<int>(config.threads, static_cast<int>(total)));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  CsvTable table(concat(kProvenanceHeader, {"plant", "row_type", "s", "m", "trial", "trial_seed", "success",
                                            "error", "residual", "l1_norm", "converged", "successes", "trials",
                                            "success_rate", "runtime_ms"}));
  for (std::size_t c = 0; c < cells.size(); ++c) {
    int successes = 0;
    double ms = 0.0;
    int m_used = cells[c].m;
    for (int t = 0; t < trials; ++t) {
      const std::size_t idx = c * trials + t;
      const TrialOutcome& o = outcomes[idx];
      successes += o.success;
      ms += o.ms;
      m_used = o.m;
      table.add(concat(provenance("phase-transition", config, rr),
                       {config.plant, "trial", fmt(cells[c].s), fmt(o.m), fmt(t), fmt(seeds[idx]),
                        fmt_bool(o.success), fmt(o.error), std::isnan(o.residual) ? "" : fmt(o.residual), fmt(o.l1),
                        fmt_bool(o.converged), "", "", "", options.timestamp ? fmt(o.ms) : ""}));
    }
    table.add(concat(provenance("phase-transition", config, rr),
                     {config.plant, "cell", fmt(cells[c].s), fmt(m_used), "", "", "", "", "", "", "", fmt(successes),
                      fmt(trials), fmt(static_cast<double>(successes) / trials),
                      options.timestamp ? fmt(ms / trials) : ""}));
  }
  table.write(csv, options.timestamp);
  return kExitOk;
}

int cmd_bound(const ExperimentConfig& config, const RunOptions& options, std::ostream& csv) {
  const ResolvedRep rr = resolve_representation(config);
  const Representation& rep = *rr.rep;
  const int order = rr.group->order();
  double c_const = 0.0;
  std::string c_source;
  if (config.c_const == "auto") {
    std::vector<Element> all(order);
    std::iota(all.begin(), all.end(), 0);
    c_const = orbit_column_constant(rep, all).value;
    c_source = "computed";
  } else {
    try {
      c_const = std::stod(config.c_const);
    } catch (const std::exception&) {
      throw ConfigError("bound.C_const must be auto or a number");
    }
    c_source = "given";
  }
  const int dmax = rep_d_max(rep);
  const std::vector<int> s_values = config.grid_s.empty() ? std::vector<int>{1} : config.grid_s;
  const std::vector<int> n_values = config.grid_n.empty() ? std::vector<int>{rep.degree()} : config.grid_n;
  CsvTable table(concat(kProvenanceHeader, {"s", "n", "C_const", "C_source", "d_max", "delta", "eta", "c", "C",
                                            "orbit_bound", "orbit_vacuous", "structured_bound", "structured_vacuous"}));
  try {
    for (int s : s_values) {
      for (int n : n_values) {
        const std::int64_t b1 = orbit_measurement_bound(s, n, c_const, config.delta, config.eta, config.bound_c);
        const std::int64_t b2 = structured_measurement_bound(s, n, order, dmax, config.delta, config.eta, config.bound_C);
        table.add(concat(provenance("bound", config, rr),
                         {fmt(s), fmt(n), fmt(c_const), c_source, fmt(dmax), fmt(config.delta), fmt(config.eta),
                          fmt(config.bound_c), fmt(config.bound_C), fmt(b1), fmt_bool(b1 > n), fmt(b2),
                          fmt_bool(b2 > n)}));
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[bound]: ") + e.what());
  }
  table.write(csv, options.timestamp);
  return kExitOk;
}

int run_command(const std::string& name, const ExperimentConfig& config, const RunOptions& options,
                std::ostream& csv, std::ostream& report) {
  if (name == "verify") return cmd_verify(config, report);
  if (name == "constant") return cmd_constant(config, options, csv);
  if (name == "rip") return cmd_rip(config, options, csv);
  if (name == "counterexample") return cmd_counterexample(config, options, csv, report);
  if (name == "phase-transition" || name == "phase_transition") return cmd_phase_transition(config, options, csv);
  if (name == "bound") return cmd_bound(config, options, csv);
  throw ConfigError("unknown experiment kind '" + name + "'");
}

}  // namespace orbitcs
