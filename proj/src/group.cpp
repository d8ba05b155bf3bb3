#include "orbitcs/group.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace orbitcs {

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::cyclic: return "cyclic";
    case GroupKind::dihedral: return "dihedral";
    case GroupKind::affine: return "affine";
    case GroupKind::subgroup: return "subgroup";
    case GroupKind::custom: return "custom";
  }
  return "unknown";
}

GroupKind parse_group_kind(const std::string& name) {
  if (name == "cyclic") return GroupKind::cyclic;
  if (name == "dihedral") return GroupKind::dihedral;
  if (name == "affine") return GroupKind::affine;
  throw std::invalid_argument("unknown group kind '" + name + "' (expected cyclic, dihedral or affine)");
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

FiniteGroup::FiniteGroup(std::vector<Element> cayley, std::vector<std::string> labels,
                         GroupKind kind, int param)
    : cayley_(std::move(cayley)), labels_(std::move(labels)), kind_(kind), param_(param) {
  const std::size_t n = labels_.size();
  if (n == 0 || cayley_.size() != n * n) {
    throw std::invalid_argument("Cayley table must be order x order with one label per element");
  }
  order_ = static_cast<int>(n);
  for (Element v : cayley_) {
    if (v < 0 || v >= order_) throw std::invalid_argument("Cayley table entry out of range");
  }
  // Latin square: every row and column is a permutation.
  std::vector<char> seen(n);
  for (int a = 0; a < order_; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < order_; ++b) {
      if (seen[mul(a, b)]++) throw std::invalid_argument("Cayley table row " + std::to_string(a) + " is not a permutation");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < order_; ++b) {
      if (seen[mul(b, a)]++) throw std::invalid_argument("Cayley table column " + std::to_string(a) + " is not a permutation");
    }
  }
  identity_ = -1;
  for (int e = 0; e < order_ && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < order_ && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw std::invalid_argument("Cayley table has no two-sided identity");
  inverse_.assign(n, -1);
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      if (mul(a, b) == identity_) {
        inverse_[a] = b;
        break;
      }
    }
    if (mul(inverse_[a], a) != identity_) {
      throw std::invalid_argument("element " + std::to_string(a) + " has no two-sided inverse");
    }
  }
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a) {
    for (int b = a + 1; b < order_; ++b) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

std::optional<std::string> FiniteGroup::verify_associativity() const {
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      const Element ab = mul(a, b);
      for (int c = 0; c < order_; ++c) {
        if (mul(ab, c) != mul(a, mul(b, c))) {
          std::ostringstream os;
          os << "(" << a << "*" << b << ")*" << c << " != " << a << "*(" << b << "*" << c << ")";
          return os.str();
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> FiniteGroup::verify_axioms() const {
  for (int a = 0; a < order_; ++a) {
    if (mul(identity_, a) != a || mul(a, identity_) != a) return "identity fails at element " + std::to_string(a);
    if (mul(a, inverse_[a]) != identity_) return "inverse fails at element " + std::to_string(a);
  }
  return verify_associativity();
}

namespace {

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group needs n >= 1");
  std::vector<Element> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  }
  return FiniteGroup(std::move(table), std::move(labels), GroupKind::cyclic, n);
}

// r^a s^b -> a + n*b, with s r s = r^{-1}.
FiniteGroup dihedral_group(int n) {
  if (n < 1) throw std::invalid_argument("dihedral group needs n >= 1");
  const int order = 2 * n;
  std::vector<Element> table(static_cast<std::size_t>(order) * order);
  std::vector<std::string> labels(order);
  for (int x = 0; x < order; ++x) {
    const int a = x % n, b = x / n;
    labels[x] = "r^" + std::to_string(a) + (b ? " s" : "");
    for (int y = 0; y < order; ++y) {
      const int c = y % n, d = y / n;
      const int rot = ((b ? a - c : a + c) % n + n) % n;
      table[static_cast<std::size_t>(x) * order + y] = rot + n * ((b + d) % 2);
    }
  }
  return FiniteGroup(std::move(table), std::move(labels), GroupKind::dihedral, n);
}

// (k,l) -> (l-1)*p + k, (k,l)(k',l') = (k + l k', l l').
FiniteGroup affine_group(int p) {
  if (!is_prime(p)) throw std::invalid_argument("affine group parameter " + std::to_string(p) + " is not prime");
  const int order = p * (p - 1);
  std::vector<Element> table(static_cast<std::size_t>(order) * order);
  std::vector<std::string> labels(order);
  for (int x = 0; x < order; ++x) {
    const int k = x % p, l = x / p + 1;
    labels[x] = "(" + std::to_string(k) + "," + std::to_string(l) + ")";
    for (int y = 0; y < order; ++y) {
      const int k2 = y % p, l2 = y / p + 1;
      const int kk = (k + l * k2) % p;
      const int ll = (l * l2) % p;
      table[static_cast<std::size_t>(x) * order + y] = (ll - 1) * p + kk;
    }
  }
  return FiniteGroup(std::move(table), std::move(labels), GroupKind::affine, p);
}

}  // namespace

FiniteGroup build_group(GroupKind kind, int param) {
  switch (kind) {
    case GroupKind::cyclic: return cyclic_group(param);
    case GroupKind::dihedral: return dihedral_group(param);
    case GroupKind::affine: return affine_group(param);
    default: break;
  }
  throw std::invalid_argument("build_group supports cyclic, dihedral and affine only");
}

GroupPtr make_group(GroupKind kind, int param) {
  return std::make_shared<const FiniteGroup>(build_group(kind, param));
}

CosetPartition::CosetPartition(GroupPtr parent, std::vector<Element> subgroup)
    : parent_(std::move(parent)), subgroup_(std::move(subgroup)) {
  const FiniteGroup& g = *parent_;
  const int n = g.order();
  std::sort(subgroup_.begin(), subgroup_.end());
  subgroup_.erase(std::unique(subgroup_.begin(), subgroup_.end()), subgroup_.end());
  for (Element h : subgroup_) {
    if (h < 0 || h >= n) throw std::invalid_argument("subgroup element " + std::to_string(h) + " out of range");
  }
  local_index_.assign(n, -1);
  for (std::size_t i = 0; i < subgroup_.size(); ++i) local_index_[subgroup_[i]] = static_cast<int>(i);
  auto contains = [&](Element x) { return local_index_[x] >= 0; };

  if (subgroup_.empty() || !contains(g.identity())) {
    throw std::invalid_argument("not a subgroup: identity axiom violated (identity not in H)");
  }
  for (Element a : subgroup_) {
    for (Element b : subgroup_) {
      if (!contains(g.mul(a, b))) {
        throw std::invalid_argument("not a subgroup: closure axiom violated (" + std::to_string(a) + "*" +
                                    std::to_string(b) + " not in H)");
      }
    }
  }
  for (Element a : subgroup_) {
    if (!contains(g.inverse(a))) {
      throw std::invalid_argument("not a subgroup: inverse axiom violated (inverse of " + std::to_string(a) +
                                  " not in H)");
    }
  }

  coset_of_.assign(n, -1);
  for (Element x = 0; x < n; ++x) {
    if (coset_of_[x] >= 0) continue;
    std::vector<Element> coset;
    coset.reserve(subgroup_.size());
    for (Element h : subgroup_) coset.push_back(g.mul(h, x));
    std::sort(coset.begin(), coset.end());
    const int id = static_cast<int>(cosets_.size());
    for (Element y : coset) coset_of_[y] = id;
    cosets_.push_back(std::move(coset));
  }

  is_normal_ = true;
  for (Element x = 0; x < n && is_normal_; ++x) {
    for (Element h : subgroup_) {
      if (!contains(g.mul(g.mul(x, h), g.inverse(x)))) {
        is_normal_ = false;
        break;
      }
    }
  }

  const int k = static_cast<int>(subgroup_.size());
  std::vector<Element> table(static_cast<std::size_t>(k) * k);
  std::vector<std::string> labels(k);
  for (int i = 0; i < k; ++i) {
    labels[i] = g.label(subgroup_[i]);
    for (int j = 0; j < k; ++j) {
      table[static_cast<std::size_t>(i) * k + j] = local_index_[g.mul(subgroup_[i], subgroup_[j])];
    }
  }
  subgroup_group_ = std::make_shared<const FiniteGroup>(std::move(table), std::move(labels), GroupKind::subgroup, k);
}

std::vector<Element> CosetPartition::left_coset(Element x) const {
  std::vector<Element> coset;
  for (Element h : subgroup_) coset.push_back(parent_->mul(x, h));
  std::sort(coset.begin(), coset.end());
  return coset;
}

CosetPartition coset_partition(const GroupPtr& group, std::vector<Element> subgroup) {
  return CosetPartition(group, std::move(subgroup));
}

CrossSection::CrossSection(const CosetPartition& partition) {
  for (const auto& coset : partition.cosets()) representative_.push_back(coset.front());
}

CrossSection::CrossSection(const CosetPartition& partition, std::vector<Element> representatives)
    : representative_(std::move(representatives)) {
  if (static_cast<int>(representative_.size()) != partition.num_cosets()) {
    throw std::invalid_argument("cross-section needs exactly one representative per coset");
  }
  for (int c = 0; c < partition.num_cosets(); ++c) {
    const Element r = representative_[c];
    if (r < 0 || r >= partition.parent()->order() || partition.coset_of(r) != c) {
      throw std::invalid_argument("cross-section representative " + std::to_string(r) + " is not in coset " +
                                  std::to_string(c));
    }
  }
}

bool is_coset_admissible(std::span<const Element> omega, const CosetPartition& partition) {
  std::vector<char> used(partition.num_cosets(), 0);
  std::vector<Element> sorted(omega.begin(), omega.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (Element g : sorted) {
    if (used[partition.coset_of(g)]++) return false;
  }
  return true;
}

std::uint64_t count_admissible_sets(const CosetPartition& partition) {
  const std::uint64_t base = 1 + partition.subgroup().size();
  std::uint64_t result = 1;
  for (int i = 0; i < partition.num_cosets(); ++i) {
    if (result > std::numeric_limits<std::uint64_t>::max() / base) {
      throw std::overflow_error("admissible-set count exceeds 64 bits");
    }
    result *= base;
  }
  return result;
}

}  // namespace orbitcs
