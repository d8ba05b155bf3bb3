#pragma once

#include "orbitcs/types.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace orbitcs {

enum class GroupKind { cyclic, dihedral, affine, subgroup, custom };

std::string to_string(GroupKind kind);
GroupKind parse_group_kind(const std::string& name);

bool is_prime(int p);

/// A finite group stored as a dense Cayley table over element indices 0..order-1.
///
/// Numbering is fixed by the constructor: cyclic k -> k, dihedral r^a s^b -> a + n*b,
/// affine (k,l) -> (l-1)*p + k. The identity is always element 0 for the built-in
/// families. Construction validates identity, inverses and the Latin-square property
/// in O(order^2); associativity is O(order^3) and lives in verify_associativity().
class FiniteGroup {
 public:
  FiniteGroup(std::vector<Element> cayley, std::vector<std::string> labels, GroupKind kind,
              int param);

  int order() const { return order_; }
  Element mul(Element a, Element b) const { return cayley_[static_cast<std::size_t>(a) * order_ + b]; }
  Element inverse(Element a) const { return inverse_[a]; }
  Element identity() const { return identity_; }
  const std::string& label(Element a) const { return labels_[a]; }
  GroupKind kind() const { return kind_; }
  int param() const { return param_; }
  std::span<const Element> cayley() const { return cayley_; }

  bool is_abelian() const;

  // First associativity violation as "(a*b)*c != a*(b*c)", or nullopt.
  std::optional<std::string> verify_associativity() const;

  // Full axiom check used by the verify suite.
  std::optional<std::string> verify_axioms() const;

  bool same_table(const FiniteGroup& other) const { return cayley_ == other.cayley_; }

 private:
  int order_;
  std::vector<Element> cayley_;
  std::vector<Element> inverse_;
  Element identity_ = 0;
  std::vector<std::string> labels_;
  GroupKind kind_;
  int param_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

FiniteGroup build_group(GroupKind kind, int param);
GroupPtr make_group(GroupKind kind, int param);

/// Right cosets Hg of a subgroup H.
class CosetPartition {
 public:
  CosetPartition(GroupPtr parent, std::vector<Element> subgroup);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<Element>& subgroup() const { return subgroup_; }
  const std::vector<std::vector<Element>>& cosets() const { return cosets_; }
  int coset_of(Element g) const { return coset_of_[g]; }
  int num_cosets() const { return static_cast<int>(cosets_.size()); }
  bool is_normal() const { return is_normal_; }

  // H as a group in its own right; local index i corresponds to subgroup()[i].
  const GroupPtr& subgroup_group() const { return subgroup_group_; }
  // Local index of g in subgroup(), or -1.
  int local_index(Element g) const { return local_index_[g]; }

  // Left coset gH, sorted; used to check the normal-subgroup property.
  std::vector<Element> left_coset(Element g) const;

 private:
  GroupPtr parent_;
  std::vector<Element> subgroup_;
  std::vector<std::vector<Element>> cosets_;
  std::vector<int> coset_of_;
  std::vector<int> local_index_;
  bool is_normal_ = false;
  GroupPtr subgroup_group_;
};

CosetPartition coset_partition(const GroupPtr& group, std::vector<Element> subgroup);

/// One representative per coset, representative(c) lies in coset c.
class CrossSection {
 public:
  // Smallest element index per coset.
  explicit CrossSection(const CosetPartition& partition);
  CrossSection(const CosetPartition& partition, std::vector<Element> representatives);

  Element representative(int coset) const { return representative_[coset]; }
  const std::vector<Element>& representatives() const { return representative_; }

 private:
  std::vector<Element> representative_;
};

bool is_coset_admissible(std::span<const Element> omega, const CosetPartition& partition);

// (1 + |H|)^{|H\G|}; throws std::overflow_error past 64 bits.
std::uint64_t count_admissible_sets(const CosetPartition& partition);

}  // namespace orbitcs
