#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace splitnash {

// Chains are enumerated with 64-bit masks, so enumeration caps cannot exceed
// 64. Above the cap the finite-poset theorem certificate is used instead.
inline constexpr int kDefaultChainEnumCap = 20;
inline constexpr int kMaxChainEnumCap = 64;

struct OrderViolation {
  enum class Axiom { Reflexivity, Antisymmetry, Transitivity };
  Axiom axiom;
  // Witnesses: reflexivity uses a; antisymmetry a,b; transitivity a,b,c.
  int a = -1;
  int b = -1;
  int c = -1;
  std::string message;
};

// Finite partially ordered set over elements 0..size-1 with string labels.
// Construction always validates the three order axioms; an instance that
// exists is a genuine poset.
class FinitePoset {
 public:
  struct Validation;

  // Relation given as index pairs (a,b) meaning a <= b. Reflexive pairs must
  // be present. Throws std::invalid_argument on an empty element list or
  // out-of-range indices; axiom violations come back in the report.
  static Validation validate(std::vector<std::string> labels,
                             const std::vector<std::pair<int, int>>& relation);

  // Reflexive-transitive closure of cover pairs, then axiom validation.
  // Throws std::invalid_argument if the covers induce a cycle (antisymmetry).
  static FinitePoset from_covers(std::vector<std::string> labels,
                                 const std::vector<std::pair<int, int>>& covers);

  // Total order e0 < e1 < ... < e(n-1).
  static FinitePoset chain(int n);
  static FinitePoset chain(std::vector<std::string> labels);
  // No relations besides reflexivity.
  static FinitePoset antichain(int n);

  int size() const { return size_; }
  bool leq(int a, int b) const { return bit(a, b); }
  bool less(int a, int b) const { return a != b && bit(a, b); }
  bool comparable(int a, int b) const { return bit(a, b) || bit(b, a); }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  // Index of a label, -1 if absent.
  int index_of(const std::string& label) const;

  bool same_order(const FinitePoset& other) const;

 private:
  FinitePoset(std::vector<std::string> labels, std::vector<std::uint64_t> up, int words);

  bool bit(int a, int b) const {
    return (up_[static_cast<std::size_t>(a) * words_ + (b >> 6)] >> (b & 63)) & 1u;
  }

  int size_ = 0;
  int words_ = 0;  // 64-bit words per row
  std::vector<std::string> labels_;
  std::vector<std::uint64_t> up_;  // row a: bit b set iff a <= b

  friend class ProductPoset;
};

struct FinitePoset::Validation {
  std::optional<FinitePoset> poset;
  std::optional<OrderViolation> violation;
  bool ok() const { return poset.has_value(); }
};

// [x] = {y : x <= y}, ascending indices.
std::vector<int> upset(const FinitePoset& poset, int x);

// Every two members comparable. The empty subset is a chain.
bool is_chain(const FinitePoset& poset, std::span<const int> subset);

// Elements of subset with no strictly greater member inside subset.
std::vector<int> maximal_elements(const FinitePoset& poset, std::span<const int> subset);

// Least upper bound of {a, b} if it exists.
std::optional<int> least_upper_bound(const FinitePoset& poset, int a, int b);

enum class OrderCheckMethod {
  Enumerated,     // every chain inspected explicitly
  FiniteTheorem,  // instance above the cap; finite nonempty posets qualify
};

struct ChainCompletenessCheck {
  bool complete = true;
  OrderCheckMethod method = OrderCheckMethod::Enumerated;
  // Only possible for enumerated non-posets fed through internal hooks; kept
  // so the checker is usable as its own oracle.
  std::optional<std::vector<int>> chain_without_supremum;
};

// Checks that every nonempty chain has a supremum. Nonempty finite posets
// always qualify; enumeration below the cap re-derives that fact.
// Throws std::invalid_argument if enum_cap exceeds kMaxChainEnumCap.
ChainCompletenessCheck is_chain_complete(const FinitePoset& poset,
                                         int enum_cap = kDefaultChainEnumCap);

struct InductivityCheck {
  bool inductive = true;
  OrderCheckMethod method = OrderCheckMethod::Enumerated;
  std::optional<std::vector<int>> chain_without_bound;  // global indices
};

// Checks that every nonempty chain inside subset has an upper bound inside
// subset. subset must be nonempty and sorted ascending.
InductivityCheck is_inductive(const FinitePoset& poset, std::span<const int> subset,
                              int enum_cap = kDefaultChainEnumCap);

// Component-wise (product) order over tuples of factor elements. Tuples are
// addressed by a flat mixed-radix index with coordinate 0 most significant,
// so ascending flat index is lexicographic in coordinates.
class ProductPoset {
 public:
  explicit ProductPoset(std::vector<FinitePoset> factors);

  int factor_count() const { return static_cast<int>(factors_.size()); }
  const FinitePoset& factor(int i) const { return factors_[static_cast<std::size_t>(i)]; }
  int size() const { return size_; }

  int encode(std::span<const int> coords) const;
  std::vector<int> decode(int flat) const;
  int coord(int flat, int i) const {
    return (flat / strides_[static_cast<std::size_t>(i)]) % factors_[static_cast<std::size_t>(i)].size();
  }
  // Flat index with coordinate i replaced by strategy z.
  int replace_coord(int flat, int i, int z) const {
    return flat + (z - coord(flat, i)) * strides_[static_cast<std::size_t>(i)];
  }

  bool leq(int a, int b) const;
  std::string label(int flat) const;

  // Materializes the product order as a FinitePoset (tuple labels).
  FinitePoset to_poset() const;

 private:
  std::vector<FinitePoset> factors_;
  std::vector<int> strides_;
  int size_ = 1;
};

// Product of the given factors; at least one factor required.
ProductPoset product(std::vector<FinitePoset> factors);

}  // namespace splitnash
