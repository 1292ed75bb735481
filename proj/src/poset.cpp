#include "splitnash/poset.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace splitnash {

namespace {

int words_for(int n) { return (n + 63) / 64; }

void set_bit(std::vector<std::uint64_t>& rows, int words, int a, int b) {
  rows[static_cast<std::size_t>(a) * words + (b >> 6)] |= std::uint64_t(1) << (b & 63);
}

bool get_bit(const std::vector<std::uint64_t>& rows, int words, int a, int b) {
  return (rows[static_cast<std::size_t>(a) * words + (b >> 6)] >> (b & 63)) & 1u;
}

std::vector<std::string> default_labels(int n, const char* stem) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels.push_back(stem + std::to_string(i));
  return labels;
}

}  // namespace

FinitePoset::FinitePoset(std::vector<std::string> labels, std::vector<std::uint64_t> up, int words)
    : size_(static_cast<int>(labels.size())),
      words_(words),
      labels_(std::move(labels)),
      up_(std::move(up)) {}

FinitePoset::Validation FinitePoset::validate(std::vector<std::string> labels,
                                              const std::vector<std::pair<int, int>>& relation) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) throw std::invalid_argument("poset needs at least one element");
  const int words = words_for(n);
  std::vector<std::uint64_t> up(static_cast<std::size_t>(n) * words, 0);
  for (const auto& [a, b] : relation) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw std::invalid_argument("relation pair out of range");
    }
    set_bit(up, words, a, b);
  }

  Validation result;
  for (int a = 0; a < n; ++a) {
    if (!get_bit(up, words, a, a)) {
      result.violation = OrderViolation{OrderViolation::Axiom::Reflexivity, a, -1, -1,
                                        "missing " + labels[a] + " <= " + labels[a]};
      return result;
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b && get_bit(up, words, a, b) && get_bit(up, words, b, a)) {
        result.violation =
            OrderViolation{OrderViolation::Axiom::Antisymmetry, a, b, -1,
                           labels[a] + " <= " + labels[b] + " and " + labels[b] + " <= " + labels[a]};
        return result;
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (!get_bit(up, words, a, b)) continue;
      for (int c = 0; c < n; ++c) {
        if (get_bit(up, words, b, c) && !get_bit(up, words, a, c)) {
          result.violation = OrderViolation{OrderViolation::Axiom::Transitivity, a, b, c,
                                            labels[a] + " <= " + labels[b] + " <= " + labels[c] +
                                                " but not " + labels[a] + " <= " + labels[c]};
          return result;
        }
      }
    }
  }
  result.poset = FinitePoset(std::move(labels), std::move(up), words);
  return result;
}

FinitePoset FinitePoset::from_covers(std::vector<std::string> labels,
                                     const std::vector<std::pair<int, int>>& covers) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) throw std::invalid_argument("poset needs at least one element");
  const int words = words_for(n);
  std::vector<std::uint64_t> up(static_cast<std::size_t>(n) * words, 0);
  for (int a = 0; a < n; ++a) set_bit(up, words, a, a);
  for (const auto& [a, b] : covers) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw std::invalid_argument("cover pair out of range");
    }
    set_bit(up, words, a, b);
  }
  // Warshall closure over the bit rows.
  for (int k = 0; k < n; ++k) {
    for (int a = 0; a < n; ++a) {
      if (!get_bit(up, words, a, k)) continue;
      const std::size_t ra = static_cast<std::size_t>(a) * words;
      const std::size_t rk = static_cast<std::size_t>(k) * words;
      for (int w = 0; w < words; ++w) up[ra + w] |= up[rk + w];
    }
  }

  std::vector<std::pair<int, int>> relation;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (get_bit(up, words, a, b)) relation.emplace_back(a, b);
    }
  }
  Validation checked = validate(std::move(labels), relation);
  if (!checked.ok()) {
    throw std::invalid_argument("covers do not induce a poset: " + checked.violation->message);
  }
  return *std::move(checked.poset);
}

FinitePoset FinitePoset::chain(int n) { return chain(default_labels(n, "e")); }

FinitePoset FinitePoset::chain(std::vector<std::string> labels) {
  const int n = static_cast<int>(labels.size());
  if (n == 0) throw std::invalid_argument("poset needs at least one element");
  std::vector<std::pair<int, int>> relation;
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) relation.emplace_back(a, b);
  }
  return *validate(std::move(labels), relation).poset;
}

FinitePoset FinitePoset::antichain(int n) {
  std::vector<std::pair<int, int>> relation;
  for (int a = 0; a < n; ++a) relation.emplace_back(a, a);
  return *validate(default_labels(n, "e"), relation).poset;
}

int FinitePoset::index_of(const std::string& label) const {
  for (int i = 0; i < size_; ++i) {
    if (labels_[static_cast<std::size_t>(i)] == label) return i;
  }
  return -1;
}

bool FinitePoset::same_order(const FinitePoset& other) const {
  if (size_ != other.size_) return false;
  for (int a = 0; a < size_; ++a) {
    for (int b = 0; b < size_; ++b) {
      if (leq(a, b) != other.leq(a, b)) return false;
    }
  }
  return true;
}

std::vector<int> upset(const FinitePoset& poset, int x) {
  if (x < 0 || x >= poset.size()) throw std::invalid_argument("upset: element out of range");
  std::vector<int> result;
  for (int y = 0; y < poset.size(); ++y) {
    if (poset.leq(x, y)) result.push_back(y);
  }
  return result;
}

bool is_chain(const FinitePoset& poset, std::span<const int> subset) {
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 0 || subset[i] >= poset.size()) {
      throw std::invalid_argument("is_chain: element out of range");
    }
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      if (!poset.comparable(subset[i], subset[j])) return false;
    }
  }
  return true;
}

std::vector<int> maximal_elements(const FinitePoset& poset, std::span<const int> subset) {
  std::vector<int> result;
  for (int s : subset) {
    bool maximal = true;
    for (int t : subset) {
      if (t != s && poset.less(s, t)) {
        maximal = false;
        break;
      }
    }
    if (maximal) result.push_back(s);
  }
  return result;
}

std::optional<int> least_upper_bound(const FinitePoset& poset, int a, int b) {
  std::vector<int> bounds;
  for (int u = 0; u < poset.size(); ++u) {
    if (poset.leq(a, u) && poset.leq(b, u)) bounds.push_back(u);
  }
  for (int u : bounds) {
    bool least = true;
    for (int v : bounds) {
      if (!poset.leq(u, v)) {
        least = false;
        break;
      }
    }
    if (least) return u;
  }
  return std::nullopt;
}

namespace {

// Local bitmask model of a sub-universe (at most 64 elements). element[i] is
// the global index of local element i.
struct MaskModel {
  std::vector<int> element;
  std::vector<std::uint64_t> up;   // up[i]: locals j with element[i] <= element[j]
  std::vector<std::uint64_t> cmp;  // comparability masks
};

MaskModel build_model(const FinitePoset& poset, std::span<const int> universe) {
  MaskModel m;
  m.element.assign(universe.begin(), universe.end());
  const int n = static_cast<int>(universe.size());
  m.up.assign(static_cast<std::size_t>(n), 0);
  m.cmp.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (poset.leq(universe[i], universe[j])) m.up[i] |= std::uint64_t(1) << j;
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if ((m.up[i] >> j & 1u) || (m.up[j] >> i & 1u)) m.cmp[i] |= std::uint64_t(1) << j;
    }
  }
  return m;
}

// Depth-first enumeration of nonempty chains in the model. chain_ok is called
// with (chain members as local indices, mask of common upper bounds); a false
// return stops enumeration with that chain as the counterexample.
template <typename ChainOk>
bool enumerate_chains(const MaskModel& m, ChainOk&& chain_ok, std::vector<int>& failing) {
  const int n = static_cast<int>(m.element.size());
  std::vector<int> chain;
  // Iterative DFS: frame = (next candidate, upper-bound mask, comparable mask).
  struct Frame {
    int next;
    std::uint64_t ub;
    std::uint64_t cmp;
  };
  for (int start = 0; start < n; ++start) {
    chain.assign(1, start);
    std::vector<Frame> stack;
    stack.push_back({start + 1, m.up[static_cast<std::size_t>(start)],
                     m.cmp[static_cast<std::size_t>(start)]});
    if (!chain_ok(chain, stack.back().ub)) {
      failing = chain;
      return false;
    }
    while (!stack.empty()) {
      Frame& top = stack.back();
      int next = -1;
      for (int j = top.next; j < n; ++j) {
        if (top.cmp >> j & 1u) {
          next = j;
          break;
        }
      }
      if (next < 0) {
        stack.pop_back();
        chain.pop_back();
        continue;
      }
      top.next = next + 1;
      chain.push_back(next);
      const std::uint64_t ub = top.ub & m.up[static_cast<std::size_t>(next)];
      const std::uint64_t cmp = top.cmp & m.cmp[static_cast<std::size_t>(next)];
      if (!chain_ok(chain, ub)) {
        failing = chain;
        return false;
      }
      stack.push_back({next + 1, ub, cmp});
    }
  }
  return true;
}

void check_cap(int enum_cap) {
  if (enum_cap < 1 || enum_cap > kMaxChainEnumCap) {
    throw std::invalid_argument("chain enumeration cap must be in [1, 64]");
  }
}

}  // namespace

ChainCompletenessCheck is_chain_complete(const FinitePoset& poset, int enum_cap) {
  check_cap(enum_cap);
  ChainCompletenessCheck result;
  if (poset.size() > enum_cap) {
    result.method = OrderCheckMethod::FiniteTheorem;
    return result;
  }
  std::vector<int> universe(static_cast<std::size_t>(poset.size()));
  for (int i = 0; i < poset.size(); ++i) universe[static_cast<std::size_t>(i)] = i;
  const MaskModel m = build_model(poset, universe);
  std::vector<int> failing;
  const bool ok = enumerate_chains(
      m,
      [&](const std::vector<int>&, std::uint64_t ub) {
        // A supremum is a member u of ub below every member of ub.
        for (std::uint64_t rest = ub; rest;) {
          const int u = std::countr_zero(rest);
          rest &= rest - 1;
          if ((ub & ~m.up[static_cast<std::size_t>(u)]) == 0) return true;
        }
        return false;
      },
      failing);
  if (!ok) {
    result.complete = false;
    result.chain_without_supremum = failing;
  }
  return result;
}

InductivityCheck is_inductive(const FinitePoset& poset, std::span<const int> subset, int enum_cap) {
  check_cap(enum_cap);
  if (subset.empty()) throw std::invalid_argument("is_inductive: subset must be nonempty");
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 0 || subset[i] >= poset.size()) {
      throw std::invalid_argument("is_inductive: element out of range");
    }
    if (i + 1 < subset.size() && subset[i] >= subset[i + 1]) {
      throw std::invalid_argument("is_inductive: subset must be sorted ascending without duplicates");
    }
  }
  InductivityCheck result;
  if (static_cast<int>(subset.size()) > enum_cap) {
    result.method = OrderCheckMethod::FiniteTheorem;
    return result;
  }
  const MaskModel m = build_model(poset, subset);
  std::vector<int> failing;
  const bool ok = enumerate_chains(
      m, [&](const std::vector<int>&, std::uint64_t ub) { return ub != 0; }, failing);
  if (!ok) {
    result.inductive = false;
    std::vector<int> global;
    global.reserve(failing.size());
    for (int i : failing) global.push_back(m.element[static_cast<std::size_t>(i)]);
    result.chain_without_bound = std::move(global);
  }
  return result;
}

ProductPoset::ProductPoset(std::vector<FinitePoset> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("product of zero posets");
  long long size = 1;
  for (const FinitePoset& f : factors_) {
    size *= f.size();
    if (size > 1'000'000'000) throw std::invalid_argument("product poset too large");
  }
  size_ = static_cast<int>(size);
  strides_.assign(factors_.size(), 1);
  for (int i = static_cast<int>(factors_.size()) - 2; i >= 0; --i) {
    strides_[static_cast<std::size_t>(i)] =
        strides_[static_cast<std::size_t>(i) + 1] * factors_[static_cast<std::size_t>(i) + 1].size();
  }
}

int ProductPoset::encode(std::span<const int> coords) const {
  if (static_cast<int>(coords.size()) != factor_count()) {
    throw std::invalid_argument("encode: wrong coordinate count");
  }
  int flat = 0;
  for (int i = 0; i < factor_count(); ++i) {
    if (coords[static_cast<std::size_t>(i)] < 0 ||
        coords[static_cast<std::size_t>(i)] >= factor(i).size()) {
      throw std::invalid_argument("encode: coordinate out of range");
    }
    flat += coords[static_cast<std::size_t>(i)] * strides_[static_cast<std::size_t>(i)];
  }
  return flat;
}

std::vector<int> ProductPoset::decode(int flat) const {
  std::vector<int> coords(static_cast<std::size_t>(factor_count()));
  for (int i = 0; i < factor_count(); ++i) coords[static_cast<std::size_t>(i)] = coord(flat, i);
  return coords;
}

bool ProductPoset::leq(int a, int b) const {
  for (int i = 0; i < factor_count(); ++i) {
    if (!factor(i).leq(coord(a, i), coord(b, i))) return false;
  }
  return true;
}

std::string ProductPoset::label(int flat) const {
  std::string out = "(";
  for (int i = 0; i < factor_count(); ++i) {
    if (i) out += ",";
    out += factor(i).label(coord(flat, i));
  }
  out += ")";
  return out;
}

FinitePoset ProductPoset::to_poset() const {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(size_));
  for (int x = 0; x < size_; ++x) labels.push_back(label(x));
  const int words = words_for(size_);
  std::vector<std::uint64_t> up(static_cast<std::size_t>(size_) * words, 0);
  for (int a = 0; a < size_; ++a) {
    for (int b = 0; b < size_; ++b) {
      if (leq(a, b)) set_bit(up, words, a, b);
    }
  }
  return FinitePoset(std::move(labels), std::move(up), words);
}

ProductPoset product(std::vector<FinitePoset> factors) { return ProductPoset(std::move(factors)); }

}  // namespace splitnash
