// Tensor-product operator words over {I, X, iY, Z} and the finite abelian
// groups they form. With the phase folded into iY every word is self inverse,
// so a product of two words is the factor-wise XOR of their labels and a
// group is exactly an XOR-closed set containing the identity word.
#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aqd/qstate.hpp"

namespace aqd {

enum class PauliFactor : std::uint8_t { I = 0, X = 1, iY = 2, Z = 3 };

inline const char* factor_name(PauliFactor f) {
  switch (f) {
    case PauliFactor::I: return "I";
    case PauliFactor::X: return "X";
    case PauliFactor::iY: return "iY";
    case PauliFactor::Z: return "Z";
  }
  throw std::logic_error("factor_name: bad enum value");
}

inline const SquareMatrix& factor_matrix(PauliFactor f) {
  static const SquareMatrix kI(2, {Complex{1}, Complex{0}, Complex{0}, Complex{1}});
  static const SquareMatrix kX(2, {Complex{0}, Complex{1}, Complex{1}, Complex{0}});
  static const SquareMatrix kiY(2, {Complex{0}, Complex{1}, Complex{-1}, Complex{0}});
  static const SquareMatrix kZ(2, {Complex{1}, Complex{0}, Complex{0}, Complex{-1}});
  switch (f) {
    case PauliFactor::I: return kI;
    case PauliFactor::X: return kX;
    case PauliFactor::iY: return kiY;
    case PauliFactor::Z: return kZ;
  }
  throw std::logic_error("factor_matrix: bad enum value");
}

// A word like X.Z.I: one factor per qubit, factor 0 acting on qubit 0.
class PauliWord {
 public:
  explicit PauliWord(std::vector<PauliFactor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw std::invalid_argument("PauliWord: empty factor list");
  }

  static PauliWord identity(int length) {
    if (length < 1) throw std::invalid_argument("PauliWord: length must be positive");
    return PauliWord(std::vector<PauliFactor>(length, PauliFactor::I));
  }

  // Accepts dotted labels, e.g. "iY.X.I".
  static PauliWord parse(const std::string& text) {
    std::vector<PauliFactor> factors;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, '.')) {
      if (token == "I") factors.push_back(PauliFactor::I);
      else if (token == "X") factors.push_back(PauliFactor::X);
      else if (token == "iY") factors.push_back(PauliFactor::iY);
      else if (token == "Z") factors.push_back(PauliFactor::Z);
      else throw std::invalid_argument("PauliWord: unknown factor '" + token + "' in '" + text + "'");
    }
    if (factors.empty()) throw std::invalid_argument("PauliWord: no factors in '" + text + "'");
    return PauliWord(std::move(factors));
  }

  int length() const { return static_cast<int>(factors_.size()); }
  PauliFactor factor(int i) const { return factors_.at(i); }
  const std::vector<PauliFactor>& factors() const { return factors_; }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) out += '.';
      out += factor_name(factors_[i]);
    }
    return out;
  }

  // Big-endian base-4 value of the label sequence with (I,X,iY,Z) = (0,1,2,3).
  // Sorting by this key is the canonical ordering used for bit assignment.
  std::uint64_t base4_key() const {
    std::uint64_t key = 0;
    for (PauliFactor f : factors_) key = (key << 2) | static_cast<std::uint64_t>(f);
    return key;
  }

  static PauliWord from_base4_key(std::uint64_t key, int length) {
    std::vector<PauliFactor> factors(length);
    for (int i = length - 1; i >= 0; --i) {
      factors[i] = static_cast<PauliFactor>(key & 3u);
      key >>= 2;
    }
    return PauliWord(std::move(factors));
  }

  bool is_identity() const {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](PauliFactor f) { return f == PauliFactor::I; });
  }

  friend bool operator==(const PauliWord& a, const PauliWord& b) {
    return a.factors_ == b.factors_;
  }
  friend bool operator<(const PauliWord& a, const PauliWord& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.base4_key() < b.base4_key();
  }

 private:
  std::vector<PauliFactor> factors_;
};

// Group product with phases dropped: factor-wise XOR of the labels.
inline PauliWord mul(const PauliWord& a, const PauliWord& b) {
  if (a.length() != b.length()) throw std::invalid_argument("mul: word lengths differ");
  std::vector<PauliFactor> out(a.length());
  for (int i = 0; i < a.length(); ++i)
    out[i] = static_cast<PauliFactor>(static_cast<std::uint8_t>(a.factor(i)) ^
                                      static_cast<std::uint8_t>(b.factor(i)));
  return PauliWord(std::move(out));
}

inline PauliWord tensor(const PauliWord& a, const PauliWord& b) {
  std::vector<PauliFactor> out = a.factors();
  out.insert(out.end(), b.factors().begin(), b.factors().end());
  return PauliWord(std::move(out));
}

// Kronecker product of the factor matrices, with factor 0 outermost.
inline UnitaryMatrix matrix_of(const PauliWord& w) {
  SquareMatrix m = factor_matrix(w.factor(0));
  for (int i = 1; i < w.length(); ++i) m = kron(m, factor_matrix(w.factor(i)));
  return UnitaryMatrix(std::move(m));
}

// Finite set of equal-length words, closed under mul, holding the identity.
// Elements are kept sorted by base4_key; an element's position in that order
// is the integer it encodes when the group carries classical bits.
class OperatorGroup {
 public:
  static OperatorGroup from_elements(std::vector<PauliWord> elements) {
    if (elements.empty()) throw std::invalid_argument("OperatorGroup: no elements");
    const int len = elements.front().length();
    for (const PauliWord& w : elements)
      if (w.length() != len) throw std::invalid_argument("OperatorGroup: mixed word lengths");
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (!elements.front().is_identity())
      throw std::invalid_argument("OperatorGroup: identity word missing");
    for (std::size_t i = 0; i < elements.size(); ++i)
      for (std::size_t j = i; j < elements.size(); ++j) {
        const PauliWord p = mul(elements[i], elements[j]);
        if (!std::binary_search(elements.begin(), elements.end(), p))
          throw std::invalid_argument("OperatorGroup: not closed under the product (" +
                                      elements[i].str() + " * " + elements[j].str() + " = " +
                                      p.str() + " is missing)");
      }
    return OperatorGroup(std::move(elements));
  }

  // Closure of a generator set. With every element self inverse this is the
  // set of all XOR combinations of the generators.
  static OperatorGroup generate(const std::vector<PauliWord>& generators, int word_length = 0) {
    if (generators.empty()) {
      if (word_length < 1)
        throw std::invalid_argument("OperatorGroup: empty generator set needs a word length");
      return OperatorGroup({PauliWord::identity(word_length)});
    }
    const int len = generators.front().length();
    std::vector<std::uint64_t> keys{0};
    for (const PauliWord& g : generators) {
      if (g.length() != len) throw std::invalid_argument("OperatorGroup: mixed generator lengths");
      const std::uint64_t gk = g.base4_key();
      if (std::find(keys.begin(), keys.end(), gk) != keys.end()) continue;
      const std::size_t old = keys.size();
      keys.reserve(old * 2);
      for (std::size_t i = 0; i < old; ++i) keys.push_back(keys[i] ^ gk);
    }
    std::vector<PauliWord> elements;
    elements.reserve(keys.size());
    for (std::uint64_t k : keys) elements.push_back(PauliWord::from_base4_key(k, len));
    std::sort(elements.begin(), elements.end());
    return OperatorGroup(std::move(elements));
  }

  // Every word of the given length.
  static OperatorGroup full(int word_length) {
    if (word_length < 1 || word_length > 16)
      throw std::invalid_argument("OperatorGroup: unsupported word length");
    std::vector<PauliWord> elements;
    const std::uint64_t count = std::uint64_t{1} << (2 * word_length);
    elements.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k)
      elements.push_back(PauliWord::from_base4_key(k, word_length));
    return OperatorGroup(std::move(elements));
  }

  std::size_t size() const { return elements_.size(); }
  int word_length() const { return elements_.front().length(); }
  const PauliWord& element(std::size_t i) const { return elements_.at(i); }
  const std::vector<PauliWord>& elements() const { return elements_; }

  bool contains(const PauliWord& w) const {
    return w.length() == word_length() &&
           std::binary_search(elements_.begin(), elements_.end(), w);
  }

  std::optional<std::size_t> find(const PauliWord& w) const {
    if (w.length() != word_length()) return std::nullopt;
    const auto it = std::lower_bound(elements_.begin(), elements_.end(), w);
    if (it == elements_.end() || !(*it == w)) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
  }

  std::size_t index_of(const PauliWord& w) const {
    const auto i = find(w);
    if (!i) throw std::out_of_range("OperatorGroup: word " + w.str() + " is not an element");
    return *i;
  }

  friend bool operator==(const OperatorGroup& a, const OperatorGroup& b) {
    return a.elements_ == b.elements_;
  }
  friend bool operator<(const OperatorGroup& a, const OperatorGroup& b) {
    return a.elements_ < b.elements_;
  }

 private:
  explicit OperatorGroup(std::vector<PauliWord> sorted) : elements_(std::move(sorted)) {}
  std::vector<PauliWord> elements_;
};

// True when the candidate set is itself a group and sits inside the group.
inline bool is_subgroup(const std::vector<PauliWord>& candidate, const OperatorGroup& group) {
  if (candidate.empty()) return false;
  std::vector<PauliWord> sorted = candidate;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const PauliWord& w : sorted)
    if (!group.contains(w)) return false;
  if (!sorted.front().is_identity()) return false;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i; j < sorted.size(); ++j)
      if (!std::binary_search(sorted.begin(), sorted.end(), mul(sorted[i], sorted[j])))
        return false;
  return true;
}

inline bool is_subgroup(const OperatorGroup& candidate, const OperatorGroup& group) {
  return is_subgroup(candidate.elements(), group);
}

// Pads every element with trailing identity factors up to the total length.
inline OperatorGroup extend_with_identity(const OperatorGroup& group, int total_length) {
  if (total_length < group.word_length())
    throw std::invalid_argument("extend_with_identity: total length shorter than the words");
  std::vector<PauliWord> out;
  out.reserve(group.size());
  for (const PauliWord& w : group.elements()) {
    if (w.length() == total_length) out.push_back(w);
    else out.push_back(tensor(w, PauliWord::identity(total_length - w.length())));
  }
  return OperatorGroup::from_elements(std::move(out));
}

// Re-coordinates a word between qubit position lists: factor i, attached to
// register qubit at_qubits[i], lands in the output slot j where into_qubits[j]
// equals that qubit; every other output slot carries identity.
inline PauliWord reposition_word(const PauliWord& w, const std::vector<int>& at_qubits,
                                 const std::vector<int>& into_qubits) {
  if (w.length() != static_cast<int>(at_qubits.size()))
    throw std::invalid_argument("reposition_word: word length != position count");
  std::vector<PauliFactor> factors(into_qubits.size(), PauliFactor::I);
  for (int i = 0; i < w.length(); ++i) {
    std::size_t j = 0;
    while (j < into_qubits.size() && into_qubits[j] != at_qubits[i]) ++j;
    if (j == into_qubits.size())
      throw std::invalid_argument("reposition_word: qubit " + std::to_string(at_qubits[i]) +
                                  " is not among the target positions");
    factors[j] = w.factor(i);
  }
  return PauliWord(std::move(factors));
}

// All pairwise tensor products; a group again whenever both inputs are.
inline OperatorGroup tensor_product(const OperatorGroup& a, const OperatorGroup& b) {
  std::vector<PauliWord> out;
  out.reserve(a.size() * b.size());
  for (const PauliWord& wa : a.elements())
    for (const PauliWord& wb : b.elements()) out.push_back(tensor(wa, wb));
  return OperatorGroup::from_elements(std::move(out));
}

namespace detail {

// Reduced F2 basis of the element keys: each basis vector owns a distinct
// pivot bit and is the only vector with that bit set.
struct KeyBasis {
  std::vector<std::uint64_t> rows;
  std::vector<int> pivots;

  void insert(std::uint64_t key) {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if ((key >> pivots[i]) & 1u) key ^= rows[i];
    if (key == 0) return;
    const int pb = std::bit_width(key) - 1;
    for (std::uint64_t& r : rows)
      if ((r >> pb) & 1u) r ^= key;
    rows.push_back(key);
    pivots.push_back(pb);
  }
};

}  // namespace detail

// Every subgroup of the given order, in a deterministic order. Subgroups of
// an XOR-closed set are its F2-subspaces, so they are enumerated as reduced
// row-echelon bases over the coordinates of the containing group.
inline std::vector<OperatorGroup> subgroups_of_order(const OperatorGroup& group,
                                                     std::size_t order) {
  if (order == 0) throw std::invalid_argument("subgroups_of_order: order must be positive");
  if (order == 1)
    return {OperatorGroup::generate({}, group.word_length())};
  if ((order & (order - 1)) != 0 || order > group.size()) return {};

  detail::KeyBasis basis;
  for (const PauliWord& w : group.elements()) basis.insert(w.base4_key());
  const int m = static_cast<int>(basis.rows.size());
  int k = 0;
  while ((std::size_t{1} << k) < order) ++k;
  if (k > m) return {};

  // Fix a deterministic column order for the coordinate space.
  std::vector<std::uint64_t> column_key(m);
  {
    std::vector<std::pair<int, std::uint64_t>> sorted;
    for (int i = 0; i < m; ++i) sorted.emplace_back(basis.pivots[i], basis.rows[i]);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    for (int i = 0; i < m; ++i) column_key[i] = sorted[i].second;
  }

  std::vector<OperatorGroup> out;
  std::vector<int> pivot_cols(k);
  // Iterate over pivot-column combinations p_0 < p_1 < ... < p_{k-1}.
  for (int i = 0; i < k; ++i) pivot_cols[i] = i;
  while (true) {
    std::vector<std::pair<int, int>> free_slots;  // (row, column)
    for (int r = 0; r < k; ++r)
      for (int c = pivot_cols[r] + 1; c < m; ++c)
        if (std::find(pivot_cols.begin(), pivot_cols.end(), c) == pivot_cols.end())
          free_slots.emplace_back(r, c);

    for (std::uint64_t assign = 0; assign < (std::uint64_t{1} << free_slots.size()); ++assign) {
      std::vector<std::uint64_t> row_key(k, 0);
      for (int r = 0; r < k; ++r) row_key[r] = column_key[pivot_cols[r]];
      for (std::size_t s = 0; s < free_slots.size(); ++s)
        if ((assign >> s) & 1u) row_key[free_slots[s].first] ^= column_key[free_slots[s].second];

      std::vector<std::uint64_t> span{0};
      for (int r = 0; r < k; ++r) {
        const std::size_t old = span.size();
        for (std::size_t i = 0; i < old; ++i) span.push_back(span[i] ^ row_key[r]);
      }
      std::vector<PauliWord> elements;
      elements.reserve(span.size());
      for (std::uint64_t key : span)
        elements.push_back(PauliWord::from_base4_key(key, group.word_length()));
      out.push_back(OperatorGroup::from_elements(std::move(elements)));
    }

    int r = k - 1;
    while (r >= 0 && pivot_cols[r] == m - k + r) --r;
    if (r < 0) break;
    ++pivot_cols[r];
    for (int i = r + 1; i < k; ++i) pivot_cols[i] = pivot_cols[i - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Minimal generating set: an F2 basis of the element keys, deterministic
// because elements are inserted in canonical order. Empty for the trivial
// group.
inline std::vector<PauliWord> minimal_generators(const OperatorGroup& group) {
  detail::KeyBasis basis;
  for (const PauliWord& w : group.elements()) basis.insert(w.base4_key());
  std::vector<std::uint64_t> keys = basis.rows;
  std::sort(keys.begin(), keys.end());
  std::vector<PauliWord> out;
  out.reserve(keys.size());
  for (std::uint64_t k : keys) out.push_back(PauliWord::from_base4_key(k, group.word_length()));
  return out;
}

// Named groups used throughout: the full one- to three-qubit groups, the
// three order-2 single-qubit subgroups, and the eleven order-8 two-qubit
// subgroups.
class GroupCatalog {
 public:
  static const GroupCatalog& instance() {
    static const GroupCatalog catalog;
    return catalog;
  }

  const std::vector<std::string>& names() const { return names_; }

  bool has(const std::string& name) const {
    return groups_.count(canonical_name(name)) != 0;
  }

  const OperatorGroup& get(const std::string& name) const {
    const auto it = groups_.find(canonical_name(name));
    if (it == groups_.end())
      throw std::invalid_argument("unknown group '" + name + "'");
    return it->second;
  }

  // Accepts G2_4, G2^4 and G2^4(8) alike for the subgroup names.
  static std::string canonical_name(std::string name) {
    std::string trimmed;
    for (char ch : name)
      if (!std::isspace(static_cast<unsigned char>(ch))) trimmed += ch;
    for (char& ch : trimmed)
      if (ch == '_') ch = '^';
    if (trimmed.rfind("G2^", 0) == 0 && trimmed.find('(') == std::string::npos)
      trimmed += "(8)";
    return trimmed;
  }

 private:
  GroupCatalog() {
    const OperatorGroup g1 = OperatorGroup::generate({PauliWord::parse("X")});
    const OperatorGroup g2 = OperatorGroup::generate({PauliWord::parse("iY")});
    const OperatorGroup g3 = OperatorGroup::generate({PauliWord::parse("Z")});
    const OperatorGroup G1 = OperatorGroup::full(1);

    add("G1", G1);
    add("G2", OperatorGroup::full(2));
    add("G3", OperatorGroup::full(3));
    add("g1", g1);
    add("g2", g2);
    add("g3", g3);
    add("G2^1(8)", tensor_product(G1, g1));
    add("G2^2(8)", tensor_product(G1, g2));
    add("G2^3(8)", tensor_product(G1, g3));
    add("G2^4(8)", tensor_product(g1, G1));
    add("G2^5(8)", tensor_product(g2, G1));
    add("G2^6(8)", tensor_product(g3, G1));
    add("G2^7(8)", listed({"I.I", "I.Z", "Z.I", "Z.Z", "X.X", "iY.X", "X.iY", "iY.iY"}));
    add("G2^8(8)", listed({"I.I", "Z.Z", "X.iY", "iY.X", "I.X", "Z.iY", "iY.I", "X.Z"}));
    add("G2^9(8)", listed({"I.I", "Z.Z", "X.iY", "iY.X", "X.I", "iY.Z", "Z.X", "I.iY"}));
    add("G2^10(8)", listed({"I.I", "X.I", "I.X", "X.X", "Z.Z", "iY.Z", "Z.iY", "iY.iY"}));
    add("G2^11(8)", listed({"I.I", "iY.I", "I.iY", "iY.iY", "Z.Z", "Z.X", "X.Z", "X.X"}));
  }

  static OperatorGroup listed(const std::vector<std::string>& words) {
    std::vector<PauliWord> elements;
    elements.reserve(words.size());
    for (const std::string& w : words) elements.push_back(PauliWord::parse(w));
    return OperatorGroup::from_elements(std::move(elements));
  }

  void add(std::string name, OperatorGroup group) {
    names_.push_back(name);
    groups_.emplace(std::move(name), std::move(group));
  }

  std::vector<std::string> names_;
  std::map<std::string, OperatorGroup> groups_;
};

}  // namespace aqd
