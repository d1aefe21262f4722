#pragma once

#include <cstddef>
#include <cstdint>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace chaosint {

/// A multi-index alpha = (alpha_1, alpha_2, ...) with finite support, stored
/// sparsely as strictly increasing (position, value) pairs with value >= 1.
/// Positions are 1-based, matching the mode numbering of the basis m_k.
class MultiIndex {
 public:
  using Entry = std::pair<std::uint32_t, std::uint32_t>;

  MultiIndex() = default;

  /// Builds from arbitrary (position, value) pairs; zero values are dropped,
  /// positions must be >= 1 and distinct.
  static MultiIndex from_entries(std::vector<Entry> entries);
  /// Dense form: dense[0] is alpha_1.
  static MultiIndex from_dense(std::span<const std::uint32_t> dense);
  /// epsilon_k scaled by n: the index with alpha_k = n and zeros elsewhere.
  static MultiIndex unit(std::uint32_t k, std::uint32_t n = 1);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool is_zero() const noexcept { return entries_.empty(); }
  std::uint32_t at(std::uint32_t k) const noexcept;
  /// Largest position with a non-zero entry, 0 for the zero index.
  std::uint32_t max_position() const noexcept;
  std::uint32_t order() const noexcept { return order_; }

  std::vector<std::uint32_t> to_dense(std::size_t modes) const;
  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  explicit MultiIndex(std::vector<Entry> canonical);

  std::vector<Entry> entries_;
  std::uint32_t order_ = 0;
};

/// |alpha| = sum of entries.
inline std::uint32_t mi_order(const MultiIndex& a) { return a.order(); }

/// log sqrt(alpha!) = (1/2) sum_k log(alpha_k!).
double mi_factorial_sqrt_log(const MultiIndex& a);

MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b);
MultiIndex mi_add_eps(const MultiIndex& a, std::uint32_t k);
/// alpha - epsilon_k, or nullopt when alpha_k == 0.
std::optional<MultiIndex> mi_sub_eps(const MultiIndex& a, std::uint32_t k);

/// Graded order: by |alpha|, then by (alpha_1, alpha_2, ...) descending, so
/// that epsilon_1 precedes epsilon_2 and 2 epsilon_1 precedes epsilon_1 + epsilon_2.
std::strong_ordering graded_compare(const MultiIndex& a, const MultiIndex& b);

struct GradedLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return graded_compare(a, b) < 0;
  }
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& a) const noexcept;
};

/// The finite index set I(K, N) = { alpha : support in {1..K}, |alpha| <= N }.
struct Truncation {
  std::uint32_t modes = 1;      // K
  std::uint32_t max_order = 0;  // N

  /// binomial(N + K, K).
  std::size_t size() const;
  bool contains(const MultiIndex& a) const noexcept {
    return a.order() <= max_order && a.max_position() <= modes;
  }
  Truncation with_order(std::uint32_t n) const { return {modes, n}; }

  friend bool operator==(const Truncation&, const Truncation&) = default;
};

/// All of I(K, N) in graded order (see graded_compare).
std::vector<MultiIndex> enumerate_multiindices(const Truncation& trunc);

/// Dense layout of a truncation: position of each multi-index in the graded
/// enumeration, plus the offsets of each order shell.
class IndexSet {
 public:
  explicit IndexSet(const Truncation& trunc);

  const Truncation& truncation() const noexcept { return trunc_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
  /// Position of alpha, or nullopt when alpha is outside the truncation.
  std::optional<std::size_t> find(const MultiIndex& a) const;
  /// Half-open range [begin, end) of the shell |alpha| = n.
  std::pair<std::size_t, std::size_t> shell(std::uint32_t n) const;

  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

 private:
  Truncation trunc_;
  std::vector<MultiIndex> indices_;
  std::vector<std::size_t> shell_offsets_;
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> lookup_;
};

}  // namespace chaosint
