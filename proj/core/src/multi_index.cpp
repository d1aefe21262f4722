#include "chaosint/multi_index.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "chaosint/errors.hpp"

namespace chaosint {

MultiIndex::MultiIndex(std::vector<Entry> canonical) : entries_(std::move(canonical)) {
  for (const auto& [k, v] : entries_) order_ += v;
}

MultiIndex MultiIndex::from_entries(std::vector<Entry> entries) {
  std::erase_if(entries, [](const Entry& e) { return e.second == 0; });
  std::sort(entries.begin(), entries.end());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first == 0) throw DomainError("multi-index positions are 1-based");
    if (i > 0 && entries[i].first == entries[i - 1].first)
      throw DomainError("duplicate multi-index position " + std::to_string(entries[i].first));
  }
  return MultiIndex(std::move(entries));
}

MultiIndex MultiIndex::from_dense(std::span<const std::uint32_t> dense) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) entries.emplace_back(static_cast<std::uint32_t>(i + 1), dense[i]);
  return MultiIndex(std::move(entries));
}

MultiIndex MultiIndex::unit(std::uint32_t k, std::uint32_t n) {
  if (k == 0) throw DomainError("multi-index positions are 1-based");
  if (n == 0) return MultiIndex();
  return MultiIndex({{k, n}});
}

std::uint32_t MultiIndex::at(std::uint32_t k) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                             [](const Entry& e, std::uint32_t pos) { return e.first < pos; });
  return (it != entries_.end() && it->first == k) ? it->second : 0;
}

std::uint32_t MultiIndex::max_position() const noexcept {
  return entries_.empty() ? 0 : entries_.back().first;
}

std::vector<std::uint32_t> MultiIndex::to_dense(std::size_t modes) const {
  if (max_position() > modes) throw DimensionError("multi-index support exceeds requested length");
  std::vector<std::uint32_t> dense(modes, 0);
  for (const auto& [k, v] : entries_) dense[k - 1] = v;
  return dense;
}

std::string MultiIndex::to_string() const {
  if (entries_.empty()) return "0";
  std::string out;
  for (const auto& [k, v] : entries_) {
    if (!out.empty()) out += '+';
    if (v != 1) out += std::to_string(v);
    out += "e" + std::to_string(k);
  }
  return out;
}

double mi_factorial_sqrt_log(const MultiIndex& a) {
  double s = 0.0;
  for (const auto& [k, v] : a.entries()) s += std::lgamma(static_cast<double>(v) + 1.0);
  return 0.5 * s;
}

MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
  std::vector<MultiIndex::Entry> out;
  out.reserve(a.entries().size() + b.entries().size());
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() || ib != b.entries().end()) {
    if (ib == b.entries().end() || (ia != a.entries().end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.entries().end() || ib->first < ia->first) {
      out.push_back(*ib++);
    } else {
      out.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  return MultiIndex::from_entries(std::move(out));
}

MultiIndex mi_add_eps(const MultiIndex& a, std::uint32_t k) { return mi_add(a, MultiIndex::unit(k)); }

std::optional<MultiIndex> mi_sub_eps(const MultiIndex& a, std::uint32_t k) {
  if (a.at(k) == 0) return std::nullopt;
  auto entries = a.entries();
  for (auto& e : entries)
    if (e.first == k) --e.second;
  return MultiIndex::from_entries(std::move(entries));
}

std::strong_ordering graded_compare(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.order() <=> b.order(); c != 0) return c;
  // Walk both sparse lists; the first position where the dense forms differ
  // decides, larger value first.
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() && ib != b.entries().end()) {
    if (ia->first != ib->first) {
      // The one with the smaller position has a non-zero entry where the
      // other has zero there, so it comes first.
      return ia->first < ib->first ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (ia->second != ib->second)
      return ia->second > ib->second ? std::strong_ordering::less : std::strong_ordering::greater;
    ++ia;
    ++ib;
  }
  // Equal orders and a common prefix imply both lists ended together.
  return std::strong_ordering::equal;
}

std::size_t MultiIndexHash::operator()(const MultiIndex& a) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& [k, v] : a.entries()) {
    h ^= std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(k) << 32) | v) + 0x9e3779b97f4a7c15ull +
         (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t Truncation::size() const {
  // binomial(N + K, min(N, K)) by the multiplicative formula, exact in integers.
  const std::uint64_t n = static_cast<std::uint64_t>(max_order) + modes;
  const std::uint64_t r = std::min<std::uint64_t>(max_order, modes);
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return static_cast<std::size_t>(c);
}

namespace {

// Compositions of `remaining` into positions pos..modes, first entry largest first.
void enumerate_shell(std::uint32_t pos, std::uint32_t modes, std::uint32_t remaining,
                     std::vector<std::uint32_t>& dense, std::vector<MultiIndex>& out) {
  if (pos == modes) {
    dense[pos - 1] = remaining;
    out.push_back(MultiIndex::from_dense(dense));
    dense[pos - 1] = 0;
    return;
  }
  for (std::uint32_t v = remaining + 1; v-- > 0;) {
    dense[pos - 1] = v;
    enumerate_shell(pos + 1, modes, remaining - v, dense, out);
  }
  dense[pos - 1] = 0;
}

}  // namespace

std::vector<MultiIndex> enumerate_multiindices(const Truncation& trunc) {
  if (trunc.modes == 0) throw ConfigError("truncation needs at least one mode");
  std::vector<MultiIndex> out;
  out.reserve(trunc.size());
  std::vector<std::uint32_t> dense(trunc.modes, 0);
  for (std::uint32_t n = 0; n <= trunc.max_order; ++n) enumerate_shell(1, trunc.modes, n, dense, out);
  return out;
}

IndexSet::IndexSet(const Truncation& trunc) : trunc_(trunc), indices_(enumerate_multiindices(trunc)) {
  lookup_.reserve(indices_.size());
  shell_offsets_.assign(trunc.max_order + 2, indices_.size());
  for (std::size_t i = indices_.size(); i-- > 0;) shell_offsets_[indices_[i].order()] = i;
  for (std::size_t i = 0; i < indices_.size(); ++i) lookup_.emplace(indices_[i], i);
}

std::optional<std::size_t> IndexSet::find(const MultiIndex& a) const {
  auto it = lookup_.find(a);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::pair<std::size_t, std::size_t> IndexSet::shell(std::uint32_t n) const {
  if (n > trunc_.max_order) return {indices_.size(), indices_.size()};
  return {shell_offsets_[n], shell_offsets_[n + 1]};
}

}  // namespace chaosint
