#include "pfrec/core.hpp"

#include <algorithm>

namespace pfrec {

IndexSet::IndexSet(Index n, std::vector<Index> indices)
    : n_(n), indices_(std::move(indices)) {
  if (n < 0) throw InvalidArgument("IndexSet: negative ambient size");
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    const Index k = indices_[i];
    if (k < 0 || k >= n) {
      throw InvalidArgument("IndexSet: index " + std::to_string(k) + " outside [0, " +
                            std::to_string(n) + ")");
    }
    if (i > 0 && indices_[i - 1] >= k) {
      throw InvalidArgument("IndexSet: indices must be strictly increasing");
    }
  }
}

IndexSet IndexSet::from_unsorted(Index n, std::vector<Index> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return IndexSet(n, std::move(indices));
}

IndexSet IndexSet::full(Index n) {
  std::vector<Index> idx(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) idx[static_cast<std::size_t>(k)] = k;
  return IndexSet(n, std::move(idx));
}

IndexSet IndexSet::empty(Index n) { return IndexSet(n, {}); }

bool IndexSet::contains(Index k) const {
  return std::binary_search(indices_.begin(), indices_.end(), k);
}

IndexSet IndexSet::complement() const {
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(n_ - size()));
  auto it = indices_.begin();
  for (Index k = 0; k < n_; ++k) {
    if (it != indices_.end() && *it == k) {
      ++it;
    } else {
      out.push_back(k);
    }
  }
  return IndexSet(n_, std::move(out));
}

std::vector<bool> IndexSet::mask() const {
  std::vector<bool> m(static_cast<std::size_t>(n_), false);
  for (Index k : indices_) m[static_cast<std::size_t>(k)] = true;
  return m;
}

} // namespace pfrec
