#pragma once

#include <vector>

namespace lig::detail {

// Calls fn for each size-k subset of {0..n-1} in lexicographic order until
// fn returns true; returns whether any call did.
template <typename Fn>
bool for_each_subset_of_size(int n, int k, Fn&& fn) {
  if (k > n || k < 0) return false;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (fn(static_cast<const std::vector<int>&>(idx))) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace lig::detail
