#pragma once

// Brute-force enumeration of multi-indices beta in N^n with |beta| <= L.

#include <numeric>
#include <vector>

namespace oracle {

inline std::vector<std::vector<int>> multi_indices(int n, int max_level) {
  std::vector<std::vector<int>> out;
  std::vector<int> beta(n, 0);
  while (true) {
    if (std::accumulate(beta.begin(), beta.end(), 0) <= max_level) out.push_back(beta);
    int slot = 0;
    while (slot < n && ++beta[slot] > max_level) beta[slot++] = 0;
    if (slot == n) break;
  }
  return out;
}

inline int count_level(int n, int level) {
  int count = 0;
  for (const auto& beta : multi_indices(n, level)) count += std::accumulate(beta.begin(), beta.end(), 0) == level;
  return count;
}

}  // namespace oracle
