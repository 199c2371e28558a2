#include <vector>

#include "bicount/bigcount.hpp"

namespace bicount {
namespace {

constexpr std::int64_t kTableRows = 128;

// Pascal rows 0..kTableRows-1, row n holding C(n, 0..n).
const std::vector<std::vector<BigCount>>& pascal_table() {
  static const std::vector<std::vector<BigCount>> table = [] {
    std::vector<std::vector<BigCount>> rows(kTableRows);
    for (std::int64_t n = 0; n < kTableRows; ++n) {
      rows[n].resize(n + 1);
      rows[n][0] = rows[n][n] = 1;
      for (std::int64_t k = 1; k < n; ++k) rows[n][k] = rows[n - 1][k - 1] + rows[n - 1][k];
    }
    return rows;
  }();
  return table;
}

}  // namespace

BigCount binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n < kTableRows) return pascal_table()[n][k];
  if (k > n - k) k = n - k;
  // Each partial product C(n-k+i, i) is an integer, so the division is exact.
  BigCount result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

}  // namespace bicount
