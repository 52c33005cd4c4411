#include "sring/linalg.hpp"

#include <utility>

namespace sring::linalg {

int inv_mod(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  for (int x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  return 0;
}

int rref(Mat& rows, int p) {
  if (rows.empty()) return 0;
  const int ncols = static_cast<int>(rows[0].size());
  int r = 0;
  for (int c = 0; c < ncols && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][c] % p != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    int s = inv_mod(rows[r][c], p);
    for (auto& x : rows[r]) x = (x % p + p) % p * s % p;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || rows[i][c] % p == 0) continue;
      int f = (rows[i][c] % p + p) % p;
      for (int k = 0; k < ncols; ++k) rows[i][k] = ((rows[i][k] - f * rows[r][k]) % p + p) % p;
    }
    ++r;
  }
  rows.resize(r);
  return r;
}

std::optional<Mat> inverse(Mat m, int p) {
  const int n = static_cast<int>(m.size());
  for (int i = 0; i < n; ++i) {
    m[i].resize(2 * n, 0);
    m[i][n + i] = 1;
  }
  Mat work = m;
  if (rref(work, p) != n) return std::nullopt;
  for (int i = 0; i < n; ++i)
    if (work[i][i] != 1) return std::nullopt;
  Mat out(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = work[i][n + j];
  return out;
}

Mat multiply(const Mat& a, const Mat& b, int p) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Mat out(n, std::vector<int>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      long s = 0;
      for (std::size_t t = 0; t < k; ++t) s += static_cast<long>(a[i][t]) * b[t][j];
      out[i][j] = static_cast<int>((s % p + p) % p);
    }
  return out;
}

Mat identity(int n) {
  Mat out(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

}  // namespace sring::linalg
