#pragma once

// Dense linear algebra over F_p, used for bases and automorphism matrices.

#include <optional>
#include <vector>

namespace sring::linalg {

using Mat = std::vector<std::vector<int>>;

int inv_mod(int a, int p);
// In-place reduced row echelon form; pivot is the first nonzero column.
// Zero rows are dropped. Returns the rank.
int rref(Mat& rows, int p);
std::optional<Mat> inverse(Mat m, int p);
Mat multiply(const Mat& a, const Mat& b, int p);
Mat identity(int n);

}  // namespace sring::linalg
