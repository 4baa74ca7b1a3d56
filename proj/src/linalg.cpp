#include "cuspforge/linalg.hpp"

#include <stdexcept>

namespace cf {

RowSpace::RowSpace(std::vector<RatVec> rows, int cols) : cols_(cols) {
  int r = 0;
  int m = static_cast<int>(rows.size());
  for (int c = 0; c < cols && r < m; ++c) {
    int piv = -1;
    for (int i = r; i < m; ++i)
      if (rows[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    Rat inv = 1 / rows[r][c];
    for (int j = c; j < cols; ++j)
      if (rows[r][j] != 0) rows[r][j] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rat f = rows[i][c];
      for (int j = c; j < cols; ++j)
        if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
    }
    pivots_.push_back(c);
    ++r;
  }
  rows.resize(r);
  rows_ = std::move(rows);
}

std::vector<int> RowSpace::free_columns() const {
  std::vector<char> is_piv(cols_, 0);
  for (int p : pivots_) is_piv[p] = 1;
  std::vector<int> f;
  for (int c = 0; c < cols_; ++c)
    if (!is_piv[c]) f.push_back(c);
  return f;
}

void RowSpace::reduce(RatVec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("RowSpace::reduce: size");
  for (size_t i = 0; i < rows_.size(); ++i) {
    int p = pivots_[i];
    if (v[p] == 0) continue;
    Rat f = v[p];
    for (int j = 0; j < cols_; ++j)
      if (rows_[i][j] != 0) v[j] -= f * rows_[i][j];
  }
}

bool RowSpace::contains(const RatVec& v) const {
  RatVec w = v;
  reduce(w);
  for (const auto& x : w)
    if (x != 0) return false;
  return true;
}

int rank_of(const std::vector<RatVec>& rows, int cols) { return RowSpace(rows, cols).rank(); }

std::vector<RatVec> kernel_of(const std::vector<RatVec>& rows, int cols) {
  RowSpace rs(rows, cols);
  std::vector<RatVec> ker;
  const auto& piv = rs.pivots();
  for (int f : rs.free_columns()) {
    RatVec x(cols, Rat(0));
    x[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = -rs.basis()[i][f];
    ker.push_back(std::move(x));
  }
  return ker;
}

std::vector<RatVec> transpose(const std::vector<RatVec>& rows, int cols) {
  std::vector<RatVec> t(cols, RatVec(rows.size(), Rat(0)));
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < cols; ++j) t[j][i] = rows[i][j];
  return t;
}

bool same_span(const std::vector<RatVec>& a, const std::vector<RatVec>& b, int cols) {
  RowSpace ra(a, cols), rb(b, cols);
  if (ra.rank() != rb.rank()) return false;
  for (const auto& v : b)
    if (!ra.contains(v)) return false;
  return true;
}

}  // namespace cf
