#include "cuspforge/smith.hpp"

#include "cuspforge/linalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cf {

void IntMatrix::add_row(std::string label, std::vector<Int> row) {
  if (static_cast<int>(row.size()) != cols()) throw std::invalid_argument("IntMatrix::add_row: width mismatch");
  row_labels.push_back(std::move(label));
  a.push_back(std::move(row));
}

std::string IntMatrix::to_csv() const {
  std::ostringstream os;
  os << "row";
  for (const auto& c : col_labels) os << "," << c;
  os << "\n";
  for (int i = 0; i < rows(); ++i) {
    os << row_labels[i];
    for (const auto& x : a[i]) os << "," << x;
    os << "\n";
  }
  return os.str();
}

IntMat int_identity(int n) {
  IntMat m(n, std::vector<Int>(n, Int(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMat int_multiply(const IntMat& x, const IntMat& y) {
  if (x.empty()) return {};
  size_t inner = x[0].size();
  if (inner != y.size()) throw std::invalid_argument("int_multiply: shape mismatch");
  size_t cols = y.empty() ? 0 : y[0].size();
  IntMat r(x.size(), std::vector<Int>(cols, Int(0)));
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t k = 0; k < inner; ++k) {
      if (x[i][k] == 0) continue;
      for (size_t j = 0; j < cols; ++j)
        if (y[k][j] != 0) r[i][j] += x[i][k] * y[k][j];
    }
  return r;
}

Int int_determinant(IntMat m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

struct SnfWork {
  IntMat D, U, V;
  int rows, cols;
  bool track;

  void swap_rows(int i, int j) {
    if (i == j) return;
    std::swap(D[i], D[j]);
    if (track) std::swap(U[i], U[j]);
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (auto& r : D) std::swap(r[i], r[j]);
    if (track)
      for (auto& r : V) std::swap(r[i], r[j]);
  }
  // row_i -= q * row_j
  void add_row(int i, int j, const Int& q) {
    for (int c = 0; c < cols; ++c)
      if (D[j][c] != 0) D[i][c] -= q * D[j][c];
    if (track)
      for (int c = 0; c < rows; ++c)
        if (U[j][c] != 0) U[i][c] -= q * U[j][c];
  }
  // col_i -= q * col_j
  void add_col(int i, int j, const Int& q) {
    for (int r = 0; r < rows; ++r)
      if (D[r][j] != 0) D[r][i] -= q * D[r][j];
    if (track)
      for (int r = 0; r < cols; ++r)
        if (V[r][j] != 0) V[r][i] -= q * V[r][j];
  }
  void negate_row(int i) {
    for (auto& x : D[i]) x = -x;
    if (track)
      for (auto& x : U[i]) x = -x;
  }
};

}  // namespace

SmithResult smith_normal_form(const IntMat& M, int cols, bool track) {
  SnfWork w;
  w.rows = static_cast<int>(M.size());
  w.cols = cols;
  w.track = track;
  w.D = M;
  for (const auto& r : w.D)
    if (static_cast<int>(r.size()) != cols) throw std::invalid_argument("smith_normal_form: ragged matrix");
  if (track) {
    w.U = int_identity(w.rows);
    w.V = int_identity(cols);
  }
  auto& D = w.D;
  int lim = std::min(w.rows, cols);
  int t = 0;
  for (; t < lim; ++t) {
    int pi = -1, pj = -1;
    for (int i = t; i < w.rows; ++i)
      for (int j = t; j < cols; ++j)
        if (D[i][j] != 0 && (pi < 0 || abs(D[i][j]) < abs(D[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);
    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < w.rows; ++i) {
        if (D[i][t] == 0) continue;
        w.add_row(i, t, floor_div(D[i][t], D[t][t]));
        if (D[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        if (D[t][j] == 0) continue;
        w.add_col(j, t, floor_div(D[t][j], D[t][t]));
        if (D[t][j] != 0) clean = false;
      }
      if (!clean) {
        // bring the smallest remainder in row t / column t to the pivot
        int bi = t, bj = t;
        for (int i = t + 1; i < w.rows; ++i)
          if (D[i][t] != 0 && abs(D[i][t]) < abs(D[bi][bj])) {
            bi = i;
            bj = t;
          }
        for (int j = t + 1; j < cols; ++j)
          if (D[t][j] != 0 && abs(D[t][j]) < abs(D[bi][bj])) {
            bi = t;
            bj = j;
          }
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        continue;
      }
      int bad = -1;
      for (int i = t + 1; i < w.rows && bad < 0; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (D[i][j] % D[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      w.add_row(t, bad, Int(-1));
    }
    if (D[t][t] < 0) w.negate_row(t);
  }
  SmithResult res;
  for (int i = 0; i < t; ++i) res.diag.push_back(D[i][i]);
  res.D = std::move(w.D);
  res.U = std::move(w.U);
  res.V = std::move(w.V);
  return res;
}

Int AbelianStructure::torsion_order() const {
  Int o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

std::vector<Int> AbelianStructure::elementary_divisors() const {
  std::vector<Int> out;
  for (Int d : invariant_factors) {
    for (Int p = 2; p * p <= d; ++p) {
      if (d % p != 0) continue;
      Int q = 1;
      while (d % p == 0) {
        d /= p;
        q *= p;
      }
      out.push_back(q);
    }
    if (d > 1) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string AbelianStructure::to_string() const {
  std::ostringstream os;
  std::map<Int, int> counts;
  std::vector<Int> order;
  for (const auto& d : invariant_factors) {
    if (!counts.count(d)) order.push_back(d);
    ++counts[d];
  }
  bool first = true;
  for (const auto& d : order) {
    if (!first) os << " x ";
    os << "(Z/" << d << ")";
    if (counts[d] > 1) os << "^" << counts[d];
    first = false;
  }
  if (free_rank > 0) {
    if (!first) os << " x ";
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

AbelianStructure cyclic_power(const Int& d, int k) {
  AbelianStructure a;
  if (d > 1) a.invariant_factors.assign(k, d);
  if (d == 0) a.free_rank = k;
  return a;
}

AbelianStructure cokernel(const IntMat& relations, int cols) {
  auto snf = smith_normal_form(relations, cols, false);
  AbelianStructure a;
  a.free_rank = cols - static_cast<int>(snf.diag.size());
  for (const auto& d : snf.diag)
    if (d > 1) a.invariant_factors.push_back(d);
  return a;
}

namespace {

// Lattice L1 = image of Z^n, L2 = L1 + <gens>, both in coordinates of
// Q^n / span_Q(span). Returns the presentation matrix of L2 / L1.
IntMat quotient_presentation(const std::vector<RatVec>& gens, const std::vector<RatVec>& span, int n, int& m) {
  RowSpace rs(span, n);
  std::vector<int> fc = rs.free_columns();
  m = static_cast<int>(fc.size());
  auto project = [&](RatVec v) {
    rs.reduce(v);
    RatVec p(m);
    for (int i = 0; i < m; ++i) p[i] = v[fc[i]];
    return p;
  };
  std::vector<RatVec> l1, all;
  for (int i = 0; i < n; ++i) {
    RatVec e(n, Rat(0));
    e[i] = 1;
    l1.push_back(project(e));
  }
  all = l1;
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != n) throw std::invalid_argument("qz_subgroup: vector size");
    all.push_back(project(g));
  }
  Int D = 1;
  for (const auto& v : all)
    for (const auto& x : v) D = lcm_int(D, den(x));
  auto scale = [&](const std::vector<RatVec>& rows) {
    IntMat r;
    for (const auto& v : rows) {
      std::vector<Int> iv(m);
      for (int i = 0; i < m; ++i) iv[i] = num(v[i] * D);
      r.push_back(std::move(iv));
    }
    return r;
  };
  IntMat M1 = scale(l1), M2 = scale(all);
  // L2 has basis rows diag(d) * V^{-1}; coordinates of L1 in that basis are M1 V diag(1/d).
  auto snf = smith_normal_form(M2, m, true);
  if (static_cast<int>(snf.diag.size()) != m) throw std::logic_error("qz_subgroup: lattice not full rank");
  IntMat X = int_multiply(M1, snf.V);
  for (auto& row : X)
    for (int j = 0; j < m; ++j) {
      if (row[j] % snf.diag[j] != 0) throw std::logic_error("qz_subgroup: non-integral change of basis");
      row[j] /= snf.diag[j];
    }
  return X;
}

}  // namespace

AbelianStructure qz_subgroup(const std::vector<RatVec>& gens, int n) { return qz_subgroup_mod(gens, {}, n); }

AbelianStructure qz_subgroup_mod(const std::vector<RatVec>& gens, const std::vector<RatVec>& span, int n) {
  int m = 0;
  IntMat X = quotient_presentation(gens, span, n, m);
  return cokernel(X, m);
}

Int qz_order_mod(const RatVec& v, const std::vector<RatVec>& span, int n) {
  return qz_subgroup_mod({v}, span, n).torsion_order();
}

}  // namespace cf
