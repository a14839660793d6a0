#include "dfo/lp.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace dfo {

const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "?";
}

namespace {

constexpr double kTolCost = 1e-9;   // reduced-cost optimality threshold
constexpr double kTolPivot = 1e-9;  // smallest acceptable pivot element
constexpr double kTolFeas = 1e-9;   // phase-1 objective threshold (rows scaled)

// min c'x s.t. Ax = b, x >= 0, solved by the revised simplex with an
// explicit basis inverse, refactored periodically.
class StandardSimplex {
 public:
  StandardSimplex(Matrix A, Vector b, Vector c, int pivot_cap)
      : A_(std::move(A)), b_(std::move(b)), c_(std::move(c)), cap_(pivot_cap) {}

  int rows() const { return static_cast<int>(A_.rows()); }
  int cols() const { return static_cast<int>(A_.cols()); }

  // Phase 1: append artificial columns, minimize their sum.
  LpStatus phase1() {
    const int m = rows(), nc = cols();
    Matrix A1(m, nc + m);
    A1.leftCols(nc) = A_;
    A1.rightCols(m) = Matrix::Identity(m, m);
    Vector c1 = Vector::Zero(nc + m);
    c1.tail(m).setOnes();

    basis_.resize(m);
    in_basis_.assign(nc + m, 0);
    for (int i = 0; i < m; ++i) {
      basis_[i] = nc + i;
      in_basis_[nc + i] = 1;
    }
    binv_ = Matrix::Identity(m, m);

    const LpStatus st = iterate(A1, c1, nc);
    if (st != LpStatus::Optimal) return st == LpStatus::Unbounded ? LpStatus::IterationLimit : st;
    double infeas = 0.0;
    const Vector xb = binv_ * b_;
    for (int i = 0; i < m; ++i)
      if (basis_[i] >= nc) infeas += std::max(xb[i], 0.0);
    const double bscale = m > 0 ? b_.cwiseAbs().maxCoeff() : 0.0;
    if (infeas > kTolFeas * std::max(1.0, bscale)) return LpStatus::Infeasible;

    // Drive artificial variables out of the basis; rows whose tableau row
    // has no usable structural pivot are numerically redundant and dropped.
    std::vector<int> drop_rows;
    for (int r = 0; r < m; ++r) {
      if (basis_[r] < nc) continue;
      const Eigen::RowVectorXd row = binv_.row(r) * A_;
      int enter = -1;
      for (int j = 0; j < nc; ++j) {
        if (std::abs(row[j]) > 1e-7 && !in_basis_[j]) {
          enter = j;
          break;
        }
      }
      if (enter >= 0) {
        const Vector w = binv_ * A_.col(enter);
        pivot(w, r, enter);
      } else {
        drop_rows.push_back(r);
      }
    }
    if (!drop_rows.empty()) compress_rows(drop_rows);
    return LpStatus::Optimal;
  }

  LpStatus phase2() { return iterate(A_, c_, cols()); }

  Vector solution() const {
    Vector x = Vector::Zero(cols());
    const Vector xb = binv_ * b_;
    for (int i = 0; i < rows(); ++i)
      if (basis_[i] < cols()) x[basis_[i]] = xb[i];
    return x;
  }

  int pivots() const { return pivots_; }

 private:
  // structural_cols: columns beyond this index are phase-1 artificials.
  // They never re-enter the basis, leave preferentially on ratio ties, and
  // the phase ends as soon as the infeasibility objective reaches zero.
  LpStatus iterate(const Matrix& A, const Vector& c, int structural_cols) {
    const int m = static_cast<int>(A.rows());
    const int nc = static_cast<int>(A.cols());
    const bool phase1 = structural_cols < nc;
    double prev_obj = kInf;
    int stalled = 0;
    int bland_left = 0;  // remaining pivots of an anti-cycling stint

    while (true) {
      if (pivots_ >= cap_) return LpStatus::IterationLimit;

      const Vector xb = binv_ * b_;
      Vector cb(m);
      for (int i = 0; i < m; ++i) cb[i] = c[basis_[i]];
      const double obj = xb.dot(cb);
      if (phase1 && obj <= kTolFeas) return LpStatus::Optimal;
      if (obj < prev_obj - 1e-12 * std::max(1.0, std::abs(prev_obj))) {
        stalled = 0;
        prev_obj = obj;
      } else if (++stalled > 8 * std::max(m, 16) && bland_left == 0) {
        bland_left = 2 * std::max(m, 16);  // temporary Bland stint breaks ties
        stalled = 0;
      }
      const bool bland = bland_left > 0;
      if (bland) --bland_left;

      const Vector y = binv_.transpose() * cb;
      int enter = -1;
      double best = -kTolCost;
      for (int j = 0; j < structural_cols; ++j) {
        if (in_basis_[j]) continue;
        const double d = c[j] - A.col(j).dot(y);
        if (bland) {
          if (d < -kTolCost) { enter = j; break; }
        } else if (d < best) {
          best = d;
          enter = j;
        }
      }
      if (enter < 0) return LpStatus::Optimal;

      const Vector w = binv_ * A.col(enter);
      int leave = -1;
      double best_ratio = kInf, best_piv = 0.0;
      for (int i = 0; i < m; ++i) {
        if (w[i] > kTolPivot) {
          const double ratio = std::max(xb[i], 0.0) / w[i];
          bool better;
          if (leave < 0 || ratio < best_ratio * (1.0 - 1e-10)) {
            better = true;
          } else if (ratio <= best_ratio * (1.0 + 1e-10)) {
            if (bland) {
              better = basis_[i] < basis_[leave];
            } else {
              // prefer kicking artificials out, then the larger pivot
              const bool art_i = basis_[i] >= structural_cols;
              const bool art_l = basis_[leave] >= structural_cols;
              better = art_i != art_l ? art_i : w[i] > best_piv;
            }
          } else {
            better = false;
          }
          if (better) {
            leave = i;
            best_ratio = ratio;
            best_piv = w[i];
          }
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      pivot(w, leave, enter);
      if (pivots_ % 64 == 0 && !refactor(A)) return LpStatus::IterationLimit;
    }
  }

  void pivot(const Vector& w, int r, int enter) {
    in_basis_[basis_[r]] = 0;
    in_basis_[enter] = 1;
    basis_[r] = enter;
    binv_.row(r) /= w[r];
    for (int i = 0; i < binv_.rows(); ++i)
      if (i != r) binv_.row(i) -= w[i] * binv_.row(r);
    ++pivots_;
  }

  bool refactor(const Matrix& A) {
    const int m = rows();
    Matrix B(m, m);
    for (int i = 0; i < m; ++i) {
      if (basis_[i] < A.cols())
        B.col(i) = A.col(basis_[i]);
      else
        B.col(i) = Vector::Unit(m, basis_[i] - static_cast<int>(A.cols()));
    }
    Eigen::FullPivLU<Matrix> lu(B);
    if (!lu.isInvertible()) return false;
    binv_ = lu.inverse();
    return true;
  }

  void compress_rows(const std::vector<int>& drop) {
    const int m = rows();
    std::vector<int> keep;
    for (int i = 0; i < m; ++i)
      if (std::find(drop.begin(), drop.end(), i) == drop.end()) keep.push_back(i);
    const int m2 = static_cast<int>(keep.size());
    Matrix A2(m2, cols());
    Vector b2(m2);
    std::vector<int> basis2(m2);
    for (int i = 0; i < m2; ++i) {
      A2.row(i) = A_.row(keep[i]);
      b2[i] = b_[keep[i]];
      basis2[i] = basis_[keep[i]];
    }
    A_ = std::move(A2);
    b_ = std::move(b2);
    basis_ = std::move(basis2);
    Matrix B(m2, m2);
    for (int i = 0; i < m2; ++i) B.col(i) = A_.col(basis_[i]);
    binv_ = B.partialPivLu().inverse();
  }

  Matrix A_;
  Vector b_;
  Vector c_;
  Matrix binv_;
  std::vector<int> basis_;
  std::vector<char> in_basis_;
  int pivots_ = 0;
  int cap_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
  const int nv = p.cols();
  const int me = static_cast<int>(p.A_eq.rows());
  const int mu = static_cast<int>(p.A_ub.rows());
  const Vector lower = p.lower.size() == nv ? p.lower : Vector::Zero(nv);
  const Vector upper = p.upper.size() == nv ? p.upper : Vector::Constant(nv, kInf);

  LpSolution sol;
  for (int j = 0; j < nv; ++j)
    if (lower[j] > upper[j]) return sol;  // Infeasible

  // Column map to standard (nonnegative) variables:
  //   free          -> x = s+ - s-
  //   lower finite  -> x = lo + s
  //   upper only    -> x = up - s
  struct ColMap {
    int col;        // first standard column
    bool split;     // free variable, two columns
    bool negated;   // x = up - s
    double offset;  // lo or up
  };
  std::vector<ColMap> cmap(nv);
  int ns = 0;
  int extra_ub = 0;  // box rows for doubly bounded variables
  for (int j = 0; j < nv; ++j) {
    const bool lo_fin = std::isfinite(lower[j]);
    const bool up_fin = std::isfinite(upper[j]);
    if (!lo_fin && !up_fin) {
      cmap[j] = {ns, true, false, 0.0};
      ns += 2;
    } else if (lo_fin) {
      cmap[j] = {ns, false, false, lower[j]};
      ns += 1;
      if (up_fin) ++extra_ub;
    } else {
      cmap[j] = {ns, false, true, upper[j]};
      ns += 1;
    }
  }

  const int m_ub = mu + extra_ub;
  const int m = me + m_ub;
  const int nc = ns + m_ub;  // slacks for all inequality rows
  Matrix A = Matrix::Zero(m, nc);
  Vector b(m);
  Vector c = Vector::Zero(nc);

  auto scatter_row = [&](int row, const Eigen::RowVectorXd& arow, double rhs) {
    double shift = 0.0;
    for (int j = 0; j < nv; ++j) {
      const double a = arow[j];
      if (a == 0.0) continue;
      const ColMap& cm = cmap[j];
      if (cm.split) {
        A(row, cm.col) = a;
        A(row, cm.col + 1) = -a;
      } else if (cm.negated) {
        A(row, cm.col) = -a;
        shift += a * cm.offset;
      } else {
        A(row, cm.col) = a;
        shift += a * cm.offset;
      }
    }
    b[row] = rhs - shift;
  };

  for (int i = 0; i < me; ++i) scatter_row(i, p.A_eq.row(i), p.b_eq[i]);
  for (int i = 0; i < mu; ++i) {
    scatter_row(me + i, p.A_ub.row(i), p.b_ub[i]);
    A(me + i, ns + i) = 1.0;
  }
  {
    int r = me + mu, s = ns + mu;
    for (int j = 0; j < nv; ++j) {
      if (std::isfinite(lower[j]) && std::isfinite(upper[j])) {
        A(r, cmap[j].col) = 1.0;
        A(r, s) = 1.0;
        b[r] = upper[j] - lower[j];
        ++r;
        ++s;
      }
    }
  }

  for (int j = 0; j < nv; ++j) {
    const ColMap& cm = cmap[j];
    if (cm.split) {
      c[cm.col] = p.c[j];
      c[cm.col + 1] = -p.c[j];
    } else {
      c[cm.col] = cm.negated ? -p.c[j] : p.c[j];
    }
  }

  // Row equilibration, then orient all right-hand sides nonnegative.
  for (int i = 0; i < m; ++i) {
    const double s = std::max(A.row(i).cwiseAbs().maxCoeff(), std::abs(b[i]));
    if (s > 0.0) {
      A.row(i) /= s;
      b[i] /= s;
    }
    if (b[i] < 0.0) {
      A.row(i) = -A.row(i);
      b[i] = -b[i];
    }
  }

  const int cap = 10 * (m + nc);
  StandardSimplex simplex(std::move(A), std::move(b), std::move(c), std::max(cap, 64));

  sol.status = simplex.phase1();
  const int p1 = simplex.pivots();
  if (sol.status == LpStatus::Optimal) sol.status = simplex.phase2();
  sol.iterations = simplex.pivots();
  if (std::getenv("DFO_LP_TRACE"))
    std::fprintf(stderr, "lp: m=%d nc=%d phase1=%d total=%d status=%s\n", m, nc, p1,
                 sol.iterations, lp_status_name(sol.status));
  if (sol.status != LpStatus::Optimal) return sol;

  const Vector xs = simplex.solution();
  sol.x.resize(nv);
  for (int j = 0; j < nv; ++j) {
    const ColMap& cm = cmap[j];
    if (cm.split)
      sol.x[j] = xs[cm.col] - xs[cm.col + 1];
    else if (cm.negated)
      sol.x[j] = cm.offset - xs[cm.col];
    else
      sol.x[j] = cm.offset + xs[cm.col];
  }
  sol.objective = p.c.dot(sol.x);
  return sol;
}

}  // namespace dfo
