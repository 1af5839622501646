#include "belgames/exactlp.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "belgames/errors.hpp"

namespace belgames {

namespace {

void check_dimensions(const LinearProgram& lp) {
  if (lp.objective.size() != lp.numVars) {
    throw ValidationError("objective length does not match variable count");
  }
  for (const auto& c : lp.constraints) {
    if (c.coeffs.size() != lp.numVars) {
      throw ValidationError("constraint length does not match variable count");
    }
  }
}

// Dense tableau in standard form: A y = b with y >= 0 and b >= 0, maximizing.
// `cost` is the reduced-cost row; a column improves while its entry is
// positive. Artificial columns sit at the right end and are never allowed to
// re-enter once phase 1 is done.
struct Tableau {
  std::size_t cols = 0;  // standard columns + 1 rhs slot
  std::vector<std::vector<Rational>> rows;
  std::vector<std::size_t> basis;
  std::vector<Rational> cost;

  std::size_t rhs() const { return cols - 1; }

  void pivot(std::size_t prow, std::size_t pcol) {
    auto& pr = rows[prow];
    const Rational inv = Rational(1) / pr[pcol];
    for (auto& v : pr) v *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == prow) continue;
      const Rational f = rows[r][pcol];
      if (f == 0) continue;
      for (std::size_t c = 0; c < cols; ++c) rows[r][c] -= f * pr[c];
    }
    const Rational f = cost[pcol];
    if (f != 0) {
      for (std::size_t c = 0; c < cols; ++c) cost[c] -= f * pr[c];
    }
    basis[prow] = pcol;
  }

  enum class Step { Optimal, Unbounded };

  // Bland's rule: entering column = lowest improving index below
  // `enterLimit`; leaving row = minimum ratio, ties by lowest basic column.
  Step run(std::size_t enterLimit) {
    for (;;) {
      std::size_t enter = enterLimit;
      for (std::size_t j = 0; j < enterLimit; ++j) {
        if (cost[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter == enterLimit) return Step::Optimal;

      std::size_t leave = rows.size();
      Rational bestRatio;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r][enter] <= 0) continue;
        Rational ratio = rows[r][rhs()] / rows[r][enter];
        if (leave == rows.size() || ratio < bestRatio ||
            (ratio == bestRatio && basis[r] < basis[leave])) {
          leave = r;
          bestRatio = ratio;
        }
      }
      if (leave == rows.size()) return Step::Unbounded;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LPOutcome solve_lp(const LinearProgram& lp) {
  check_dimensions(lp);
  const std::size_t n = lp.numVars;
  const std::size_t m = lp.constraints.size();

  // Free variables become differences of nonnegatives: x_i = y_2i - y_2i+1.
  const std::size_t structCols = 2 * n;
  std::size_t slackCount = 0;
  for (const auto& c : lp.constraints) {
    if (c.rel != Relation::Equal) ++slackCount;
  }
  const std::size_t artStart = structCols + slackCount;
  const std::size_t totalCols = artStart + m + 1;

  Tableau t;
  t.cols = totalCols;
  t.rows.assign(m, std::vector<Rational>(totalCols, Rational(0)));
  t.basis.resize(m);

  std::size_t nextSlack = structCols;
  for (std::size_t r = 0; r < m; ++r) {
    const auto& c = lp.constraints[r];
    auto& row = t.rows[r];
    for (std::size_t i = 0; i < n; ++i) {
      row[2 * i] = c.coeffs[i];
      row[2 * i + 1] = -c.coeffs[i];
    }
    if (c.rel == Relation::LessEq) {
      row[nextSlack++] = 1;
    } else if (c.rel == Relation::GreaterEq) {
      row[nextSlack++] = -1;
    }
    row[t.rhs()] = c.rhs;
    if (row[t.rhs()] < 0) {
      for (auto& v : row) v = -v;
    }
    row[artStart + r] = 1;
    t.basis[r] = artStart + r;
  }

  // Phase 1: maximize -sum of artificials. With the artificial basis the
  // reduced cost of every other column is its column sum.
  t.cost.assign(totalCols, Rational(0));
  for (std::size_t j = 0; j < artStart; ++j) {
    for (std::size_t r = 0; r < m; ++r) t.cost[j] += t.rows[r][j];
  }
  t.run(artStart);

  for (std::size_t r = 0; r < m; ++r) {
    if (t.basis[r] >= artStart && t.rows[r][t.rhs()] != 0) {
      return LPOutcome{LPStatus::Infeasible, Rational(0), {}};
    }
  }

  // Drive zero-level artificials out of the basis; a row where that is
  // impossible is redundant and gets dropped.
  for (std::size_t r = t.rows.size(); r-- > 0;) {
    if (t.basis[r] < artStart) continue;
    std::size_t enter = artStart;
    for (std::size_t j = 0; j < artStart; ++j) {
      if (t.rows[r][j] != 0) {
        enter = j;
        break;
      }
    }
    if (enter < artStart) {
      t.pivot(r, enter);
    } else {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(r));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
    }
  }

  // Phase 2 over the original objective.
  std::vector<Rational> stdObjective(totalCols, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    stdObjective[2 * i] = lp.objective[i];
    stdObjective[2 * i + 1] = -lp.objective[i];
  }
  t.cost = stdObjective;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const Rational cb = stdObjective[t.basis[r]];
    if (cb == 0) continue;
    for (std::size_t j = 0; j < totalCols; ++j) t.cost[j] -= cb * t.rows[r][j];
  }
  if (t.run(artStart) == Tableau::Step::Unbounded) {
    return LPOutcome{LPStatus::Unbounded, Rational(0), {}};
  }

  std::vector<Rational> standard(artStart, Rational(0));
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.basis[r] < artStart) standard[t.basis[r]] = t.rows[r][t.rhs()];
  }
  std::vector<Rational> point(n);
  Rational value(0);
  for (std::size_t i = 0; i < n; ++i) {
    point[i] = standard[2 * i] - standard[2 * i + 1];
    value += lp.objective[i] * point[i];
  }
  return LPOutcome{LPStatus::Optimal, std::move(value), std::move(point)};
}

namespace {

// Reduced row echelon form; returns the pivot column of each row.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& m,
                              std::size_t width) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < width && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    const Rational inv = Rational(1) / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row) continue;
      const Rational f = m[r][col];
      if (f == 0) continue;
      for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<Rational>> nullspace_basis(
    const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) {
    throw ValidationError("nullspace_basis requires at least one row");
  }
  const std::size_t k = rows[0].size();
  for (const auto& r : rows) {
    if (r.size() != k) throw ValidationError("rows of unequal length");
  }

  std::vector<std::vector<Rational>> m = rows;
  const std::vector<std::size_t> pivots = rref(m, k);

  std::vector<bool> isPivot(k, false);
  for (std::size_t c : pivots) isPivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t freeCol = 0; freeCol < k; ++freeCol) {
    if (isPivot[freeCol]) continue;
    std::vector<Rational> v(k, Rational(0));
    v[freeCol] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][freeCol];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t matrix_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  return rref(rows, rows[0].size()).size();
}

bool in_span(const std::vector<std::vector<Rational>>& vectors,
             const std::vector<Rational>& candidate) {
  if (vectors.empty()) {
    return std::all_of(candidate.begin(), candidate.end(),
                       [](const Rational& v) { return v == 0; });
  }
  std::vector<std::vector<Rational>> extended = vectors;
  extended.push_back(candidate);
  return matrix_rank(vectors) == matrix_rank(std::move(extended));
}

std::optional<std::vector<Rational>> solve_linear_system(
    std::vector<std::vector<Rational>> lhs, std::vector<Rational> rhs) {
  if (lhs.size() != rhs.size()) {
    throw ValidationError("system row count mismatch");
  }
  if (lhs.empty()) return std::vector<Rational>{};
  const std::size_t k = lhs[0].size();
  for (std::size_t r = 0; r < lhs.size(); ++r) {
    if (lhs[r].size() != k) throw ValidationError("rows of unequal length");
    lhs[r].push_back(rhs[r]);
  }
  const std::vector<std::size_t> pivots = rref(lhs, k);
  for (std::size_t r = pivots.size(); r < lhs.size(); ++r) {
    if (lhs[r][k] != 0) return std::nullopt;
  }
  std::vector<Rational> x(k, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = lhs[r][k];
  return x;
}

namespace {

bool satisfies_all(const std::vector<LinearConstraint>& cs,
                   const std::vector<Rational>& point) {
  for (const auto& c : cs) {
    Rational lhs(0);
    for (std::size_t i = 0; i < point.size(); ++i) lhs += c.coeffs[i] * point[i];
    switch (c.rel) {
      case Relation::LessEq:
        if (lhs > c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
      case Relation::GreaterEq:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

// Depth-first enumeration of linearly independent constraint subsets of size
// `dim`, with incremental elimination so dependent extensions are pruned
// before branching.
struct VertexSearch {
  const std::vector<LinearConstraint>& cs;
  std::size_t dim;
  std::vector<std::vector<Rational>> elim;
  std::vector<std::size_t> elimPivot;
  std::vector<std::size_t> chosen;
  std::set<std::vector<Rational>> found;

  VertexSearch(const std::vector<LinearConstraint>& constraints,
               std::size_t dimension)
      : cs(constraints), dim(dimension) {}

  void search(std::size_t start) {
    if (chosen.size() == dim) {
      leaf();
      return;
    }
    for (std::size_t idx = start; idx < cs.size(); ++idx) {
      if (cs.size() - idx < dim - chosen.size()) break;
      std::vector<Rational> reduced = cs[idx].coeffs;
      for (std::size_t r = 0; r < elim.size(); ++r) {
        const Rational f = reduced[elimPivot[r]];
        if (f == 0) continue;
        for (std::size_t c = 0; c < reduced.size(); ++c) {
          reduced[c] -= f * elim[r][c];
        }
      }
      std::size_t pivot = reduced.size();
      for (std::size_t c = 0; c < reduced.size(); ++c) {
        if (reduced[c] != 0) {
          pivot = c;
          break;
        }
      }
      if (pivot == reduced.size()) continue;  // dependent on current rows
      const Rational inv = Rational(1) / reduced[pivot];
      for (auto& v : reduced) v *= inv;
      elim.push_back(std::move(reduced));
      elimPivot.push_back(pivot);
      chosen.push_back(idx);
      search(idx + 1);
      chosen.pop_back();
      elimPivot.pop_back();
      elim.pop_back();
    }
  }

  void leaf() {
    std::vector<std::vector<Rational>> lhs;
    std::vector<Rational> rhs;
    lhs.reserve(dim);
    rhs.reserve(dim);
    for (std::size_t idx : chosen) {
      lhs.push_back(cs[idx].coeffs);
      rhs.push_back(cs[idx].rhs);
    }
    auto x = solve_linear_system(std::move(lhs), std::move(rhs));
    if (x && satisfies_all(cs, *x)) found.insert(std::move(*x));
  }
};

}  // namespace

std::vector<std::vector<Rational>> enumerate_polytope_vertices(
    const std::vector<LinearConstraint>& constraints, std::size_t dimension) {
  if (dimension == 0) {
    throw ValidationError("vertex enumeration needs at least one variable");
  }
  for (const auto& c : constraints) {
    if (c.coeffs.size() != dimension) {
      throw ValidationError("constraint length does not match dimension");
    }
  }
  std::vector<std::vector<Rational>> normals;
  normals.reserve(constraints.size());
  for (const auto& c : constraints) normals.push_back(c.coeffs);
  if (normals.empty() || !nullspace_basis(normals).empty()) {
    throw PreconditionError(
        "system has a nontrivial lineality space and no vertices; describe it "
        "by a lineality basis plus pseudo-vertices instead");
  }

  VertexSearch search(constraints, dimension);
  search.search(0);
  return {search.found.begin(), search.found.end()};
}

}  // namespace belgames
