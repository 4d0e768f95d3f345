#include "workbench/group.hpp"

#include "workbench/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace workbench {

FiniteGroup::FiniteGroup(Index order, std::vector<Index> table)
    : order_(order), table_(std::move(table)), inverse_(order, kNoIndex) {}

FiniteGroup FiniteGroup::from_cayley(const std::vector<std::vector<Index>>& rows) {
  const Index n = rows.size();
  if (n == 0) throw InputError("", "empty Cayley table");
  std::vector<Index> table;
  table.reserve(n * n);
  for (Index i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw InputError("row " + std::to_string(i), "Cayley table is not square");
    }
    for (Index j = 0; j < n; ++j) {
      if (rows[i][j] >= n) {
        throw InputError("row " + std::to_string(i), "entry out of range");
      }
      table.push_back(rows[i][j]);
    }
  }
  FiniteGroup g(n, std::move(table));

  Index identity = kNoIndex;
  for (Index e = 0; e < n && identity == kNoIndex; ++e) {
    bool ok = true;
    for (Index a = 0; a < n && ok; ++a) ok = g.multiply(e, a) == a && g.multiply(a, e) == a;
    if (ok) identity = e;
  }
  if (identity == kNoIndex) throw InputError("", "Cayley table has no identity element");
  g.identity_ = identity;

  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      if (g.multiply(a, b) == identity && g.multiply(b, a) == identity) {
        g.inverse_[a] = b;
        break;
      }
    }
    if (g.inverse_[a] == kNoIndex) {
      throw InputError("element " + std::to_string(a), "element has no inverse");
    }
  }

  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      for (Index c = 0; c < n; ++c) {
        if (g.multiply(g.multiply(a, b), c) != g.multiply(a, g.multiply(b, c))) {
          throw InputError("", "Cayley table is not associative at (" + std::to_string(a) + "," +
                                   std::to_string(b) + "," + std::to_string(c) + ")");
        }
      }
    }
  }
  return g;
}

FiniteGroup FiniteGroup::cyclic(Index n) {
  std::vector<std::vector<Index>> rows(n, std::vector<Index>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) rows[i][j] = (i + j) % n;
  return from_cayley(rows);
}

namespace {

std::vector<std::vector<Index>> permutations(Index n) {
  std::vector<Index> p(n);
  std::iota(p.begin(), p.end(), Index{0});
  std::vector<std::vector<Index>> all;
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return all;
}

}  // namespace

FiniteGroup FiniteGroup::symmetric(Index n) {
  if (n == 0 || n > 5) throw InputError("", "symmetric group degree must be in 1..5");
  const auto perms = permutations(n);
  const Index order = perms.size();
  std::vector<std::vector<Index>> rows(order, std::vector<Index>(order));
  std::vector<Index> composed(n);
  for (Index a = 0; a < order; ++a) {
    for (Index b = 0; b < order; ++b) {
      for (Index i = 0; i < n; ++i) composed[i] = perms[a][perms[b][i]];
      rows[a][b] = static_cast<Index>(std::find(perms.begin(), perms.end(), composed) - perms.begin());
    }
  }
  return from_cayley(rows);
}

std::vector<std::vector<Index>> FiniteGroup::rows() const {
  std::vector<std::vector<Index>> out(order_, std::vector<Index>(order_));
  for (Index i = 0; i < order_; ++i)
    for (Index j = 0; j < order_; ++j) out[i][j] = multiply(i, j);
  return out;
}

std::vector<int> symmetric_group_signs(Index n) {
  std::vector<int> signs;
  for (const auto& p : permutations(n)) {
    int inversions = 0;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) inversions += p[i] > p[j] ? 1 : 0;
    signs.push_back(inversions % 2 == 0 ? 1 : -1);
  }
  return signs;
}

}  // namespace workbench
