#include "loopforge/loop_table.hpp"

#include <string>

#include "loopforge/error.hpp"

namespace loopforge {

std::vector<std::vector<Label>> LoopTable::rows() const {
  std::vector<std::vector<Label>> out(order_);
  for (std::size_t x = 0; x < order_; ++x) {
    out[x].assign(cells_.begin() + x * order_, cells_.begin() + (x + 1) * order_);
  }
  return out;
}

LoopTable validate_table(const std::vector<std::vector<Label>>& raw,
                         std::optional<Label> identity) {
  const std::size_t n = raw.size();
  std::vector<Label> cells;
  cells.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (raw[r].size() != n) {
      throw InputError("row " + std::to_string(r) + " has " +
                       std::to_string(raw[r].size()) + " entries, expected " +
                       std::to_string(n));
    }
    cells.insert(cells.end(), raw[r].begin(), raw[r].end());
  }
  return validate_cells(n, std::move(cells), identity);
}

LoopTable validate_cells(std::size_t n, std::vector<Label> cells,
                         std::optional<Label> identity) {
  if (n == 0) throw InputError("a loop needs at least one element");
  if (cells.size() != n * n) {
    throw InputError("expected " + std::to_string(n * n) + " cells, got " +
                     std::to_string(cells.size()));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] >= n) {
      throw InputError("entry " + std::to_string(cells[i]) + " at row " +
                       std::to_string(i / n) + ", column " +
                       std::to_string(i % n) + " is outside 0.." +
                       std::to_string(n - 1));
    }
  }
  std::vector<bool> seen(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t c = 0; c < n; ++c) {
      const Label v = cells[r * n + c];
      if (seen[v]) {
        throw NotLatin("row " + std::to_string(r) + " repeats label " +
                       std::to_string(v));
      }
      seen[v] = true;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t r = 0; r < n; ++r) {
      const Label v = cells[r * n + c];
      if (seen[v]) {
        throw NotLatin("column " + std::to_string(c) + " repeats label " +
                       std::to_string(v));
      }
      seen[v] = true;
    }
  }

  auto is_identity = [&](std::size_t e) {
    for (std::size_t x = 0; x < n; ++x) {
      if (cells[e * n + x] != x || cells[x * n + e] != x) return false;
    }
    return true;
  };
  if (identity) {
    if (*identity >= n) {
      throw LabelOutOfRange("declared identity " + std::to_string(*identity) +
                            " is outside 0.." + std::to_string(n - 1));
    }
    if (!is_identity(*identity)) {
      throw NoIdentity("declared identity " + std::to_string(*identity) +
                       ": row and column " + std::to_string(*identity) +
                       " are not the identity arrangement");
    }
    return LoopTable(n, std::move(cells), *identity);
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (is_identity(e)) {
      return LoopTable(n, std::move(cells), static_cast<Label>(e));
    }
  }
  throw NoIdentity("no label e has both row e and column e equal to 0.." +
                   std::to_string(n - 1));
}

namespace {

void check_label(const LoopTable& g, Label x) {
  if (x >= g.order()) {
    throw LabelOutOfRange("label " + std::to_string(x) +
                          " is outside 0.." + std::to_string(g.order() - 1));
  }
}

}  // namespace

Permutation translation(const LoopTable& g, Side side, Label x) {
  check_label(g, x);
  const std::size_t n = g.order();
  std::vector<Label> image(n);
  for (std::size_t y = 0; y < n; ++y) {
    const auto yl = static_cast<Label>(y);
    image[y] = side == Side::left ? g(x, yl) : g(yl, x);
  }
  return Permutation(std::move(image));
}

PrincipalIsotope principal_isotope(const LoopTable& g, Label f, Label h) {
  check_label(g, f);
  check_label(g, h);
  const std::size_t n = g.order();
  const Permutation rh = right_translation(g, h);
  const Permutation lf = left_translation(g, f);
  const Permutation rh_inv = rh.inverse();
  const Permutation lf_inv = lf.inverse();
  std::vector<Label> cells(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      cells[x * n + y] = g(rh_inv(static_cast<Label>(x)),
                           lf_inv(static_cast<Label>(y)));
    }
  }
  LoopTable table = validate_cells(n, std::move(cells), g(f, h));
  return {std::move(table),
          MappingTriple(rh, lf, Permutation::identity(n))};
}

LoopTable relabel(const LoopTable& g, const Permutation& sigma) {
  const std::size_t n = g.order();
  if (sigma.degree() != n) {
    throw DegreeMismatch("relabeling of degree " +
                         std::to_string(sigma.degree()) +
                         " applied to a loop of order " + std::to_string(n));
  }
  std::vector<Label> cells(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto xl = static_cast<Label>(x);
      const auto yl = static_cast<Label>(y);
      cells[sigma(xl) * n + sigma(yl)] = sigma(g(xl, yl));
    }
  }
  return validate_cells(n, std::move(cells), sigma(g.identity()));
}

LoopTable normalized(const LoopTable& g) {
  if (g.identity() == 0) return g;
  std::vector<Label> image(g.order());
  for (std::size_t i = 0; i < image.size(); ++i) image[i] = static_cast<Label>(i);
  std::swap(image[0], image[g.identity()]);
  return relabel(g, Permutation(std::move(image)));
}

bool is_associative(const LoopTable& g) {
  const auto n = static_cast<Label>(g.order());
  for (Label x = 0; x < n; ++x) {
    for (Label y = 0; y < n; ++y) {
      const Label xy = g(x, y);
      for (Label z = 0; z < n; ++z) {
        if (g(xy, z) != g(x, g(y, z))) return false;
      }
    }
  }
  return true;
}

bool is_commutative(const LoopTable& g) {
  const auto n = static_cast<Label>(g.order());
  for (Label x = 0; x < n; ++x) {
    for (Label y = static_cast<Label>(x + 1); y < n; ++y) {
      if (g(x, y) != g(y, x)) return false;
    }
  }
  return true;
}

}  // namespace loopforge
