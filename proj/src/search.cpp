#include "loopforge/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

#include "loopforge/deviation.hpp"
#include "loopforge/error.hpp"
#include "loopforge/table_io.hpp"

namespace loopforge {

namespace {

// Runs body(i) for i in 0..count-1 on up to `workers` threads. Callers
// write results into slot i, so output order never depends on scheduling.
template <typename Body>
void parallel_for(std::size_t count, std::size_t workers, Body body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void check_cap(std::size_t n, std::size_t cap) {
  if (cap > kMaxEnumerationCap) {
    throw CapExceeded("enumeration cap " + std::to_string(cap) + " exceeds the maximum " +
                      std::to_string(kMaxEnumerationCap));
  }
  if (n < 1 || n > cap) {
    throw CapExceeded("order " + std::to_string(n) + " is outside the enumeration range 1.." +
                      std::to_string(cap));
  }
}

/// Backtracking over the (n-1)x(n-1) free block of a reduced Latin square,
/// row-major, smallest value first. Rows and columns carry bitmasks of the
/// labels already used.
class ReducedSquareFiller {
 public:
  explicit ReducedSquareFiller(std::size_t n) : n_(n), cells_(n * n), row_used_(n), col_used_(n) {
    for (std::size_t i = 0; i < n; ++i) {
      cells_[i] = static_cast<Label>(i);
      cells_[i * n] = static_cast<Label>(i);
      row_used_[i] = 1u << i;
      col_used_[i] = 1u << i;
    }
  }

  // All completions of row 1 (the partition prefixes).
  std::vector<std::vector<Label>> second_rows() {
    std::vector<std::vector<Label>> out;
    fill(1, 1, 2, [&] {
      out.emplace_back(cells_.begin() + n_ + 1, cells_.begin() + 2 * n_);
    });
    return out;
  }

  // Completes the square with row 1 fixed to `prefix`.
  template <typename Sink>
  void complete(const std::vector<Label>& prefix, Sink sink) {
    for (std::size_t c = 1; c < n_; ++c) place(1, c, prefix[c - 1]);
    fill(2, 1, n_, [&] { sink(cells_); });
    for (std::size_t c = 1; c < n_; ++c) unplace(1, c);
  }

  template <typename Sink>
  void complete_all(Sink sink) {
    fill(1, 1, n_, [&] { sink(cells_); });
  }

 private:
  void place(std::size_t r, std::size_t c, Label v) {
    cells_[r * n_ + c] = v;
    row_used_[r] |= 1u << v;
    col_used_[c] |= 1u << v;
  }
  void unplace(std::size_t r, std::size_t c) {
    const Label v = cells_[r * n_ + c];
    row_used_[r] &= ~(1u << v);
    col_used_[c] &= ~(1u << v);
  }

  // Fills rows r..end_row-1 starting at column c, calling done() for each
  // completion.
  template <typename Done>
  void fill(std::size_t r, std::size_t c, std::size_t end_row, Done&& done) {
    if (r == end_row) {
      done();
      return;
    }
    const std::size_t next_r = c + 1 == n_ ? r + 1 : r;
    const std::size_t next_c = c + 1 == n_ ? 1 : c + 1;
    const unsigned used = row_used_[r] | col_used_[c];
    for (std::size_t v = 0; v < n_; ++v) {
      if (used & (1u << v)) continue;
      place(r, c, static_cast<Label>(v));
      fill(next_r, next_c, end_row, done);
      unplace(r, c);
    }
  }

  std::size_t n_;
  std::vector<Label> cells_;
  std::vector<unsigned> row_used_;
  std::vector<unsigned> col_used_;
};

template <typename PerPrefix>
void run_partitioned(std::size_t n, std::size_t workers, PerPrefix per_prefix) {
  const auto prefixes = ReducedSquareFiller(n).second_rows();
  parallel_for(prefixes.size(), workers, [&](std::size_t i) {
    ReducedSquareFiller filler(n);
    per_prefix(i, filler, prefixes[i]);
  });
}

}  // namespace

std::vector<LoopTable> enumerate_loops(std::size_t n, const EnumerationOptions& opts) {
  check_cap(n, opts.cap);
  if (n == 1) return {validate_cells(1, {0}, Label{0})};
  const auto prefixes = ReducedSquareFiller(n).second_rows();
  std::vector<std::vector<LoopTable>> parts(prefixes.size());
  parallel_for(prefixes.size(), opts.workers, [&](std::size_t i) {
    ReducedSquareFiller filler(n);
    filler.complete(prefixes[i], [&](const std::vector<Label>& cells) {
      parts[i].push_back(validate_cells(n, cells, Label{0}));
    });
  });
  std::vector<LoopTable> out;
  for (auto& part : parts) {
    for (auto& t : part) out.push_back(std::move(t));
  }
  return out;
}

void for_each_loop(std::size_t n, const std::function<void(const LoopTable&)>& sink,
                   std::size_t cap) {
  check_cap(n, cap);
  if (n == 1) {
    sink(validate_cells(1, {0}, Label{0}));
    return;
  }
  ReducedSquareFiller(n).complete_all(
      [&](const std::vector<Label>& cells) { sink(validate_cells(n, cells, Label{0})); });
}

std::size_t count_loops(std::size_t n, const EnumerationOptions& opts) {
  check_cap(n, opts.cap);
  if (n == 1) return 1;
  const auto prefixes = ReducedSquareFiller(n).second_rows();
  std::vector<std::size_t> counts(prefixes.size());
  run_partitioned(n, opts.workers,
                  [&](std::size_t i, ReducedSquareFiller& filler, const std::vector<Label>& p) {
                    filler.complete(p, [&](const std::vector<Label>&) { ++counts[i]; });
                  });
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

LoopTable canonical_form(const LoopTable& g) {
  const LoopTable base = normalized(g);
  const std::size_t n = base.order();
  const auto src = base.cells();
  std::vector<Label> sigma(n);
  std::iota(sigma.begin(), sigma.end(), Label{0});
  std::vector<Label> best(src.begin(), src.end());
  std::vector<Label> candidate(n * n);
  do {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        candidate[sigma[x] * n + sigma[y]] = sigma[src[x * n + y]];
      }
    }
    if (candidate < best) best = candidate;
  } while (std::next_permutation(sigma.begin() + 1, sigma.end()));
  return validate_cells(n, std::move(best), Label{0});
}

std::vector<IsomorphismClass> isomorphism_classes(const std::vector<LoopTable>& tables,
                                                  std::size_t workers) {
  if (tables.empty()) return {};
  const std::size_t n = tables.front().order();
  for (const auto& t : tables) {
    if (t.order() != n) {
      throw DegreeMismatch("isomorphism_classes needs tables of one order, got " +
                           std::to_string(n) + " and " + std::to_string(t.order()));
    }
  }
  std::vector<std::optional<LoopTable>> canon(tables.size());
  parallel_for(tables.size(), workers,
               [&](std::size_t i) { canon[i] = canonical_form(tables[i]); });
  std::map<LoopTable, std::size_t> counts;
  for (auto& c : canon) ++counts[*c];
  std::vector<IsomorphismClass> out;
  for (auto& [rep, size] : counts) out.push_back({rep, size});
  return out;
}

std::string InnerCondition::to_string() const {
  if (type == Type::order_equals) {
    return "order:" + std::string(loopforge::to_string(family)) + ":" + std::to_string(k);
  }
  return "pvanish:" + std::string(loopforge::to_string(family));
}

std::optional<InnerCondition> parse_inner_condition(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() < 2) return std::nullopt;
  const auto family = parse_inner_kind(parts[1]);
  if (!family || *family == InnerKind::full) return std::nullopt;
  InnerCondition cond;
  cond.family = *family;
  if (parts[0] == "order" && parts.size() == 3) {
    cond.type = InnerCondition::Type::order_equals;
    try {
      cond.k = std::stoul(parts[2]);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (cond.k == 0) return std::nullopt;
    return cond;
  }
  if (parts[0] == "pvanish" && parts.size() == 2) {
    cond.type = InnerCondition::Type::p_vanishes_all;
    return cond;
  }
  return std::nullopt;
}

bool satisfies(const LoopTable& g, const InnerCondition& cond) {
  const auto gens = inner_generators(g, cond.family);
  return std::any_of(gens.begin(), gens.end(), [&](const Permutation& p) {
    return cond.type == InnerCondition::Type::order_equals ? perm_order(p) == cond.k
                                                           : p_vanishes_all(g, p);
  });
}

std::vector<std::pair<LoopFlag, bool>> parse_flag_expression(const std::string& expr) {
  std::vector<std::pair<LoopFlag, bool>> out;
  std::string token;
  auto flush = [&] {
    std::string t = token;
    token.clear();
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(0, 1);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
    if (t.empty()) return;
    bool value = true;
    if (t.starts_with("!") || t.starts_with("~")) {
      value = false;
      t.erase(0, 1);
    } else if (t.starts_with("not ")) {
      value = false;
      t.erase(0, 4);
    }
    const auto flag = parse_loop_flag(t);
    if (!flag) throw InputError("unknown loop flag \"" + t + "\"");
    out.emplace_back(*flag, value);
  };
  for (char ch : expr) {
    if (ch == ',' || ch == '&') {
      flush();
    } else {
      token += ch;
    }
  }
  flush();
  return out;
}

std::string format_flag_expression(const std::vector<std::pair<LoopFlag, bool>>& flags) {
  std::string out;
  for (const auto& [flag, value] : flags) {
    if (!out.empty()) out += ',';
    if (!value) out += '!';
    out += std::string(to_string(flag)).substr(3);
  }
  return out;
}

bool matches_flags(const LoopFlags& flags,
                   const std::vector<std::pair<LoopFlag, bool>>& req) {
  return std::all_of(req.begin(), req.end(),
                     [&](const auto& fv) { return flags[fv.first] == fv.second; });
}

std::optional<InnerTripleInstance> find_inner_triple_instance(const LoopTable& g,
                                                              Arrangement arrangement) {
  const std::size_t n = g.order();

  // Principal isotopes other than g, keyed by cells; first (f, g) wins.
  std::map<std::vector<Label>, std::pair<Label, Label>> isotopes;
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t h = 0; h < n; ++h) {
      auto iso = principal_isotope(g, static_cast<Label>(f), static_cast<Label>(h));
      if (iso.table == g) continue;
      std::vector<Label> key(iso.table.cells().begin(), iso.table.cells().end());
      isotopes.emplace(std::move(key),
                       std::pair{static_cast<Label>(f), static_cast<Label>(h)});
    }
  }
  if (isotopes.empty()) return std::nullopt;

  // Shared pool of distinct inner mappings.
  std::vector<Permutation> pool;
  std::map<Permutation, std::size_t> ids;
  auto intern = [&](const Permutation& p) {
    auto [it, fresh] = ids.emplace(p, pool.size());
    if (fresh) pool.push_back(p);
    return it->second;
  };
  std::vector<std::size_t> rho, lambda, mu;
  for (const auto& p : inner_mapping_table(g, InnerKind::rho)) rho.push_back(intern(p));
  for (const auto& p : inner_mapping_table(g, InnerKind::lambda)) lambda.push_back(intern(p));
  for (const auto& p : inner_mapping_table(g, InnerKind::mu)) mu.push_back(intern(p));

  std::vector<Permutation> inverses;
  std::vector<signed char> vanishes(pool.size(), -1);
  for (const auto& p : pool) inverses.push_back(p.inverse());
  auto premise = [&](std::size_t id) {
    if (vanishes[id] < 0) vanishes[id] = p_vanishes_all(g, pool[id]) ? 1 : 0;
    return vanishes[id] == 1;
  };

  // (ia, ib, ic) -> matching principal isotope, if the triple maps onto one.
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>,
           std::optional<std::pair<Label, Label>>>
      memo;
  std::vector<Label> derived(n * n);
  auto target_of = [&](std::size_t ia, std::size_t ib, std::size_t ic) {
    const auto key = std::tuple{ia, ib, ic};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const auto& a_inv = inverses[ia];
    const auto& b_inv = inverses[ib];
    const auto& c = pool[ic];
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        derived[x * n + y] = c(g(a_inv(static_cast<Label>(x)), b_inv(static_cast<Label>(y))));
      }
    }
    std::optional<std::pair<Label, Label>> found;
    if (auto it = isotopes.find(derived); it != isotopes.end()) found = it->second;
    memo.emplace(key, found);
    return found;
  };

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t r = rho[x * n + y];
      const std::size_t l = lambda[x * n + y];
      const std::size_t t = mu[x];
      const bool any_premise = arrangement == Arrangement::trl
                                   ? premise(t) || premise(r)
                                   : premise(r) || premise(l) || premise(t);
      if (!any_premise) continue;
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
          for (std::size_t z = 0; z < n; ++z) {
            std::size_t ia = 0, ib = 0, ic = 0;
            switch (arrangement) {
              case Arrangement::rlt:
                std::tie(ia, ib, ic) = std::tuple{r, lambda[u * n + v], mu[z]};
                break;
              case Arrangement::lrt:
                std::tie(ia, ib, ic) = std::tuple{l, rho[u * n + v], mu[z]};
                break;
              case Arrangement::trl:
                std::tie(ia, ib, ic) = std::tuple{mu[z], r, lambda[u * n + v]};
                break;
            }
            const auto fg = target_of(ia, ib, ic);
            if (!fg) continue;
            const InnerTripleLabels labels{static_cast<Label>(x), static_cast<Label>(y),
                                           static_cast<Label>(u), static_cast<Label>(v),
                                           static_cast<Label>(z)};
            return InnerTripleInstance{arrangement, labels, fg->first, fg->second,
                                       principal_isotope(g, fg->first, fg->second).table};
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<Witness> find_witnesses(const WitnessQuery& q) {
  if (q.min_order < 1 || q.min_order > q.max_order) {
    throw InputError("order range " + std::to_string(q.min_order) + ".." +
                     std::to_string(q.max_order) + " is empty");
  }
  check_cap(q.max_order, q.cap);
  std::vector<Witness> out;
  for (std::size_t n = q.min_order; n <= q.max_order; ++n) {
    const auto tables = enumerate_loops(n, {q.cap, q.workers});
    std::vector<std::optional<Witness>> slots(tables.size());
    parallel_for(tables.size(), q.workers, [&](std::size_t i) {
      const LoopTable& g = tables[i];
      if (!matches_flags(classify_flags(g), q.required_flags)) return;
      for (const auto& cond : q.inner_conditions) {
        if (!satisfies(g, cond)) return;
      }
      std::optional<InnerTripleInstance> instance;
      if (q.arrangement) {
        instance = find_inner_triple_instance(g, *q.arrangement);
        if (!instance) return;
      }
      slots[i] = Witness{g, classify_loop(g), std::move(instance)};
    });
    for (auto& s : slots) {
      if (s) out.push_back(std::move(*s));
    }
  }
  return out;
}

std::string format_witness(const Witness& w) {
  std::string out = "# " + w.classification.flags_line();
  if (w.instance) {
    out += " instance=" + std::string(to_string(w.instance->arrangement)) + ' ' +
           w.instance->labels.to_string() + " f=" + std::to_string(w.instance->f) +
           " g=" + std::to_string(w.instance->g);
  }
  out += '\n';
  out += format_table(w.table);
  return out;
}

}  // namespace loopforge
