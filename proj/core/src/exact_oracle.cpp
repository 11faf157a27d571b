#include "distspec/exact_oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "distspec/bitset.hpp"

namespace distspec {

namespace {

/// Max-clique search on the compatibility graph (distinct, non-confusable
/// pairs). Works in a permuted vertex numbering; see `order`.
class CliqueSearch {
 public:
  CliqueSearch(const ConfusabilityMatrix& conf, std::uint64_t budget, const SearchSymmetry* symmetry = nullptr)
      : n_(conf.size()), budget_(budget), symmetry_(symmetry) {
    if (symmetry_) init_symmetry();
    // Compatibility degree, highest first, ties by index.
    std::vector<std::size_t> degree(n_);
    for (Index v = 0; v < n_; ++v) degree[v] = n_ - conf.row_count(v);
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), Index{0});
    std::stable_sort(order_.begin(), order_.end(), [&](Index a, Index b) { return degree[a] > degree[b]; });
    position_.resize(n_);
    for (Index p = 0; p < n_; ++p) position_[order_[p]] = p;

    adj_.assign(n_, Bitset(n_));
    for (Index p = 0; p < n_; ++p) {
      const Index v = order_[p];
      for (Index q = 0; q < n_; ++q)
        if (q != p && !conf.test(v, order_[q])) adj_[p].set(q);
    }
  }

  std::size_t vertices() const { return n_; }
  Index position(Index v) const { return position_[v]; }
  Index vertex(Index p) const { return order_[p]; }
  const Bitset& adjacency(Index p) const { return adj_[p]; }
  std::uint64_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }

  /// Largest clique inside `candidates` (positions), requiring it to beat
  /// `floor`. Stops early once `target` is reached. Returns the clique found
  /// (empty if nothing above floor).
  ///
  /// `prefix` is a clique already fixed (all of `candidates` adjacent to
  /// it); sizes count it. With `use_symmetry`, branches in the same orbit of
  /// the stabiliser of the current clique are explored once.
  std::vector<Index> run(const Bitset& candidates, std::size_t floor, std::size_t target,
                         const std::vector<Index>& prefix = {}, bool use_symmetry = false) {
    best_size_ = floor;
    best_.clear();
    target_ = target;
    current_ = prefix;
    done_ = false;
    if (candidates.any()) expand(candidates, use_symmetry && symmetry_ != nullptr);
    return best_;
  }

 private:
  void init_symmetry() {
    const std::size_t n = symmetry_->n;
    const std::size_t q = symmetry_->q;
    digits_.resize(n_ * n);
    for (Index v = 0; v < n_; ++v) {
      Index rest = v;
      for (std::size_t p = 0; p < n; ++p) {
        digits_[v * n + p] = static_cast<std::uint32_t>(rest % q);
        rest /= q;
      }
    }
  }

  /// Letter orbit representatives under the automorphisms fixing every
  /// letter in `fixed`.
  const std::vector<std::uint32_t>& letter_orbits(const std::vector<std::uint32_t>& fixed) {
    auto it = orbit_memo_.find(fixed);
    if (it != orbit_memo_.end()) return it->second;
    const std::size_t q = symmetry_->q;
    std::vector<std::uint32_t> parent(q);
    std::iota(parent.begin(), parent.end(), 0u);
    auto root = [&](std::uint32_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (const auto& sigma : symmetry_->letter_automorphisms) {
      if (!std::all_of(fixed.begin(), fixed.end(), [&](std::uint32_t a) { return sigma[a] == a; })) continue;
      for (std::uint32_t a = 0; a < q; ++a) {
        const std::uint32_t x = root(a), y = root(sigma[a]);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
      }
    }
    for (std::uint32_t a = 0; a < q; ++a) parent[a] = root(a);
    return orbit_memo_.emplace(fixed, std::move(parent)).first->second;
  }

  /// Orbit label of every candidate under the pointwise stabiliser of
  /// current_. Returns false when that stabiliser is trivial.
  bool orbit_labels(const Bitset& candidates, std::vector<std::uint32_t>& label) {
    const std::size_t n = symmetry_->n;
    // Coordinates with identical columns over the current clique form a
    // cell; they may be permuted freely.
    std::map<std::vector<std::uint32_t>, std::uint32_t> cell_of_column;
    std::vector<std::uint32_t> cell(n);
    std::vector<std::vector<std::uint32_t>> cell_letters;
    for (std::size_t p = 0; p < n; ++p) {
      std::vector<std::uint32_t> column;
      column.reserve(current_.size());
      for (Index c : current_) column.push_back(digits_[order_[c] * n + p]);
      auto [it, fresh] = cell_of_column.emplace(column, static_cast<std::uint32_t>(cell_letters.size()));
      if (fresh) {
        std::sort(column.begin(), column.end());
        column.erase(std::unique(column.begin(), column.end()), column.end());
        cell_letters.push_back(std::move(column));
      }
      cell[p] = it->second;
    }
    std::vector<const std::vector<std::uint32_t>*> reps;
    bool trivial = cell_letters.size() == n;
    for (const auto& letters : cell_letters) {
      reps.push_back(&letter_orbits(letters));
      const auto& r = *reps.back();
      for (std::uint32_t a = 0; a < r.size() && trivial; ++a)
        if (r[a] != a) trivial = false;
    }
    if (trivial) return false;

    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::uint32_t> key(n);
    candidates.for_each([&](Index pos) {
      const std::uint32_t* w = &digits_[order_[pos] * n];
      for (std::size_t p = 0; p < n; ++p) key[p] = (cell[p] << 20) | (*reps[cell[p]])[w[p]];
      std::sort(key.begin(), key.end());
      label[pos] = ids.emplace(key, static_cast<std::uint32_t>(ids.size())).first->second;
    });
    return true;
  }

  void expand(Bitset candidates, bool symmetric) {
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    std::vector<std::uint32_t> label;
    if (symmetric) {
      label.resize(n_);
      symmetric = orbit_labels(candidates, label);
    }
    // Greedy sequential colouring in position order; colour classes are
    // independent sets of the compatibility graph, so a colour count bounds
    // the clique size within `candidates`.
    std::vector<Index> verts;
    std::vector<std::size_t> colours;
    verts.reserve(candidates.count());
    colours.reserve(verts.capacity());
    Bitset uncoloured = candidates;
    const std::size_t need = best_size_ + 1 > current_.size() ? best_size_ + 1 - current_.size() : 0;
    std::size_t colour = 0;
    while (uncoloured.any()) {
      ++colour;
      Bitset open = uncoloured;
      while (open.any()) {
        const Index v = open.first();
        open.reset(v);
        uncoloured.reset(v);
        open.subtract(adj_[v]);
        if (colour >= need) {
          verts.push_back(v);
          colours.push_back(colour);
        }
      }
    }

    for (std::size_t k = verts.size(); k-- > 0;) {
      if (current_.size() + colours[k] <= best_size_) return;
      const Index v = verts[k];
      if (!candidates.test(v)) continue;
      current_.push_back(v);
      Bitset next = candidates;
      next &= adj_[v];
      if (next.none()) {
        if (current_.size() > best_size_) {
          best_size_ = current_.size();
          best_ = current_;
          if (best_size_ >= target_) done_ = true;
        }
      } else {
        expand(std::move(next), symmetric);
      }
      current_.pop_back();
      if (done_ || aborted_) return;
      if (symmetric) {
        const std::uint32_t mine = label[v];
        Bitset same = candidates;
        same.for_each([&](Index w) {
          if (label[w] == mine) candidates.reset(w);
        });
      } else {
        candidates.reset(v);
      }
    }
  }

  std::size_t n_;
  std::uint64_t budget_;
  const SearchSymmetry* symmetry_;
  std::vector<std::uint32_t> digits_;
  std::map<std::vector<std::uint32_t>, std::vector<std::uint32_t>> orbit_memo_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  bool done_ = false;
  std::vector<Index> order_;
  std::vector<Index> position_;
  std::vector<Bitset> adj_;
  std::vector<Index> current_;
  std::vector<Index> best_;
  std::size_t best_size_ = 0;
  std::size_t target_ = 0;
};

/// Maximal clique built greedily in position order; a starting lower bound.
std::vector<Index> greedy_clique(const CliqueSearch& search) {
  std::vector<Index> clique;
  Bitset open = Bitset::full(search.vertices());
  while (open.any()) {
    const Index p = open.first();
    clique.push_back(p);
    open.reset(p);
    open &= search.adjacency(p);
  }
  return clique;
}

std::vector<Index> to_vertices(const CliqueSearch& search, const std::vector<Index>& positions) {
  std::vector<Index> out;
  out.reserve(positions.size());
  for (Index p : positions) out.push_back(search.vertex(p));
  std::sort(out.begin(), out.end());
  return out;
}

/// Lexicographically least clique of the given size, scanning vertices in
/// original index order and keeping a vertex whenever the remaining
/// candidates still admit a completion.
std::vector<Index> lex_least(CliqueSearch& search, std::size_t size) {
  const std::size_t n = search.vertices();
  std::vector<Index> chosen;
  // Candidates kept in position space.
  Bitset cand = Bitset::full(n);
  for (Index v = 0; v < n && chosen.size() < size; ++v) {
    const Index p = search.position(v);
    if (!cand.test(p)) continue;
    cand.reset(p);
    Bitset rest = cand;
    rest &= search.adjacency(p);
    const std::size_t need = size - chosen.size() - 1;
    bool feasible = need == 0;
    if (!feasible && rest.count() >= need) {
      auto found = search.run(rest, need - 1, need);
      if (search.aborted()) return {};
      feasible = found.size() >= need;
    }
    if (feasible) {
      chosen.push_back(v);
      cand = std::move(rest);
    }
  }
  return chosen;
}

/// Letter permutations sigma with t[sigma a][sigma b] == t[a][b], found by
/// backtracking. Stops after `cap` maps; the cyclic shifts are always added
/// when the table is circulant so that transitivity is not missed.
std::vector<std::vector<std::uint32_t>> table_automorphisms(const Table& t, std::size_t cap) {
  const std::size_t q = t.size();
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> sigma(q);
  std::vector<bool> used(q, false);
  std::uint64_t steps = 0;
  const std::uint64_t step_cap = 2'000'000;
  auto extend = [&](auto&& self, std::size_t a) -> void {
    if (out.size() >= cap || steps > step_cap) return;
    if (a == q) {
      out.push_back(sigma);
      return;
    }
    for (std::uint32_t x = 0; x < q; ++x) {
      if (used[x]) continue;
      ++steps;
      bool ok = t[x][x] == t[a][a];
      for (std::size_t b = 0; b < a && ok; ++b)
        ok = t[x][sigma[b]] == t[a][b] && t[sigma[b]][x] == t[b][a];
      if (!ok) continue;
      sigma[a] = x;
      used[x] = true;
      self(self, a + 1);
      used[x] = false;
    }
  };
  extend(extend, 0);

  bool circulant = true;
  for (std::size_t a = 0; a < q && circulant; ++a)
    for (std::size_t b = 0; b < q && circulant; ++b) circulant = t[(a + 1) % q][(b + 1) % q] == t[a][b];
  if (circulant) {
    for (std::size_t c = 1; c < q; ++c) {
      std::vector<std::uint32_t> shift(q);
      for (std::size_t a = 0; a < q; ++a) shift[a] = static_cast<std::uint32_t>((a + c) % q);
      out.push_back(std::move(shift));
    }
  }
  if (out.empty()) {
    out.emplace_back(q);
    std::iota(out.back().begin(), out.back().end(), 0u);
  }
  return out;
}

bool transitive(const std::vector<std::vector<std::uint32_t>>& maps, std::size_t q) {
  std::vector<bool> seen(q, false);
  std::vector<std::uint32_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::uint32_t a = stack.back();
    stack.pop_back();
    for (const auto& sigma : maps)
      if (!seen[sigma[a]]) {
        seen[sigma[a]] = true;
        ++reached;
        stack.push_back(sigma[a]);
      }
  }
  return reached == q;
}

void check_symmetry(const SearchSymmetry& sym, std::size_t vertices) {
  std::size_t size = 1;
  for (std::size_t p = 0; p < sym.n; ++p) {
    if (sym.q == 0 || size > vertices / sym.q) throw InvalidArgument("symmetry does not match the graph size");
    size *= sym.q;
  }
  if (size != vertices) throw InvalidArgument("symmetry does not match the graph size");
  for (const auto& sigma : sym.letter_automorphisms) {
    std::vector<bool> hit(sym.q, false);
    if (sigma.size() != sym.q) throw InvalidArgument("letter automorphism has the wrong length");
    for (auto x : sigma) {
      if (x >= sym.q || hit[x]) throw InvalidArgument("letter automorphism is not a permutation");
      hit[x] = true;
    }
  }
}

}  // namespace

std::optional<SearchSymmetry> search_symmetry(const CodeSpace& space) {
  const std::size_t q = space.space().q();
  Table table;
  if (const auto* add = std::get_if<AdditivePerLetter>(&space.measure())) {
    table = add->table;
  } else if (const auto* f = std::get_if<Functional>(&space.measure());
             f && f->form == FunctionalForm::RectilinearModGrid) {
    table.assign(q, std::vector<double>(q));
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b) {
        const std::size_t delta = a > b ? a - b : b - a;
        table[a][b] = static_cast<double>(std::min(delta, q - delta));
      }
  } else {
    return std::nullopt;
  }
  SearchSymmetry sym;
  sym.q = q;
  sym.n = space.space().n();
  sym.letter_automorphisms = table_automorphisms(table, 40320);
  sym.vertex_transitive = transitive(sym.letter_automorphisms, q);
  return sym;
}

SearchResult max_distance_code(const ConfusabilityMatrix& conf, const SearchConfig& cfg,
                               const SearchSymmetry* symmetry) {
  if (cfg.node_budget == 0) throw InvalidArgument("node budget must be positive");
  if (symmetry) check_symmetry(*symmetry, conf.size());
  CliqueSearch search(conf, cfg.node_budget, symmetry);

  std::vector<Index> best = greedy_clique(search);
  std::vector<Index> improved;
  if (symmetry && symmetry->vertex_transitive) {
    // Some maximum code contains word 0.
    const Index anchor = search.position(0);
    improved = search.run(search.adjacency(anchor), best.size(), conf.size(), {anchor}, true);
  } else {
    improved = search.run(Bitset::full(conf.size()), best.size(), conf.size(), {}, symmetry != nullptr);
  }
  if (!improved.empty()) best = std::move(improved);

  SearchResult result{CodeSet::certify(to_vertices(search, best), conf), !search.aborted(), 0};
  if (result.certified && cfg.report_witness) {
    // The size is already certified; on budget exhaustion here the first
    // witness is kept.
    auto witness = lex_least(search, best.size());
    if (!search.aborted()) result.code = CodeSet::certify(std::move(witness), conf);
  }
  result.nodes = search.nodes();
  return result;
}

TransitiveBound transitive_upper_bound(const CodeSpace& space, const Threshold& d) {
  const auto symmetry = search_symmetry(space);
  if (!symmetry || !symmetry->vertex_transitive)
    throw PreconditionViolated("the clique-coclique bound needs a vertex-transitive space");
  if (!d.exceeds(space.mu_min()))
    throw DegenerateThreshold("d must exceed the minimum distance " + std::to_string(space.mu_min()));
  space.space().require_enumerable();
  const std::size_t n = space.size();
  std::vector<std::pair<double, Index>> near;
  for (Index w = 1; w < n; ++w)
    if (space.within(0, w, d)) near.emplace_back(space.symmetrized_distance(0, w), w);
  std::sort(near.begin(), near.end());

  TransitiveBound out;
  out.clique.push_back(0);
  for (const auto& [dist, w] : near) {
    (void)dist;
    bool all = true;
    // Far members tend to be the ones that fail; scan newest first.
    for (std::size_t k = out.clique.size(); k-- > 0 && all;) all = space.within(out.clique[k], w, d);
    if (all) out.clique.push_back(w);
  }
  out.value = n / out.clique.size();
  std::sort(out.clique.begin(), out.clique.end());
  return out;
}

std::size_t exact_M(const CodeSpace& space, const Threshold& d, const SearchConfig& cfg) {
  const auto conf = ConfusabilityMatrix::build(space, d);
  const auto symmetry = search_symmetry(space);
  auto result = max_distance_code(conf, cfg, symmetry ? &*symmetry : nullptr);
  if (!result.certified)
    throw BudgetExceeded("node budget of " + std::to_string(cfg.node_budget) +
                             " exhausted; best code found is not certified optimal",
                         result.code, result.nodes);
  return result.code.size();
}

}  // namespace distspec
