#include "sct/table_automorphisms.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace sct {

namespace {

std::string row_key(const CharacterTable& t, unsigned i, std::span<const unsigned> col_order) {
  std::string key;
  for (unsigned j : col_order) {
    key += t.value(i, j).str();
    key += ';';
  }
  return key;
}

// Iteratively refined row/column invariants: start from (size, value
// multiset) and rehash against the opposite side's classes until stable.
void invariant_classes(const CharacterTable& t, std::vector<unsigned>& row_cls,
                       std::vector<unsigned>& col_cls) {
  const unsigned k = t.k();
  auto relabel = [](std::vector<std::string>& sigs, std::vector<unsigned>& cls) {
    std::vector<std::string> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    unsigned changed = 0;
    for (std::size_t i = 0; i < sigs.size(); ++i) {
      const unsigned id = static_cast<unsigned>(
          std::lower_bound(sorted.begin(), sorted.end(), sigs[i]) - sorted.begin());
      if (id != cls[i]) ++changed;
      cls[i] = id;
    }
    return changed;
  };

  std::vector<std::string> rsig(k), csig(k);
  for (unsigned i = 0; i < k; ++i) {
    std::vector<std::string> vals;
    for (unsigned j = 0; j < k; ++j) vals.push_back(t.value(i, j).str());
    std::sort(vals.begin(), vals.end());
    rsig[i] = to_string(t.degree(i)) + "|";
    for (auto& v : vals) rsig[i] += v + ";";
  }
  for (unsigned j = 0; j < k; ++j) {
    std::vector<std::string> vals;
    for (unsigned i = 0; i < k; ++i) vals.push_back(t.value(i, j).str());
    std::sort(vals.begin(), vals.end());
    csig[j] = to_string(t.class_size(j)) + "|";
    for (auto& v : vals) csig[j] += v + ";";
  }
  row_cls.assign(k, 0);
  col_cls.assign(k, 0);
  relabel(rsig, row_cls);
  relabel(csig, col_cls);

  for (unsigned round = 0; round < k; ++round) {
    for (unsigned i = 0; i < k; ++i) {
      std::vector<std::string> vals;
      for (unsigned j = 0; j < k; ++j) {
        vals.push_back(std::to_string(col_cls[j]) + ":" + t.value(i, j).str());
      }
      std::sort(vals.begin(), vals.end());
      rsig[i] = std::to_string(row_cls[i]) + "|";
      for (auto& v : vals) rsig[i] += v + ";";
    }
    for (unsigned j = 0; j < k; ++j) {
      std::vector<std::string> vals;
      for (unsigned i = 0; i < k; ++i) {
        vals.push_back(std::to_string(row_cls[i]) + ":" + t.value(i, j).str());
      }
      std::sort(vals.begin(), vals.end());
      csig[j] = std::to_string(col_cls[j]) + "|";
      for (auto& v : vals) csig[j] += v + ";";
    }
    unsigned changed = relabel(rsig, row_cls);
    changed += relabel(csig, col_cls);
    if (changed == 0) break;
  }
}

class ColumnSearch {
 public:
  ColumnSearch(const CharacterTable& t, std::vector<unsigned> col_cls)
      : t_(t), k_(t.k()), col_cls_(std::move(col_cls)), tau_(k_, k_), used_(k_, false) {
    std::vector<unsigned> identity(k_);
    std::iota(identity.begin(), identity.end(), 0);
    for (unsigned i = 0; i < k_; ++i) {
      row_lookup_.emplace(row_key(t_, i, identity), i);
    }
  }

  std::vector<TableAutomorphism> run() {
    descend(0);
    std::sort(found_.begin(), found_.end(),
              [](const TableAutomorphism& a, const TableAutomorphism& b) {
                return a.col_perm < b.col_perm;
              });
    return std::move(found_);
  }

 private:
  void descend(unsigned j) {
    if (j == k_) {
      finish();
      return;
    }
    for (unsigned cand = 0; cand < k_; ++cand) {
      if (used_[cand] || col_cls_[cand] != col_cls_[j]) continue;
      if (!consistent(j, cand)) continue;
      tau_[j] = cand;
      used_[cand] = true;
      descend(j + 1);
      used_[cand] = false;
    }
  }

  // Structure constants are determined by the table, so any automorphism
  // preserves them; check every triple that the new assignment completes.
  bool consistent(unsigned j, unsigned cand) const {
    tau_[j] = cand;
    for (unsigned a = 0; a <= j; ++a) {
      for (unsigned b = 0; b <= j; ++b) {
        if (t_.structure_constant(a, b, j) != t_.structure_constant(tau_[a], tau_[b], cand)) {
          return false;
        }
        if (t_.structure_constant(a, j, b) != t_.structure_constant(tau_[a], cand, tau_[b])) {
          return false;
        }
        if (t_.structure_constant(j, a, b) != t_.structure_constant(cand, tau_[a], tau_[b])) {
          return false;
        }
      }
    }
    return true;
  }

  void finish() {
    // Row sigma must satisfy value(sigma(i), tau(j)) = value(i, j), i.e.
    // the row of i read through tau^{-1} must be an existing row.
    std::vector<unsigned> tau_inv(k_);
    for (unsigned j = 0; j < k_; ++j) tau_inv[tau_[j]] = j;
    std::vector<unsigned> sigma(k_);
    std::vector<bool> hit(k_, false);
    for (unsigned i = 0; i < k_; ++i) {
      const auto it = row_lookup_.find(row_key(t_, i, tau_inv));
      if (it == row_lookup_.end()) return;
      sigma[i] = it->second;
      if (hit[sigma[i]]) return;
      hit[sigma[i]] = true;
    }
    for (unsigned i = 0; i < k_; ++i) {
      for (unsigned j = 0; j < k_; ++j) {
        if (t_.value(sigma[i], tau_[j]) != t_.value(i, j)) return;
      }
    }
    found_.push_back({std::move(sigma), tau_});
  }

  const CharacterTable& t_;
  const unsigned k_;
  std::vector<unsigned> col_cls_;
  mutable std::vector<unsigned> tau_;
  std::vector<bool> used_;
  std::unordered_map<std::string, unsigned> row_lookup_;
  std::vector<TableAutomorphism> found_;
};

}  // namespace

bool TableAutomorphism::is_identity() const {
  for (unsigned i = 0; i < row_perm.size(); ++i) {
    if (row_perm[i] != i || col_perm[i] != i) return false;
  }
  return true;
}

TableAutomorphism identity_automorphism(unsigned k) {
  TableAutomorphism a;
  a.row_perm.resize(k);
  a.col_perm.resize(k);
  std::iota(a.row_perm.begin(), a.row_perm.end(), 0);
  std::iota(a.col_perm.begin(), a.col_perm.end(), 0);
  return a;
}

TableAutomorphism compose(const TableAutomorphism& a, const TableAutomorphism& b) {
  const std::size_t k = a.row_perm.size();
  TableAutomorphism c;
  c.row_perm.resize(k);
  c.col_perm.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    c.row_perm[i] = a.row_perm[b.row_perm[i]];
    c.col_perm[i] = a.col_perm[b.col_perm[i]];
  }
  return c;
}

TableAutomorphism inverse(const TableAutomorphism& a) {
  const std::size_t k = a.row_perm.size();
  TableAutomorphism c;
  c.row_perm.resize(k);
  c.col_perm.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    c.row_perm[a.row_perm[i]] = static_cast<unsigned>(i);
    c.col_perm[a.col_perm[i]] = static_cast<unsigned>(i);
  }
  return c;
}

std::vector<TableAutomorphism> automorphism_group(const CharacterTable& t,
                                                  bool respect_power_maps) {
  std::vector<unsigned> row_cls, col_cls;
  invariant_classes(t, row_cls, col_cls);
  std::vector<TableAutomorphism> group = ColumnSearch(t, std::move(col_cls)).run();
  if (respect_power_maps && !t.power_maps().empty()) {
    std::erase_if(group, [&](const TableAutomorphism& a) {
      for (const auto& [p, pm] : t.power_maps()) {
        for (unsigned j = 0; j < t.k(); ++j) {
          if (pm[a.col_perm[j]] != a.col_perm[pm[j]]) return true;
        }
      }
      return false;
    });
  }
  return group;
}

bool brauer_check(const CharacterTable& t, const TableAutomorphism& a) {
  unsigned rows = 0, cols = 0;
  for (unsigned i = 0; i < t.k(); ++i) {
    rows += a.row_perm[i] == i;
    cols += a.col_perm[i] == i;
  }
  return rows == cols;
}

SuperTheory orbit_theory(const CharacterTable& t, std::span<const TableAutomorphism> subgroup) {
  if (subgroup.empty()) throw std::invalid_argument("orbit_theory needs a nonempty subgroup");
  std::set<std::vector<unsigned>> members;
  for (const TableAutomorphism& a : subgroup) members.insert(a.col_perm);
  for (const TableAutomorphism& a : subgroup) {
    for (const TableAutomorphism& b : subgroup) {
      if (!members.count(compose(a, b).col_perm)) {
        throw std::invalid_argument("automorphism list is not closed under composition");
      }
    }
  }

  const unsigned k = t.k();
  auto orbits = [&](auto perm_of) {
    std::vector<unsigned> root(k);
    std::iota(root.begin(), root.end(), 0);
    std::function<unsigned(unsigned)> find = [&](unsigned x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    for (const TableAutomorphism& a : subgroup) {
      for (unsigned i = 0; i < k; ++i) {
        const unsigned x = find(i), y = find(perm_of(a)[i]);
        if (x != y) root[std::max(x, y)] = std::min(x, y);
      }
    }
    std::vector<unsigned> keys(k);
    for (unsigned i = 0; i < k; ++i) keys[i] = find(i);
    return Partition::from_keys(keys);
  };

  SuperTheory theory{orbits([](const TableAutomorphism& a) -> const std::vector<unsigned>& {
                       return a.row_perm;
                     }),
                     orbits([](const TableAutomorphism& a) -> const std::vector<unsigned>& {
                       return a.col_perm;
                     })};
  if (!is_supercharacter_theory(t, theory.chars, theory.classes)) {
    throw TheoryError("automorphism orbits do not form a supercharacter theory (bug)");
  }
  return theory;
}

std::vector<std::pair<unsigned long, TableAutomorphism>> galois_automorphisms(
    const CharacterTable& t) {
  const unsigned k = t.k();
  const unsigned long n = t.conductor();
  std::vector<unsigned> identity(k);
  std::iota(identity.begin(), identity.end(), 0);

  std::unordered_map<std::string, unsigned> row_lookup, col_lookup;
  for (unsigned i = 0; i < k; ++i) row_lookup.emplace(row_key(t, i, identity), i);
  auto col_key = [&](const std::vector<Cyclotomic>& transformed_col) {
    std::string key;
    for (const Cyclotomic& v : transformed_col) {
      key += v.str();
      key += ';';
    }
    return key;
  };

  std::vector<std::pair<unsigned long, TableAutomorphism>> out;
  for (unsigned long r = 1; r <= n; ++r) {
    if (std::gcd(r, n) != 1) continue;
    std::vector<std::vector<Cyclotomic>> transformed(k);
    for (unsigned i = 0; i < k; ++i) {
      transformed[i].reserve(k);
      for (unsigned j = 0; j < k; ++j) transformed[i].push_back(t.value(i, j).galois(r));
    }

    TableAutomorphism a;
    a.row_perm.resize(k);
    a.col_perm.resize(k);
    // sigma: the transformed row i equals the original row sigma(i).
    for (unsigned i = 0; i < k; ++i) {
      std::string key;
      for (unsigned j = 0; j < k; ++j) {
        key += transformed[i][j].str();
        key += ';';
      }
      const auto it = row_lookup.find(key);
      if (it == row_lookup.end()) {
        throw TableError("Galois image of row " + std::to_string(i) +
                         " is not a table row (not a character table)");
      }
      a.row_perm[i] = it->second;
    }
    // tau: the original column j equals the transformed column tau(j).
    std::unordered_map<std::string, unsigned> transformed_cols;
    for (unsigned j = 0; j < k; ++j) {
      std::vector<Cyclotomic> col;
      col.reserve(k);
      for (unsigned i = 0; i < k; ++i) col.push_back(transformed[i][j]);
      transformed_cols.emplace(col_key(col), j);
    }
    for (unsigned j = 0; j < k; ++j) {
      std::vector<Cyclotomic> col;
      col.reserve(k);
      for (unsigned i = 0; i < k; ++i) col.push_back(t.value(i, j));
      const auto it = transformed_cols.find(col_key(col));
      if (it == transformed_cols.end()) {
        throw TableError("no Galois partner column for class " + std::to_string(j) +
                         " (not a character table)");
      }
      a.col_perm[j] = it->second;
    }
    if (std::none_of(out.begin(), out.end(), [&](const auto& p) { return p.second == a; })) {
      out.emplace_back(r, std::move(a));
    }
  }
  return out;
}

IndexSet orbit_representative(const IndexSet& s, std::span<const TableAutomorphism> auts,
                              std::size_t* orbit_size) {
  if (auts.empty()) {
    if (orbit_size) *orbit_size = 1;
    return s;
  }
  std::set<IndexSet> orbit;
  for (const TableAutomorphism& a : auts) {
    IndexSet image(s.width());
    s.for_each([&](unsigned j) { image.set(a.col_perm[j]); });
    orbit.insert(std::move(image));
  }
  if (orbit_size) *orbit_size = orbit.size();
  return *orbit.begin();
}

SuperTheory apply_automorphism(const TableAutomorphism& a, const SuperTheory& theory) {
  return {theory.chars.permuted(a.row_perm), theory.classes.permuted(a.col_perm)};
}

std::vector<std::vector<TableAutomorphism>> all_subgroups(
    std::span<const TableAutomorphism> group) {
  const std::size_t n = group.size();
  std::map<std::vector<unsigned>, std::size_t> index_of;
  for (std::size_t i = 0; i < n; ++i) index_of.emplace(group[i].col_perm, i);

  auto generated = [&](std::set<std::size_t> gens) {
    std::vector<std::size_t> work(gens.begin(), gens.end());
    std::set<std::size_t> closure = std::move(gens);
    while (!work.empty()) {
      const std::size_t x = work.back();
      work.pop_back();
      for (const std::size_t y : std::set<std::size_t>(closure)) {
        for (const std::size_t z : {index_of.at(compose(group[x], group[y]).col_perm),
                                    index_of.at(compose(group[y], group[x]).col_perm)}) {
          if (closure.insert(z).second) work.push_back(z);
        }
      }
    }
    return std::vector<std::size_t>(closure.begin(), closure.end());
  };

  std::size_t id = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (group[i].is_identity()) id = i;
  }

  std::set<std::vector<std::size_t>> subgroups;
  subgroups.insert({id});
  for (std::size_t i = 0; i < n; ++i) subgroups.insert(generated({id, i}));
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::vector<std::size_t>> snapshot(subgroups.begin(), subgroups.end());
    for (const auto& a : snapshot) {
      for (const auto& b : snapshot) {
        std::set<std::size_t> gens(a.begin(), a.end());
        gens.insert(b.begin(), b.end());
        if (subgroups.insert(generated(std::move(gens))).second) grew = true;
      }
    }
  }

  std::vector<std::vector<std::size_t>> ordered(subgroups.begin(), subgroups.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<std::vector<TableAutomorphism>> out;
  out.reserve(ordered.size());
  for (const auto& idxs : ordered) {
    std::vector<TableAutomorphism> sub;
    sub.reserve(idxs.size());
    for (const std::size_t i : idxs) sub.push_back(group[i]);
    out.push_back(std::move(sub));
  }
  return out;
}

std::optional<std::vector<unsigned long>> abelian_invariants(
    std::span<const TableAutomorphism> group) {
  const std::size_t n = group.size();
  for (const TableAutomorphism& a : group) {
    for (const TableAutomorphism& b : group) {
      if (!(compose(a, b) == compose(b, a))) return std::nullopt;
    }
  }
  if (n == 0) return std::vector<unsigned long>{};

  auto order_of = [&](const TableAutomorphism& a) {
    unsigned long ord = 1;
    TableAutomorphism p = a;
    while (!p.is_identity()) {
      p = compose(p, a);
      ++ord;
    }
    return ord;
  };
  std::vector<unsigned long> orders;
  orders.reserve(n);
  for (const TableAutomorphism& a : group) orders.push_back(order_of(a));

  // Primary decomposition per prime from the counts of solutions of
  // x^(p^m) = 1: the exponent partition satisfies
  // #parts >= m  =  log_p N(p^m) - log_p N(p^(m-1)).
  std::vector<unsigned long> primary;  // prime powers, all primes mixed
  std::vector<unsigned long> primes;
  for (unsigned long o : orders) {
    for (unsigned long p = 2; p * p <= o; ++p) {
      while (o % p == 0) {
        if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
        o /= p;
      }
    }
    if (o > 1 && std::find(primes.begin(), primes.end(), o) == primes.end()) primes.push_back(o);
  }
  std::sort(primes.begin(), primes.end());

  std::map<unsigned long, std::vector<unsigned long>> parts_by_prime;
  for (const unsigned long p : primes) {
    std::vector<unsigned long> counts;  // N(p^m) for m = 0, 1, ...
    counts.push_back(1);
    for (unsigned m = 1;; ++m) {
      unsigned long pm = 1;
      for (unsigned i = 0; i < m; ++i) pm *= p;
      unsigned long c = 0;
      for (std::size_t i = 0; i < n; ++i) {
        unsigned long o = orders[i];
        bool p_power = true;
        while (o > 1) {
          if (o % p != 0) {
            p_power = false;
            break;
          }
          o /= p;
        }
        if (p_power && pm % orders[i] == 0) ++c;
      }
      counts.push_back(c);
      if (counts[m] == counts[m - 1]) break;
    }
    auto log_p = [&](unsigned long v) {
      unsigned e = 0;
      while (v > 1) {
        v /= p;
        ++e;
      }
      return e;
    };
    std::vector<unsigned long> ge;  // #parts >= m
    for (std::size_t m = 1; m < counts.size(); ++m) {
      ge.push_back(log_p(counts[m]) - log_p(counts[m - 1]));
    }
    std::vector<unsigned long>& parts = parts_by_prime[p];
    for (std::size_t m = 1; m <= ge.size(); ++m) {
      const unsigned long here = ge[m - 1] - (m < ge.size() ? ge[m] : 0);
      for (unsigned long c = 0; c < here; ++c) {
        unsigned long pm = 1;
        for (std::size_t i = 0; i < m; ++i) pm *= p;
        parts.push_back(pm);
      }
    }
    std::sort(parts.rbegin(), parts.rend());
  }

  std::size_t max_parts = 0;
  for (const auto& [p, parts] : parts_by_prime) max_parts = std::max(max_parts, parts.size());
  std::vector<unsigned long> factors(max_parts, 1);
  for (const auto& [p, parts] : parts_by_prime) {
    for (std::size_t i = 0; i < parts.size(); ++i) factors[i] *= parts[i];
  }
  return factors;
}

}  // namespace sct
