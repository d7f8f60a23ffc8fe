#include "sct/theory.hpp"

#include <algorithm>
#include <unordered_map>

namespace sct {

namespace {

// Tuple of exact values used as a partition key.
struct ValueTuple {
  std::vector<Cyclotomic> values;
  bool operator==(const ValueTuple& rhs) const { return values == rhs.values; }
};

struct ValueTupleHash {
  std::size_t operator()(const ValueTuple& t) const {
    std::size_t h = 0x51bba1c5u;
    for (const Cyclotomic& v : t.values) hash_combine(h, v.hash());
    return h;
  }
};

constexpr unsigned kMaxRounds = 130;  // block counts grow every round; k <= 64 in practice

}  // namespace

std::vector<Cyclotomic> supercharacter_values(const CharacterTable& t, const IndexSet& chars) {
  const unsigned k = t.k();
  std::vector<Cyclotomic> sigma(k, Cyclotomic(t.field()));
  chars.for_each([&](unsigned i) {
    for (unsigned j = 0; j < k; ++j) sigma[j] += t.sigma_summand(i, j);
  });
  return sigma;
}

Partition class_partition(const CharacterTable& t, std::span<const IndexSet> char_family) {
  if (char_family.empty()) throw std::invalid_argument("class_partition needs a nonempty family");
  const unsigned k = t.k();
  std::vector<ValueTuple> keys(k);
  for (unsigned j = 0; j < k; ++j) keys[j].values.reserve(char_family.size());
  for (const IndexSet& x : char_family) {
    std::vector<Cyclotomic> sigma = supercharacter_values(t, x);
    for (unsigned j = 0; j < k; ++j) keys[j].values.push_back(std::move(sigma[j]));
  }
  return Partition::from_keys<ValueTuple, ValueTupleHash>(keys);
}

Partition character_partition(const CharacterTable& t, std::span<const IndexSet> class_family) {
  if (class_family.empty()) {
    throw std::invalid_argument("character_partition needs a nonempty family");
  }
  const unsigned k = t.k();
  std::vector<ValueTuple> keys(k);
  for (unsigned i = 0; i < k; ++i) keys[i].values.reserve(class_family.size());
  for (const IndexSet& s : class_family) {
    for (unsigned i = 0; i < k; ++i) {
      keys[i].values.push_back(t.central_character_value(i, s));
    }
  }
  return Partition::from_keys<ValueTuple, ValueTupleHash>(keys);
}

SuperTheory refine_classes_to_theory(const CharacterTable& t, const Partition& start) {
  Partition classes = start;
  for (unsigned round = 0; round < kMaxRounds; ++round) {
    Partition chars = character_partition(t, classes.blocks());
    if (chars.block_count() == classes.block_count()) return {std::move(chars), std::move(classes)};
    Partition next = class_partition(t, chars.blocks());
    if (next.block_count() == chars.block_count()) return {std::move(chars), std::move(next)};
    classes = std::move(next);
  }
  throw TheoryError("refinement failed to stabilize (table is not a character table?)");
}

SuperTheory refine_chars_to_theory(const CharacterTable& t, const Partition& start) {
  Partition chars = start;
  for (unsigned round = 0; round < kMaxRounds; ++round) {
    Partition classes = class_partition(t, chars.blocks());
    if (classes.block_count() == chars.block_count()) {
      return {std::move(chars), std::move(classes)};
    }
    Partition next = character_partition(t, classes.blocks());
    if (next.block_count() == classes.block_count()) {
      return {std::move(next), std::move(classes)};
    }
    chars = std::move(next);
  }
  throw TheoryError("refinement failed to stabilize (table is not a character table?)");
}

bool is_supercharacter_theory(const CharacterTable& t, const Partition& chars,
                              const Partition& classes) {
  if (chars.width() != t.k() || classes.width() != t.k()) return false;
  if (chars.block_count() != classes.block_count()) return false;
  return class_partition(t, chars.blocks()) == classes;
}

std::optional<SuperTheory> coarsest_theory_with_superclass(const CharacterTable& t,
                                                           const IndexSet& s) {
  if (s.empty()) throw std::invalid_argument("the candidate superclass must be nonempty");
  if (s.test(0) && s.count() > 1) {
    throw std::invalid_argument(
        "a candidate superclass contains the identity class only when it is {0}");
  }
  const IndexSet family[1] = {s};
  Partition chars = character_partition(t, family);
  Partition classes = class_partition(t, chars.blocks());
  for (unsigned round = 0; round < kMaxRounds; ++round) {
    if (!classes.contains_block(s)) return std::nullopt;
    if (classes.block_count() == chars.block_count()) {
      return SuperTheory{std::move(chars), std::move(classes)};
    }
    chars = character_partition(t, classes.blocks());
    if (chars.block_count() == classes.block_count()) {
      return SuperTheory{std::move(chars), std::move(classes)};
    }
    classes = class_partition(t, chars.blocks());
  }
  throw TheoryError("superclass refinement failed to stabilize");
}

SuperTheory coarse_theory(const CharacterTable& t) {
  const unsigned k = t.k();
  if (k == 1) return finest_theory(t);
  std::vector<IndexSet> two{IndexSet::single(k, 0), IndexSet::single(k, 0).complement()};
  Partition p = Partition::from_blocks(two);
  return {p, p};
}

SuperTheory finest_theory(const CharacterTable& t) {
  Partition p = Partition::singletons(t.k());
  return {p, p};
}

std::vector<Supercharacter> normalized_supercharacters(const CharacterTable& t,
                                                       const SuperTheory& theory) {
  std::vector<Supercharacter> out;
  out.reserve(theory.chars.block_count());
  for (const IndexSet& x : theory.chars.blocks()) {
    Integer d(0);
    x.for_each([&](unsigned i) { mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), t.degree(i).get_mpz_t()); });
    std::vector<Cyclotomic> tau = supercharacter_values(t, x);
    const Rational inv_d(Integer(1), d);
    for (Cyclotomic& v : tau) v = v.scaled(inv_d);
    out.push_back({x, std::move(d), std::move(tau)});
  }
  return out;
}

namespace {

// Solves A * x = rhs over Q(zeta) by Gauss-Jordan inversion of A, done once;
// A is the matrix of tau values at one representative column per superclass.
class EvaluationSolver {
 public:
  EvaluationSolver(const FieldPtr& field, std::vector<std::vector<Cyclotomic>> a)
      : field_(field), n_(a.size()) {
    inv_.assign(n_, std::vector<Cyclotomic>(n_, Cyclotomic(field_)));
    for (std::size_t i = 0; i < n_; ++i) inv_[i][i] = Cyclotomic(field_, Rational(1));
    for (std::size_t col = 0; col < n_; ++col) {
      std::size_t pivot = col;
      while (pivot < n_ && a[pivot][col].is_zero()) ++pivot;
      if (pivot == n_) throw TheoryError("singular evaluation system (invalid theory)");
      std::swap(a[pivot], a[col]);
      std::swap(inv_[pivot], inv_[col]);
      const Cyclotomic scale = a[col][col].inverse();
      for (std::size_t j = 0; j < n_; ++j) {
        a[col][j] = a[col][j] * scale;
        inv_[col][j] = inv_[col][j] * scale;
      }
      for (std::size_t row = 0; row < n_; ++row) {
        if (row == col || a[row][col].is_zero()) continue;
        const Cyclotomic f = a[row][col];
        for (std::size_t j = 0; j < n_; ++j) {
          a[row][j] -= f * a[col][j];
          inv_[row][j] -= f * inv_[col][j];
        }
      }
    }
  }

  std::vector<Cyclotomic> solve(const std::vector<Cyclotomic>& rhs) const {
    std::vector<Cyclotomic> x(n_, Cyclotomic(field_));
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) x[i] += inv_[i][j] * rhs[j];
    }
    return x;
  }

 private:
  FieldPtr field_;
  std::size_t n_;
  std::vector<std::vector<Cyclotomic>> inv_;
};

}  // namespace

CheckReport verify_supercharacter_products(const CharacterTable& t, const SuperTheory& theory) {
  CheckReport report;
  const unsigned k = t.k();
  const std::vector<Supercharacter> taus = normalized_supercharacters(t, theory);
  const std::size_t nblocks = taus.size();

  std::vector<unsigned> reps;
  reps.reserve(nblocks);
  for (const IndexSet& m : theory.classes.blocks()) reps.push_back(m.lowest());

  std::vector<std::vector<Cyclotomic>> a(nblocks, std::vector<Cyclotomic>(nblocks, Cyclotomic(t.field())));
  for (std::size_t m = 0; m < nblocks; ++m) {
    for (std::size_t z = 0; z < nblocks; ++z) a[m][z] = taus[z].values[reps[m]];
  }
  const EvaluationSolver solver(t.field(), std::move(a));

  for (std::size_t x = 0; x < nblocks; ++x) {
    for (std::size_t y = x; y < nblocks; ++y) {
      std::vector<Cyclotomic> product(k, Cyclotomic(t.field()));
      for (unsigned j = 0; j < k; ++j) product[j] = taus[x].values[j] * taus[y].values[j];
      std::vector<Cyclotomic> rhs(nblocks, Cyclotomic(t.field()));
      for (std::size_t m = 0; m < nblocks; ++m) rhs[m] = product[reps[m]];
      const std::vector<Cyclotomic> coeff = solver.solve(rhs);

      for (std::size_t z = 0; z < nblocks; ++z) {
        if (!coeff[z].is_nonneg_integer()) {
          report.failures.push_back("tau[" + std::to_string(x) + "]*tau[" + std::to_string(y) +
                                    "]: coefficient of tau[" + std::to_string(z) +
                                    "] is not a nonnegative integer: " + coeff[z].str());
        }
      }
      // The expansion must reproduce the product on every column, not just
      // the representatives; otherwise the product is not constant on
      // superclasses and the theory is broken.
      std::vector<Cyclotomic> recon(k, Cyclotomic(t.field()));
      for (std::size_t z = 0; z < nblocks; ++z) {
        for (unsigned j = 0; j < k; ++j) recon[j] += coeff[z] * taus[z].values[j];
      }
      if (recon != product) {
        report.failures.push_back("tau[" + std::to_string(x) + "]*tau[" + std::to_string(y) +
                                  "] is not constant on the superclasses");
      }
    }
  }
  return report;
}

CheckReport verify_schur_closure(const CharacterTable& t, const SuperTheory& theory) {
  CheckReport report;
  const std::vector<IndexSet>& blocks = theory.classes.blocks();
  const std::size_t nblocks = blocks.size();
  for (std::size_t ka = 0; ka < nblocks; ++ka) {
    for (std::size_t kb = ka; kb < nblocks; ++kb) {
      const std::vector<unsigned> ia = blocks[ka].indices();
      const std::vector<unsigned> ib = blocks[kb].indices();
      for (std::size_t m = 0; m < nblocks; ++m) {
        std::optional<Rational> ref;
        bool constant = true;
        blocks[m].for_each([&](unsigned l) {
          Rational c(0);
          for (unsigned i : ia) {
            for (unsigned j : ib) c += t.structure_constant(i, j, l);
          }
          if (!ref) {
            ref = std::move(c);
          } else if (*ref != c) {
            constant = false;
          }
        });
        const std::string label = "K[" + std::to_string(ka) + "]*K[" + std::to_string(kb) +
                                  "] at block " + std::to_string(m);
        if (!constant) {
          report.failures.push_back(label + ": coefficient differs between representatives");
        } else if (!is_integer(*ref) || *ref < 0) {
          report.failures.push_back(label + ": coefficient " + to_string(*ref) +
                                    " is not a nonnegative integer");
        }
      }
    }
  }
  return report;
}

std::vector<IndexSet> normal_subgroups(const CharacterTable& t) {
  const unsigned k = t.k();
  std::vector<IndexSet> found;
  auto add_unique = [&](const IndexSet& s) {
    if (std::find(found.begin(), found.end(), s) == found.end()) found.push_back(s);
  };
  for (unsigned i = 0; i < k; ++i) {
    IndexSet kernel(k);
    for (unsigned j = 0; j < k; ++j) {
      if (t.value(i, j) == t.value(i, 0)) kernel.set(j);
    }
    add_unique(kernel);
  }
  for (std::size_t a = 0; a < found.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      add_unique(found[a] & found[b]);
    }
  }
  auto subgroup_order = [&](const IndexSet& s) {
    Integer n(0);
    s.for_each([&](unsigned j) { n += t.class_size(j); });
    return n;
  };
  std::sort(found.begin(), found.end(), [&](const IndexSet& x, const IndexSet& y) {
    const Integer ox = subgroup_order(x), oy = subgroup_order(y);
    if (ox != oy) return ox < oy;
    return x < y;
  });
  return found;
}

SuperTheory theory_from_normal_family(const CharacterTable& t, std::span<const IndexSet> family) {
  const unsigned k = t.k();
  for (const IndexSet& s : family) {
    if (s.width() != k || !s.test(0)) {
      throw TheoryError("family members must be class sets containing the identity class");
    }
    const std::vector<unsigned> inside = s.indices();
    IndexSet outside = s.complement();
    bool closed = true;
    outside.for_each([&](unsigned l) {
      for (unsigned i : inside) {
        for (unsigned j : inside) {
          if (t.structure_constant(i, j, l) != 0) closed = false;
        }
      }
    });
    if (!closed) {
      throw TheoryError("family member " + s.str() + " is not closed under products");
    }
  }

  // Intersection closure, with the whole group so every element is covered.
  std::vector<IndexSet> closure{IndexSet::full(k)};
  for (const IndexSet& s : family) {
    if (std::find(closure.begin(), closure.end(), s) == closure.end()) closure.push_back(s);
  }
  for (std::size_t a = 0; a < closure.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      const IndexSet meet = closure[a] & closure[b];
      if (std::find(closure.begin(), closure.end(), meet) == closure.end()) {
        closure.push_back(meet);
      }
    }
  }

  // Fibers of "smallest member containing the class".
  std::vector<IndexSet> keys(k, IndexSet(k));
  for (unsigned j = 0; j < k; ++j) {
    IndexSet smallest = IndexSet::full(k);
    for (const IndexSet& s : closure) {
      if (s.test(j)) smallest = smallest & s;
    }
    keys[j] = smallest;
  }
  const Partition seed = Partition::from_keys<IndexSet, IndexSetHash>(keys);
  return refine_classes_to_theory(t, seed);
}

}  // namespace sct
