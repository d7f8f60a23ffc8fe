#include "sct/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <deque>
#include <thread>

namespace sct {

namespace {

// Nonempty subsets of the k-1 nontrivial classes with popcount at most
// (k-1)/2, popcount ascending then numeric; of each complementary pair at
// exactly half size only the smaller member is visited.  Bit b of the mask
// stands for class b+1.
template <typename Fn>
std::uint64_t for_each_candidate_mask(unsigned k, Fn fn) {
  if (k < 2) return 0;
  const unsigned m = k - 1;
  if (m > 63) throw std::invalid_argument("subset scan supports at most 64 classes");
  const std::uint64_t full = (m == 63) ? ~std::uint64_t(0) >> 1 : (std::uint64_t(1) << m) - 1;
  const unsigned half = m / 2;
  std::uint64_t visited = 0;
  for (unsigned s = 1; s <= half; ++s) {
    const bool exact_half = (m % 2 == 0) && (s == half);
    std::uint64_t mask = (std::uint64_t(1) << s) - 1;
    while (mask <= full) {
      if (!exact_half || mask < (full ^ mask)) {
        ++visited;
        fn(mask);
      }
      // Gosper's hack: next mask with the same popcount.
      const std::uint64_t c = mask & -mask;
      const std::uint64_t r = mask + c;
      if (r > full || r < mask) break;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  return visited;
}

std::uint64_t candidate_mask_count(unsigned k) {
  // 2^(k-2) - 1 by the complement pairing; count directly to stay honest
  // about the iteration order.
  return for_each_candidate_mask(k, [](std::uint64_t) {});
}

IndexSet mask_to_classes(unsigned k, std::uint64_t mask) {
  IndexSet s(k);
  while (mask) {
    s.set(static_cast<unsigned>(std::countr_zero(mask)) + 1);
    mask &= mask - 1;
  }
  return s;
}

std::vector<SuperTheory> sorted_unique(std::map<Partition, SuperTheory> by_classes) {
  std::vector<SuperTheory> out;
  out.reserve(by_classes.size());
  for (auto& [key, theory] : by_classes) out.push_back(std::move(theory));
  std::sort(out.begin(), out.end(), theory_order);
  return out;
}

std::vector<SuperTheory> step1_scan_impl(const CharacterTable& t,
                                         std::span<const TableAutomorphism> auts,
                                         const EnumerationOptions& opt,
                                         EnumerationStats& stats) {
  const unsigned k = t.k();
  const unsigned workers = std::max(1u, opt.workers);
  const std::uint64_t total = candidate_mask_count(k);
  stats.subsets_scanned = total;

  std::vector<std::vector<SuperTheory>> locals(workers);
  std::atomic<std::uint64_t> done{0};
  std::atomic<unsigned> workers_idle{0};

  auto work = [&](unsigned tid) {
    std::uint64_t position = 0;
    std::uint64_t processed = 0;
    for_each_candidate_mask(k, [&](std::uint64_t mask) {
      const std::uint64_t my = position++;
      if (my % workers != tid) return;
      if (++processed % 1024 == 0) done.fetch_add(1024, std::memory_order_relaxed);
      const IndexSet s = mask_to_classes(k, mask);
      if (!auts.empty()) {
        if (orbit_representative(s, auts) != s) return;
      }
      if (std::optional<SuperTheory> theory = coarsest_theory_with_superclass(t, s)) {
        locals[tid].push_back(std::move(*theory));
      }
    });
    workers_idle.fetch_add(1, std::memory_order_release);
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned tid = 0; tid < workers; ++tid) pool.emplace_back(work, tid);
    while (opt.progress && workers_idle.load(std::memory_order_acquire) < workers) {
      opt.progress(std::min(done.load(std::memory_order_relaxed), total), total);
      std::this_thread::sleep_for(std::chrono::milliseconds(200));
    }
    for (auto& th : pool) th.join();
  }
  if (opt.progress) opt.progress(total, total);

  std::map<Partition, SuperTheory> by_classes;
  for (auto& local : locals) {
    for (auto& theory : local) {
      by_classes.emplace(theory.classes, std::move(theory));
    }
  }

  if (!auts.empty()) {
    // Close the found set under the automorphism action; images of
    // theories are theories again.
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<SuperTheory> snapshot;
      snapshot.reserve(by_classes.size());
      for (const auto& [key, theory] : by_classes) snapshot.push_back(theory);
      for (const SuperTheory& theory : snapshot) {
        for (const TableAutomorphism& a : auts) {
          SuperTheory image = apply_automorphism(a, theory);
          if (by_classes.emplace(image.classes, std::move(image)).second) grew = true;
        }
      }
    }
  }
  return sorted_unique(std::move(by_classes));
}

}  // namespace

std::vector<SuperTheory> step1_scan(const CharacterTable& t, const EnumerationOptions& opt) {
  std::vector<TableAutomorphism> auts;
  if (opt.use_automorphisms) auts = automorphism_group(t);
  EnumerationStats stats;
  return step1_scan_impl(t, auts, opt, stats);
}

SuperTheory meet_theories(const CharacterTable& t, const SuperTheory& a, const SuperTheory& b) {
  return refine_classes_to_theory(t, a.classes.meet(b.classes));
}

EnumerationResult all_theories(const CharacterTable& t, const EnumerationOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  EnumerationResult result;

  std::vector<TableAutomorphism> auts;
  if (opt.use_automorphisms) auts = automorphism_group(t);
  std::vector<SuperTheory> found = step1_scan_impl(t, auts, opt, result.stats);
  result.stats.step1_theories = found.size();

  std::map<Partition, SuperTheory> by_classes;
  std::deque<SuperTheory> work;
  for (SuperTheory& theory : found) {
    work.push_back(theory);
    by_classes.emplace(theory.classes, std::move(theory));
  }
  while (!work.empty()) {
    const SuperTheory current = std::move(work.front());
    work.pop_front();
    std::vector<SuperTheory> snapshot;
    snapshot.reserve(by_classes.size());
    for (const auto& [key, theory] : by_classes) snapshot.push_back(theory);
    for (const SuperTheory& other : snapshot) {
      SuperTheory meet = meet_theories(t, current, other);
      ++result.stats.meets_computed;
      if (by_classes.emplace(meet.classes, meet).second) work.push_back(std::move(meet));
    }
  }

  SuperTheory coarse = coarse_theory(t);
  by_classes.emplace(coarse.classes, std::move(coarse));

  result.theories = sorted_unique(std::move(by_classes));
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void for_each_identity_partition(unsigned k, const std::function<void(const Partition&)>& fn) {
  if (k == 0) return;
  if (k == 1) {
    fn(Partition::singletons(1));
    return;
  }
  // Restricted growth strings over the k-1 nontrivial classes.
  const unsigned m = k - 1;
  std::vector<unsigned> rgs(m, 0);
  std::vector<unsigned> maxima(m, 0);
  auto emit = [&] {
    unsigned nblocks = 0;
    for (unsigned i = 0; i < m; ++i) nblocks = std::max(nblocks, rgs[i] + 1);
    std::vector<IndexSet> blocks(nblocks + 1, IndexSet(k));
    blocks[0].set(0);
    for (unsigned i = 0; i < m; ++i) blocks[rgs[i] + 1].set(i + 1);
    fn(Partition::from_blocks(std::move(blocks)));
  };
  while (true) {
    emit();
    bool advanced = false;
    for (unsigned i = m; i-- > 1;) {
      if (rgs[i] <= maxima[i - 1]) {
        ++rgs[i];
        maxima[i] = std::max(maxima[i - 1], rgs[i]);
        for (unsigned j = i + 1; j < m; ++j) {
          rgs[j] = 0;
          maxima[j] = maxima[i];
        }
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
  }
}

std::vector<SuperTheory> brute_force_all_theories(const CharacterTable& t, unsigned max_k) {
  if (t.k() > max_k) {
    throw std::invalid_argument("brute force oracle limited to k <= " + std::to_string(max_k));
  }
  std::vector<SuperTheory> out;
  for_each_identity_partition(t.k(), [&](const Partition& classes) {
    const Partition chars = character_partition(t, classes.blocks());
    if (chars.block_count() != classes.block_count()) return;
    if (class_partition(t, chars.blocks()) != classes) return;
    out.push_back({chars, classes});
  });
  std::sort(out.begin(), out.end(), theory_order);
  return out;
}

std::map<unsigned, std::uint64_t> refinement_step_histogram(const CharacterTable& t,
                                                            unsigned max_k) {
  if (t.k() > max_k) {
    throw std::invalid_argument("histogram limited to k <= " + std::to_string(max_k));
  }
  std::map<unsigned, std::uint64_t> tally;
  for_each_identity_partition(t.k(), [&](const Partition& start) {
    // Count positions in the alternating chain until two consecutive
    // partitions have equal block counts; 0 means `start` pairs with its
    // character partition straight away.
    unsigned steps = 0;
    std::size_t previous = start.block_count();
    Partition classes = start;
    while (true) {
      const Partition chars = character_partition(t, classes.blocks());
      if (chars.block_count() == previous) break;
      previous = chars.block_count();
      ++steps;
      classes = class_partition(t, chars.blocks());
      if (classes.block_count() == previous) break;
      previous = classes.block_count();
      ++steps;
    }
    ++tally[steps];
  });
  return tally;
}

bool theory_order(const SuperTheory& a, const SuperTheory& b) {
  if (a.classes.block_count() != b.classes.block_count()) {
    return a.classes.block_count() < b.classes.block_count();
  }
  return a.classes.encoding() < b.classes.encoding();
}

std::vector<std::pair<std::size_t, std::size_t>> refinement_edges(
    std::span<const SuperTheory> theories) {
  const std::size_t n = theories.size();
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      below[a][b] = a != b && theories[a].classes.refines(theories[b].classes);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!below[a][b]) continue;
      bool direct = true;
      for (std::size_t c = 0; c < n && direct; ++c) {
        if (c != a && c != b && below[a][c] && below[c][b]) direct = false;
      }
      if (direct) edges.emplace_back(a, b);
    }
  }
  return edges;
}

}  // namespace sct
