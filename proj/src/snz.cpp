#include "snzlab/snz.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <type_traits>
#include <utility>

namespace snzlab {

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
  bool enabled = false;
  Clock::time_point at{};

  static Deadline after_ms(std::uint64_t ms) {
    Deadline d;
    if (ms > 0) {
      d.enabled = true;
      d.at = Clock::now() + std::chrono::milliseconds(ms);
    }
    return d;
  }
  bool passed() const { return enabled && Clock::now() >= at; }
};

// Everything fixed about one level: the h-values and the box bounds.
struct LevelContext {
  std::size_t t = 0;
  std::vector<BigInt> h;             // h[j] = charge of the (j zeros, t-j ones) cylinder
  std::vector<std::uint64_t> cap;    // C(t, j)
  // Fast path: all partial sums fit comfortably in int64.
  bool fits_int64 = false;
  std::vector<std::int64_t> h64;
  std::vector<std::int64_t> reset64;  // cap[j] * h64[j]
  // Big path: search runs modulo a 63-bit prime, hits re-checked exactly.
  std::vector<std::uint64_t> hmod;
  std::vector<std::uint64_t> resetmod;
};

constexpr std::uint64_t kPrime = 9223372036854775783ULL;  // largest prime < 2^63

std::uint64_t mod_of(const BigInt& v) {
  BigInt r = v % kPrime;
  if (r < 0) r += kPrime;
  return r.convert_to<std::uint64_t>();
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;  // both < 2^63, no overflow
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + kPrime - b;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % kPrime);
}

LevelContext build_context(const PSequence& p, std::size_t t) {
  LevelContext ctx;
  ctx.t = t;
  ctx.h.reserve(t + 1);
  ctx.cap.reserve(t + 1);
  BigInt bound = 0;
  for (std::size_t j = 0; j <= t; ++j) {
    ctx.h.push_back(cylinder_charge(j, t - j, p));
    const BigInt c = binom(static_cast<std::int64_t>(t), static_cast<std::int64_t>(j));
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      throw InvalidInput("level " + std::to_string(t) +
                         " is far beyond enumerable size");
    }
    ctx.cap.push_back(c.convert_to<std::uint64_t>());
    bound += c * boost::multiprecision::abs(ctx.h.back());
  }
  ctx.fits_int64 = bound < (BigInt(1) << 62);
  if (ctx.fits_int64) {
    for (std::size_t j = 0; j <= t; ++j) {
      ctx.h64.push_back(ctx.h[j].convert_to<std::int64_t>());
      ctx.reset64.push_back(static_cast<std::int64_t>(ctx.cap[j]) * ctx.h64[j]);
    }
  } else {
    for (std::size_t j = 0; j <= t; ++j) {
      ctx.hmod.push_back(mod_of(ctx.h[j]));
      ctx.resetmod.push_back(mul_mod(ctx.cap[j] % kPrime, ctx.hmod[j]));
    }
  }
  return ctx;
}

// Exact evaluation; returns a Counterexample only for a genuine zero.
std::optional<Counterexample> exact_hit(const LevelContext& ctx,
                                        const std::vector<std::uint64_t>& d) {
  BigInt sum = 0;
  for (std::size_t j = 0; j <= ctx.t; ++j) {
    if (d[j] != 0) sum += BigInt(d[j]) * ctx.h[j];
  }
  if (sum != 0) return std::nullopt;
  Counterexample ce;
  ce.t = ctx.t;
  ce.w.assign(d.begin(), d.end());
  ce.sum = 0;
  return ce;
}

// Running-sum accumulators for the odometer scan.  The int64 one is exact
// (all partial sums bounded by sum_j cap_j |h_j| < 2^62); the residue one
// works mod kPrime and defers exactness to exact_hit.
struct Int64Acc {
  const LevelContext& ctx;
  std::int64_t sum = 0;

  void init(const std::vector<std::uint64_t>& d) {
    sum = 0;
    for (std::size_t j = 0; j <= ctx.t; ++j) {
      sum += static_cast<std::int64_t>(d[j]) * ctx.h64[j];
    }
  }
  void on_increment(std::size_t j) { sum += ctx.h64[j]; }
  void on_reset(std::size_t j) { sum -= ctx.reset64[j]; }
  bool candidate() const { return sum == 0; }
};

struct ResidueAcc {
  const LevelContext& ctx;
  std::uint64_t sum = 0;

  void init(const std::vector<std::uint64_t>& d) {
    sum = 0;
    for (std::size_t j = 0; j <= ctx.t; ++j) {
      sum = add_mod(sum, mul_mod(d[j] % kPrime, ctx.hmod[j]));
    }
  }
  void on_increment(std::size_t j) { sum = add_mod(sum, ctx.hmod[j]); }
  void on_reset(std::size_t j) { sum = sub_mod(sum, ctx.resetmod[j]); }
  bool candidate() const { return sum == 0; }
};

struct ScanResult {
  std::optional<Counterexample> ce;
  bool timed_out = false;
  std::uint64_t visited = 0;
};

// Scans one shard (the leading `prefix.size()` digits held fixed) in
// lexicographic order.  Stops at the first exact zero.
template <class Acc>
ScanResult scan_shard(const LevelContext& ctx,
                      const std::vector<std::uint64_t>& prefix,
                      const Deadline& deadline,
                      const std::atomic<bool>* stop) {
  const std::size_t n = ctx.t + 1;
  const std::size_t inner = prefix.size();
  std::vector<std::uint64_t> d(n, 0);
  std::copy(prefix.begin(), prefix.end(), d.begin());

  Acc acc{ctx};
  acc.init(d);
  ScanResult res;
  bool at_zero_vector =
      std::all_of(d.begin(), d.end(), [](std::uint64_t v) { return v == 0; });
  std::uint64_t steps = 0;

  while (true) {
    if (!at_zero_vector) {
      ++res.visited;
      if (acc.candidate()) {
        if (auto ce = exact_hit(ctx, d)) {
          res.ce = std::move(ce);
          return res;
        }
      }
    }
    at_zero_vector = false;

    if ((++steps & 0xFFFF) == 0) {
      if (deadline.passed()) {
        res.timed_out = true;
        return res;
      }
      if (stop != nullptr && stop->load(std::memory_order_relaxed)) return res;
    }

    // Lexicographic increment of the inner digits.
    std::size_t j = n;
    while (j > inner && d[j - 1] == ctx.cap[j - 1]) {
      acc.on_reset(j - 1);
      d[j - 1] = 0;
      --j;
    }
    if (j == inner) return res;  // shard exhausted
    ++d[j - 1];
    acc.on_increment(j - 1);
  }
}

struct ShardPlan {
  std::size_t prefix_len = 0;
  std::uint64_t count = 0;

  std::vector<std::uint64_t> decode(std::uint64_t shard,
                                    const LevelContext& ctx) const {
    std::vector<std::uint64_t> d(prefix_len, 0);
    for (std::size_t j = prefix_len; j-- > 0;) {
      const std::uint64_t radix = ctx.cap[j] + 1;
      d[j] = shard % radix;
      shard /= radix;
    }
    return d;
  }
};

ShardPlan make_plan(const LevelContext& ctx) {
  ShardPlan plan;
  plan.prefix_len = std::min<std::size_t>(2, ctx.t + 1);
  plan.count = 1;
  for (std::size_t j = 0; j < plan.prefix_len; ++j) plan.count *= ctx.cap[j] + 1;
  return plan;
}

template <class Acc>
LevelOutcome run_exhaustive_with(const LevelContext& ctx,
                                 const SearchOptions& opt) {
  const ShardPlan plan = make_plan(ctx);
  const Deadline deadline = Deadline::after_ms(opt.budget_ms);
  LevelOutcome out;

  const unsigned jobs = static_cast<unsigned>(std::min<std::uint64_t>(
      std::clamp(opt.jobs, 1u, 64u), plan.count));

  if (jobs == 1) {
    for (std::uint64_t shard = 0; shard < plan.count; ++shard) {
      ScanResult r =
          scan_shard<Acc>(ctx, plan.decode(shard, ctx), deadline, nullptr);
      out.vectors_visited += r.visited;
      if (r.ce) {
        out.verdict = Verdict::counterexample;
        out.counterexample = std::move(r.ce);
        return out;
      }
      if (r.timed_out) {
        out.verdict = Verdict::indeterminate;
        out.note = "budget exceeded";
        return out;
      }
    }
    out.verdict = Verdict::ok;
    return out;
  }

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best_hit{std::numeric_limits<std::uint64_t>::max()};
  std::atomic<std::uint64_t> visited{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> timed{false};
  std::mutex mu;
  std::map<std::uint64_t, Counterexample> hits;

  auto worker = [&] {
    while (true) {
      const std::uint64_t shard = next.fetch_add(1);
      if (shard >= plan.count) return;
      if (opt.deterministic) {
        // Later shards cannot produce a lexicographically smaller hit.
        if (shard > best_hit.load(std::memory_order_relaxed)) continue;
      } else if (best_hit.load(std::memory_order_relaxed) !=
                 std::numeric_limits<std::uint64_t>::max()) {
        return;
      }
      ScanResult r = scan_shard<Acc>(ctx, plan.decode(shard, ctx), deadline,
                                     opt.deterministic ? nullptr : &stop);
      visited.fetch_add(r.visited);
      if (r.timed_out) {
        timed.store(true);
        stop.store(true);
        return;
      }
      if (r.ce) {
        std::lock_guard<std::mutex> lock(mu);
        hits.emplace(shard, *std::move(r.ce));
        std::uint64_t cur = best_hit.load();
        while (shard < cur && !best_hit.compare_exchange_weak(cur, shard)) {
        }
        if (!opt.deterministic) stop.store(true);
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();

  out.vectors_visited = visited.load();
  if (!hits.empty()) {
    out.verdict = Verdict::counterexample;
    out.counterexample = hits.begin()->second;
    if (timed.load()) {
      out.note = "budget hit mid-scan; counterexample may not be the least";
    }
    return out;
  }
  if (timed.load()) {
    out.verdict = Verdict::indeterminate;
    out.note = "budget exceeded";
    return out;
  }
  out.verdict = Verdict::ok;
  return out;
}

LevelOutcome run_exhaustive(const LevelContext& ctx, const SearchOptions& opt) {
  return ctx.fits_int64 ? run_exhaustive_with<Int64Acc>(ctx, opt)
                        : run_exhaustive_with<ResidueAcc>(ctx, opt);
}

// --- Meet in the middle --------------------------------------------------

std::vector<std::uint64_t> decode_mixed_radix(std::uint64_t idx,
                                              const LevelContext& ctx,
                                              std::size_t first,
                                              std::size_t last) {
  std::vector<std::uint64_t> d(last - first, 0);
  for (std::size_t j = last; j-- > first;) {
    const std::uint64_t radix = ctx.cap[j] + 1;
    d[j - first] = idx % radix;
    idx /= radix;
  }
  return d;
}

template <class Key, class Acc>
LevelOutcome run_mitm_with(const LevelContext& ctx, const SearchOptions& opt,
                           std::size_t mid) {
  const std::size_t n = ctx.t + 1;
  const Deadline deadline = Deadline::after_ms(opt.budget_ms);
  LevelOutcome out;

  auto key_of = [](const Acc& acc) { return static_cast<Key>(acc.sum); };

  // Phase 1: table of (suffix half-sum, suffix lex index).
  std::uint64_t suffix_count = 1;
  for (std::size_t j = mid; j < n; ++j) suffix_count *= ctx.cap[j] + 1;
  std::vector<std::pair<Key, std::uint64_t>> table;
  table.reserve(static_cast<std::size_t>(suffix_count));

  {
    std::vector<std::uint64_t> d(n, 0);  // leading digits stay 0; Acc ignores them
    Acc acc{ctx};
    acc.init(d);
    for (std::uint64_t idx = 0;; ++idx) {
      table.emplace_back(key_of(acc), idx);
      if ((idx & 0xFFFF) == 0xFFFF && deadline.passed()) {
        out.verdict = Verdict::indeterminate;
        out.note = "budget exceeded";
        return out;
      }
      std::size_t j = n;
      while (j > mid && d[j - 1] == ctx.cap[j - 1]) {
        acc.on_reset(j - 1);
        d[j - 1] = 0;
        --j;
      }
      if (j == mid) break;
      ++d[j - 1];
      acc.on_increment(j - 1);
    }
  }
  std::sort(table.begin(), table.end());
  out.vectors_visited = table.size();

  // Phase 2: scan prefixes in lex order; for each, probe -sum.
  std::vector<std::uint64_t> d(n, 0);
  Acc acc{ctx};
  acc.init(d);
  std::uint64_t steps = 0;
  bool prefix_all_zero = true;
  while (true) {
    ++out.vectors_visited;
    Key target;
    if constexpr (std::is_same_v<Key, std::int64_t>) {
      target = -acc.sum;
    } else {
      target = acc.sum == 0 ? 0 : kPrime - acc.sum;
    }
    auto it = std::lower_bound(
        table.begin(), table.end(), std::make_pair(target, std::uint64_t(0)));
    for (; it != table.end() && it->first == target; ++it) {
      if (prefix_all_zero && it->second == 0) continue;  // the zero vector
      std::vector<std::uint64_t> full(d.begin(), d.begin() + mid);
      std::vector<std::uint64_t> suffix =
          decode_mixed_radix(it->second, ctx, mid, n);
      full.insert(full.end(), suffix.begin(), suffix.end());
      if (auto ce = exact_hit(ctx, full)) {
        out.verdict = Verdict::counterexample;
        out.counterexample = std::move(ce);
        return out;
      }
      // Residue collision without an exact zero: keep probing this run.
    }

    if ((++steps & 0xFFFF) == 0 && deadline.passed()) {
      out.verdict = Verdict::indeterminate;
      out.note = "budget exceeded";
      return out;
    }
    std::size_t j = mid;
    while (j > 0 && d[j - 1] == ctx.cap[j - 1]) {
      acc.on_reset(j - 1);
      d[j - 1] = 0;
      --j;
    }
    if (j == 0) break;
    ++d[j - 1];
    acc.on_increment(j - 1);
    prefix_all_zero =
        std::all_of(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(mid),
                    [](std::uint64_t v) { return v == 0; });
  }

  out.verdict = Verdict::ok;
  return out;
}

LevelOutcome run_mitm(const LevelContext& ctx, const SearchOptions& opt) {
  const std::size_t n = ctx.t + 1;
  if (n < 2) return run_exhaustive(ctx, opt);

  // Balance the two halves: minimize the larger enumeration.
  BigInt best_cost = -1;
  std::size_t best_mid = 1;
  for (std::size_t mid = 1; mid < n; ++mid) {
    BigInt prefix_prod = 1, suffix_prod = 1;
    for (std::size_t j = 0; j < mid; ++j) prefix_prod *= BigInt(ctx.cap[j]) + 1;
    for (std::size_t j = mid; j < n; ++j) suffix_prod *= BigInt(ctx.cap[j]) + 1;
    const BigInt cost = std::max(prefix_prod, suffix_prod);
    if (best_cost < 0 || cost < best_cost) {
      best_cost = cost;
      best_mid = mid;
    }
  }
  BigInt suffix_prod = 1;
  for (std::size_t j = best_mid; j < n; ++j) suffix_prod *= BigInt(ctx.cap[j]) + 1;
  if (suffix_prod > opt.mitm_max_entries) {
    LevelOutcome out = run_exhaustive(ctx, opt);
    const std::string fallback =
        "half-sum table would exceed the memory cap; fell back to exhaustive";
    out.note = out.note.empty() ? fallback : fallback + "; " + out.note;
    return out;
  }

  return ctx.fits_int64
             ? run_mitm_with<std::int64_t, Int64Acc>(ctx, opt, best_mid)
             : run_mitm_with<std::uint64_t, ResidueAcc>(ctx, opt, best_mid);
}

}  // namespace

Strategy strategy_from_string(std::string_view name) {
  if (name == "exhaustive") return Strategy::exhaustive;
  if (name == "meet_in_the_middle" || name == "mitm") {
    return Strategy::meet_in_the_middle;
  }
  throw InvalidInput("unknown strategy '" + std::string(name) +
                     "' (want exhaustive or meet_in_the_middle)");
}

std::string to_string(Strategy s) {
  return s == Strategy::exhaustive ? "exhaustive" : "meet_in_the_middle";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ok:
      return "ok";
    case Verdict::counterexample:
      return "counterexample";
    case Verdict::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

LevelOutcome verify_level(const PSequence& p, std::size_t t,
                          const SearchOptions& options) {
  const LevelContext ctx = build_context(p, t);
  return options.strategy == Strategy::exhaustive ? run_exhaustive(ctx, options)
                                                  : run_mitm(ctx, options);
}

SnzCertificate verify_range(const PSequence& p, std::size_t t_max,
                            const SearchOptions& options) {
  const auto start = Clock::now();
  SnzCertificate cert;
  cert.p_digest = pseq_digest(p);
  cert.strategy = to_string(options.strategy);
  for (std::size_t t = 0; t <= t_max; ++t) {
    LevelOutcome outcome = verify_level(p, t, options);
    cert.levels.push_back(LevelReport{t, outcome.verdict, outcome.note});
    if (outcome.verdict == Verdict::counterexample) {
      cert.counterexample = std::move(outcome.counterexample);
      break;
    }
    if (outcome.verdict == Verdict::indeterminate) break;
  }
  cert.ms = options.deterministic
                ? 0
                : static_cast<std::uint64_t>(
                      std::chrono::duration_cast<std::chrono::milliseconds>(
                          Clock::now() - start)
                          .count());
  return cert;
}

std::string pseq_digest(const PSequence& p) {
  std::uint64_t hash = 14695981039346656037ULL;
  auto feed = [&hash](char c) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ULL;
  };
  for (const BigInt& term : p.terms()) {
    for (char c : to_decimal(term)) feed(c);
    feed(',');
  }
  static const char* hex = "0123456789abcdef";
  std::string digest = "fnv1a64:";
  for (int shift = 60; shift >= 0; shift -= 4) {
    digest.push_back(hex[(hash >> shift) & 0xF]);
  }
  return digest;
}

bool validate_certificate(const SnzCertificate& cert, const PSequence& p,
                          std::string* why) {
  auto reject = [why](const std::string& reason) {
    if (why != nullptr) *why = reason;
    return false;
  };

  if (cert.p_digest != pseq_digest(p)) {
    return reject("digest does not match the sequence");
  }
  if (cert.levels.empty()) return reject("certificate covers no levels");
  for (std::size_t i = 0; i < cert.levels.size(); ++i) {
    if (cert.levels[i].t != i) return reject("levels are not contiguous from 0");
    if (i + 1 < cert.levels.size() && cert.levels[i].verdict != Verdict::ok) {
      return reject("non-final level lacks an ok verdict");
    }
  }
  try {
    strategy_from_string(cert.strategy);
  } catch (const InvalidInput&) {
    return reject("unknown strategy '" + cert.strategy + "'");
  }

  const LevelReport& last = cert.levels.back();
  if (last.verdict == Verdict::counterexample) {
    if (!cert.counterexample.has_value()) {
      return reject("counterexample verdict without a counterexample");
    }
    const Counterexample& ce = *cert.counterexample;
    if (ce.t != last.t) return reject("counterexample level mismatch");
    if (ce.w.size() != ce.t + 1) return reject("counterexample has wrong arity");
    WeightVector wv{ce.w};
    if (!wv.in_box()) return reject("counterexample outside the weight box");
    if (!wv.any_nonzero()) return reject("counterexample is the zero vector");
    if (weighted_charge(wv, p) != 0) {
      return reject("counterexample does not evaluate to zero");
    }
    if (ce.sum != 0) return reject("counterexample sum field is not zero");
  } else if (cert.counterexample.has_value()) {
    return reject("counterexample present despite non-failing verdict");
  }
  return true;
}

std::optional<BigInt> greedy_next_term(const std::vector<BigInt>& prefix,
                                       const GreedyOptions& options) {
  const std::size_t k = prefix.size();
  SearchOptions sopt;
  sopt.strategy = options.strategy;
  sopt.jobs = options.jobs;
  sopt.budget_ms = options.budget_ms;

  std::vector<BigInt> candidate = prefix;
  candidate.emplace_back(0);
  for (std::uint64_t mag = 0; mag <= options.candidate_limit; ++mag) {
    for (int sign : {+1, -1}) {
      if (mag == 0 && sign < 0) continue;
      candidate.back() = sign > 0 ? BigInt(mag) : -BigInt(mag);
      const LevelOutcome outcome =
          verify_level(PSequence(candidate), k, sopt);
      if (outcome.verdict == Verdict::ok) return candidate.back();
      if (outcome.verdict == Verdict::indeterminate) return std::nullopt;
    }
  }
  return std::nullopt;
}

GreedyResult greedy_sequence(std::size_t horizon, const GreedyOptions& options) {
  GreedyResult result;
  std::vector<BigInt> terms;
  for (std::size_t k = 0; k <= horizon; ++k) {
    const std::optional<BigInt> next = greedy_next_term(terms, options);
    if (!next.has_value()) {
      result.completed_levels = k;
      result.note = "level " + std::to_string(k) +
                    " not certified (budget or candidate cap)";
      return result;
    }
    terms.push_back(*next);
  }
  PSequence seq(std::move(terms));
  PSequenceProvenance prov;
  prov.kind = "greedy-minimal";
  prov.horizon = horizon;
  prov.tie_policy = "least-magnitude-then-positive";
  prov.strategy = to_string(options.strategy);
  seq.provenance = prov;
  result.sequence = std::move(seq);
  result.completed_levels = horizon + 1;
  return result;
}

}  // namespace snzlab
