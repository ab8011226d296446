#include <algorithm>
#include <bit>
#include <unordered_map>

#include "tdbu/saturation.hpp"

namespace tdbu {

namespace {

struct Key {
  std::uint64_t a, b;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const { return k.a ^ (k.b * 0x9e3779b97f4a7c15ULL); }
};

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

struct BudgetExceeded {};

// The search state is the derivation DAG built so far. Its hash is a sum of
// per-node hashes over (clause, premise clauses), so different orders of
// the same steps meet in the transposition table, which stores the largest
// remaining length that failed.
class Memo {
 public:
  bool failed(const Key& k, std::uint32_t r) const {
    auto it = table_.find(k);
    return it != table_.end() && it->second >= r;
  }
  void fail(const Key& k, std::uint32_t r) {
    if (table_.size() > 40'000'000) table_.clear();
    auto& v = table_[k];
    v = std::max(v, r);
  }

 private:
  std::unordered_map<Key, std::uint32_t, KeyHash> table_;
};

// ---------------------------------------------------------------------------
// Ground resolution over at most 64 atoms. Beyond the transposition table
// the search drops moves that cannot occur in some shortest refutation:
// tautologies, clauses containing an existing clause, and clauses strictly
// contained in an earlier non-ancestor derived clause. Every derived clause
// of a shortest refutation is used, which bounds the number of unused
// clauses and their sizes by the remaining length.

struct GClause {
  std::uint64_t pos = 0, neg = 0;
  bool operator==(const GClause&) const = default;
  int size() const { return std::popcount(pos) + std::popcount(neg); }
  bool subset_of(const GClause& o) const {
    return (pos & ~o.pos) == 0 && (neg & ~o.neg) == 0;
  }
};

class GroundSearch {
 public:
  GroundSearch(std::vector<GClause> inputs, std::uint64_t budget)
      : inputs_(std::move(inputs)), budget_(budget) {
    for (const GClause& c : inputs_) all_.push_back(c);
  }

  std::optional<std::uint32_t> run(std::uint32_t max_length) {
    for (std::uint32_t len = 1; len <= max_length; ++len)
      if (dfs(len)) return len;
    return std::nullopt;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Node {
    std::size_t p1, p2;
    std::uint64_t ancestors;  // bit per derived index
    Key hash;
    int uses = 0;
  };

  Key node_hash(const GClause& c, const GClause& a, const GClause& b) const {
    std::uint64_t ha = mix64(a.pos * 31 + a.neg), hb = mix64(b.pos * 31 + b.neg);
    if (ha > hb) std::swap(ha, hb);
    std::uint64_t hc = mix64(c.pos ^ mix64(c.neg + 0x1234567));
    return Key{mix64(hc + ha * 3 + hb * 7), mix64(hc ^ mix64(ha + 11) ^ mix64(hb + 29))};
  }

  bool dfs(std::uint32_t r) {
    if (++nodes_ > budget_) throw BudgetExceeded{};
    std::size_t n_in = inputs_.size();
    std::uint32_t unused = 0;
    for (std::size_t d = 0; d < derived_.size(); ++d) {
      if (derived_[d].uses) continue;
      ++unused;
      if (static_cast<std::uint32_t>(all_[n_in + d].size()) > r) return false;
    }
    if (unused > r + 1) return false;
    if (memo_.failed(dag_, r)) return false;

    std::size_t total = all_.size();
    for (std::size_t i = 0; i < total; ++i) {
      for (std::size_t j = i + 1; j < total; ++j) {
        const GClause a = all_[i], b = all_[j];
        // side 0 resolves a positive literal of a, side 1 a negative one.
        for (int side = 0; side < 2; ++side) {
          std::uint64_t clash = side == 0 ? (a.pos & b.neg) : (a.neg & b.pos);
          while (clash) {
            std::uint64_t bit = clash & -clash;
            clash &= clash - 1;
            GClause e = side == 0 ? GClause{(a.pos & ~bit) | b.pos, a.neg | (b.neg & ~bit)}
                                  : GClause{a.pos | (b.pos & ~bit), (a.neg & ~bit) | b.neg};
            if (e.pos == 0 && e.neg == 0) return true;
            if (r == 1 || (e.pos & e.neg)) continue;
            if (!admissible(e, i, j)) continue;
            push(e, i, j);
            bool ok = dfs(r - 1);
            pop();
            if (ok) return true;
          }
        }
      }
    }
    memo_.fail(dag_, r);
    return false;
  }

  std::uint64_t ancestors_of(std::size_t i) const {
    std::size_t n_in = inputs_.size();
    if (i < n_in) return 0;
    return derived_[i - n_in].ancestors | (std::uint64_t{1} << (i - n_in));
  }

  bool admissible(const GClause& e, std::size_t i, std::size_t j) const {
    for (const GClause& c : all_)
      if (c.subset_of(e)) return false;
    std::uint64_t anc = ancestors_of(i) | ancestors_of(j);
    std::size_t n_in = inputs_.size();
    for (std::size_t d = 0; d < derived_.size(); ++d) {
      if (anc & (std::uint64_t{1} << d)) continue;
      if (e.subset_of(all_[n_in + d])) return false;
    }
    return true;
  }

  void push(const GClause& e, std::size_t i, std::size_t j) {
    Node n{i, j, ancestors_of(i) | ancestors_of(j), node_hash(e, all_[i], all_[j])};
    dag_.a += n.hash.a;
    dag_.b += n.hash.b;
    use(i, +1);
    use(j, +1);
    derived_.push_back(n);
    all_.push_back(e);
  }

  void pop() {
    Node n = derived_.back();
    derived_.pop_back();
    all_.pop_back();
    use(n.p1, -1);
    use(n.p2, -1);
    dag_.a -= n.hash.a;
    dag_.b -= n.hash.b;
  }

  void use(std::size_t i, int delta) {
    if (i >= inputs_.size()) derived_[i - inputs_.size()].uses += delta;
  }

  std::vector<GClause> inputs_;
  std::vector<GClause> all_;
  std::vector<Node> derived_;
  Key dag_{0, 0};
  Memo memo_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

// ---------------------------------------------------------------------------
// First-order search over all rules of the chosen calculus. Only exact
// duplicates (variants) and the unused-clause count are pruned.

class GeneralSearch {
 public:
  GeneralSearch(std::vector<Clause> inputs, Calculus calculus, const TermOrder& ord,
                std::uint64_t budget)
      : inputs_(inputs.size()), calculus_(calculus), ord_(ord), budget_(budget) {
    for (Clause& c : inputs) push_clause(std::move(c), {});
  }

  std::optional<std::uint32_t> run(std::uint32_t max_length) {
    for (std::uint32_t len = 1; len <= max_length; ++len)
      if (dfs(len)) return len;
    return std::nullopt;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Entry {
    Clause clause;
    std::vector<std::size_t> premises;
    Key hash{0, 0};
    int uses = 0;
    std::string text;
  };

  struct Move {
    Clause clause;
    std::vector<std::size_t> premises;
  };

  std::vector<Move> moves() const {
    std::vector<Move> out;
    const bool sup = calculus_ == Calculus::kSuperposition;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const Clause& c = entries_[i].clause;
      for (Clause& f : factor(c, calculus_, ord_)) out.push_back({std::move(f), {i}});
      if (sup) {
        for (Clause& f : equality_resolve(c, ord_)) out.push_back({std::move(f), {i}});
        for (Clause& f : equality_factor(c, ord_)) out.push_back({std::move(f), {i}});
      }
      for (std::size_t j = i; j < entries_.size(); ++j) {
        const Clause& d = entries_[j].clause;
        for (Clause& f : resolve(c, d, ord_, !sup)) out.push_back({std::move(f), {i, j}});
        if (!sup) continue;
        for (Clause& f : superpose(c, d, ord_)) out.push_back({std::move(f), {i, j}});
        if (i != j)
          for (Clause& f : superpose(d, c, ord_)) out.push_back({std::move(f), {j, i}});
      }
    }
    return out;
  }

  bool dfs(std::uint32_t r) {
    if (++nodes_ > budget_) throw BudgetExceeded{};
    std::uint32_t unused = 0;
    for (std::size_t d = inputs_; d < entries_.size(); ++d)
      if (!entries_[d].uses) ++unused;
    if (unused > r + 1) return false;
    if (memo_.failed(dag_, r)) return false;
    for (Move& m : moves()) {
      if (m.clause.empty()) return true;
      if (r == 1) continue;
      if (calculus_ == Calculus::kResolution && is_tautology(m.clause)) continue;
      bool dup = false;
      for (const Entry& e : entries_)
        if (variant_equal(e.clause, m.clause)) {
          dup = true;
          break;
        }
      if (dup) continue;
      push_clause(std::move(m.clause), m.premises);
      bool ok = dfs(r - 1);
      pop_clause();
      if (ok) return true;
    }
    memo_.fail(dag_, r);
    return false;
  }

  void push_clause(Clause c, std::vector<std::size_t> premises) {
    Entry e;
    e.text = to_string(c);
    e.clause = std::move(c);
    e.premises = std::move(premises);
    if (!e.premises.empty()) {
      std::uint64_t h = std::hash<std::string>{}(e.text);
      std::uint64_t a = mix64(h), b = mix64(h ^ 0xabcdef);
      for (std::size_t k = 0; k < e.premises.size(); ++k) {
        std::uint64_t ph = std::hash<std::string>{}(entries_[e.premises[k]].text);
        a += mix64(ph + 17 * (k + 1));
        b ^= mix64(ph * 31 + k);
      }
      e.hash = Key{mix64(a), mix64(b + a)};
      dag_.a += e.hash.a;
      dag_.b += e.hash.b;
      for (std::size_t p : e.premises) ++entries_[p].uses;
    }
    entries_.push_back(std::move(e));
  }

  void pop_clause() {
    Entry e = std::move(entries_.back());
    entries_.pop_back();
    for (std::size_t p : e.premises) --entries_[p].uses;
    dag_.a -= e.hash.a;
    dag_.b -= e.hash.b;
  }

  std::size_t inputs_;
  Calculus calculus_;
  const TermOrder& ord_;
  std::vector<Entry> entries_;
  Key dag_{0, 0};
  Memo memo_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

std::optional<std::vector<GClause>> ground_encoding(const std::vector<Clause>& clauses) {
  std::vector<Term> atoms;
  std::vector<GClause> out;
  for (const Clause& c : clauses) {
    if (!c.is_ground()) return std::nullopt;
    GClause g;
    for (const Literal& l : c.literals()) {
      auto it = std::find(atoms.begin(), atoms.end(), l.atom());
      std::size_t idx = it - atoms.begin();
      if (it == atoms.end()) {
        if (atoms.size() == 64) return std::nullopt;
        atoms.push_back(l.atom());
      }
      (l.positive() ? g.pos : g.neg) |= std::uint64_t{1} << idx;
    }
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  }
  return out;
}

}  // namespace

ProofLengthResult min_proof_length(const std::vector<Clause>& clauses, Calculus calculus,
                                   const TermOrder& ord, std::uint32_t max_length,
                                   std::uint64_t node_budget) {
  ProofLengthResult res;
  for (const Clause& c : clauses)
    if (c.empty()) {
      res.status = ProofLengthResult::Status::kFound;
      return res;
    }
  if (calculus == Calculus::kAuto) {
    bool eq = false;
    for (const Clause& c : clauses)
      for (const Literal& l : c.literals()) eq = eq || l.is_equality();
    calculus = eq ? Calculus::kSuperposition : Calculus::kResolution;
  }
  bool has_eq = false;
  for (const Clause& c : clauses)
    for (const Literal& l : c.literals()) has_eq = has_eq || l.is_equality();
  std::optional<std::vector<GClause>> ground;
  if (ord.mode() == OrderingMode::kNone &&
      (calculus == Calculus::kResolution || !has_eq))
    ground = ground_encoding(clauses);
  std::optional<std::uint32_t> len;
  try {
    if (ground) {
      GroundSearch s(std::move(*ground), node_budget);
      len = s.run(max_length);
      res.nodes = s.nodes();
    } else {
      GeneralSearch s(clauses, calculus, ord, node_budget);
      len = s.run(max_length);
      res.nodes = s.nodes();
    }
  } catch (const BudgetExceeded&) {
    res.status = ProofLengthResult::Status::kBudgetExceeded;
    res.nodes = node_budget;
    return res;
  }
  if (len) {
    res.status = ProofLengthResult::Status::kFound;
    res.length = *len;
  }
  return res;
}

}  // namespace tdbu
