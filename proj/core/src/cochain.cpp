#include "gerst/cochain.hpp"

#include <algorithm>
#include <unordered_map>

namespace gerst {

namespace {

const SparseVec kEmpty;

std::optional<int> min_cap(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

// Largest output-minus-input weight over the stored entries.
int max_shift(const Algebra& a, const Cochain& c) {
  int s = 0;
  for (const auto& [t, v] : c.entries) {
    int wt = a.tuple_weight(t);
    for (const auto& kv : v) s = std::max(s, a.weight(kv.first) - wt);
  }
  return s;
}

}  // namespace

std::size_t Cochain::nonzeros() const {
  std::size_t n = 0;
  for (const auto& kv : entries) n += kv.second.size();
  return n;
}

const SparseVec& Cochain::at(const Index& tuple) const {
  auto it = entries.find(tuple);
  return it == entries.end() ? kEmpty : it->second;
}

void Cochain::add(const Index& tuple, std::size_t out, const Scalar& c) {
  if (c.is_zero()) return;
  auto& v = entries[tuple];
  auto [it, inserted] = v.emplace(out, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
  if (v.empty()) entries.erase(tuple);
}

void Cochain::add(const Index& tuple, const SparseVec& v, const Scalar& c) {
  if (c.is_zero() || v.empty()) return;
  auto& slot = entries[tuple];
  axpy(slot, c, v);
  if (slot.empty()) entries.erase(tuple);
}

Cochain& Cochain::operator+=(const Cochain& o) {
  if (o.arity != arity) throw std::invalid_argument("adding cochains of different arity");
  input_cap = min_cap(input_cap, o.input_cap);
  for (const auto& [t, v] : o.entries) add(t, v);
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
  if (o.arity != arity) throw std::invalid_argument("subtracting cochains of different arity");
  input_cap = min_cap(input_cap, o.input_cap);
  for (const auto& [t, v] : o.entries) add(t, v, Scalar(-1));
  return *this;
}

Cochain& Cochain::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    entries.clear();
    return *this;
  }
  for (auto& kv : entries)
    for (auto& e : kv.second) e.second *= s;
  return *this;
}

bool operator==(const Cochain& a, const Cochain& b) { return a.arity == b.arity && a.entries == b.entries; }

Cochain zero_cochain(const Algebra& a, std::size_t arity) { return Cochain(arity, a.weight_cap()); }

Cochain multiplication_cochain(const Algebra& a) {
  Cochain mu = zero_cochain(a, 2);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!a.overflows(i, j)) mu.add({i, j}, a.product(i, j));
  return mu;
}

Cochain element_cochain(const Algebra& a, const Vec& v) {
  Cochain c = zero_cochain(a, 0);
  c.add({}, to_sparse(v));
  return c;
}

Cochain endomorphism_cochain(const Algebra& a, const SparseMatrix& m) {
  Cochain c = zero_cochain(a, 1);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [col, x] : m.row(r)) c.add({col}, r, x);
  return c;
}

Vec evaluate(const Algebra& a, const Cochain& d, const std::vector<Vec>& args) {
  if (args.size() != d.arity) throw std::invalid_argument("wrong number of arguments");
  Vec out = zero_vec(a.dim());
  for (const auto& [t, v] : d.entries) {
    Scalar c(1);
    for (std::size_t s = 0; s < t.size() && !c.is_zero(); ++s) c *= args[s][t[s]];
    if (c.is_zero()) continue;
    for (const auto& [k, x] : v) out[k] += c * x;
  }
  return out;
}

Cochain insert(const Algebra& a, const Cochain& d, const Cochain& e) {
  const std::size_t m = d.arity, n = e.arity;
  if (m == 0) return Cochain(n == 0 ? 0 : n - 1, min_cap(d.input_cap, e.input_cap));
  std::optional<int> cap = e.input_cap;
  if (d.input_cap) cap = min_cap(cap, *d.input_cap - max_shift(a, e));
  Cochain out(m + n - 1, cap);

  // slot -> argument index -> entries of d having that argument in the slot
  std::vector<std::unordered_map<std::size_t, std::vector<const std::pair<const Index, SparseVec>*>>> by_slot(m);
  for (const auto& entry : d.entries)
    for (std::size_t s = 0; s < m; ++s) by_slot[s][entry.first[s]].push_back(&entry);

  Index t(m + n - 1);
  for (const auto& [ein, ev] : e.entries) {
    for (const auto& [k, c] : ev) {
      for (std::size_t s = 0; s < m; ++s) {
        auto it = by_slot[s].find(k);
        if (it == by_slot[s].end()) continue;
        const bool negative = ((n + 1) * s) % 2 == 1;
        for (const auto* dentry : it->second) {
          const Index& din = dentry->first;
          std::copy(din.begin(), din.begin() + s, t.begin());
          std::copy(ein.begin(), ein.end(), t.begin() + s);
          std::copy(din.begin() + s + 1, din.end(), t.begin() + s + n);
          if (cap && a.tuple_weight(t) > *cap) continue;
          out.add(t, dentry->second, negative ? -c : c);
        }
      }
    }
  }
  return out;
}

Cochain gerstenhaber_bracket(const Algebra& a, const Cochain& d, const Cochain& e) {
  Cochain de = insert(a, d, e);
  Cochain ed = insert(a, e, d);
  if (d.arity == 0 && e.arity == 0) return Cochain(0, de.input_cap);
  const bool odd = ((d.arity + 1) * (e.arity + 1)) % 2 == 1;
  de.input_cap = min_cap(de.input_cap, ed.input_cap);
  if (odd)
    de += ed;
  else
    de -= ed;
  if (de.input_cap) std::erase_if(de.entries, [&](const auto& kv) { return a.tuple_weight(kv.first) > *de.input_cap; });
  return de;
}

Cochain hochschild_differential(const Algebra& a, const Cochain& d) {
  return gerstenhaber_bracket(a, multiplication_cochain(a), d);
}

bool is_normalized(const Algebra& a, const Cochain& d) {
  auto u = a.unit_index();
  if (!u) throw AlgebraError("normalized cochains need the unit as a basis vector; change basis first");
  for (const auto& kv : d.entries)
    if (std::find(kv.first.begin(), kv.first.end(), *u) != kv.first.end()) return false;
  return true;
}

Cochain normalize_projection(const Algebra& a, const Cochain& d) {
  auto u = a.unit_index();
  if (!u) throw AlgebraError("normalized cochains need the unit as a basis vector; change basis first");
  Cochain out = d;
  std::erase_if(out.entries,
                [&](const auto& kv) { return std::find(kv.first.begin(), kv.first.end(), *u) != kv.first.end(); });
  return out;
}

Cochain cotrace(const Algebra& r, int n, const Cochain& d) {
  if (n < 1) throw std::invalid_argument("matrix size must be at least 1");
  if (!is_normalized(r, d)) throw AlgebraError("cotrace is only defined on normalized cochains");
  const std::size_t nn = static_cast<std::size_t>(n), m = r.dim(), q = d.arity;
  Cochain out(q, d.input_cap);
  auto idx = [&](std::size_t a, std::size_t b, std::size_t k) { return (a * nn + b) * m + k; };
  if (q == 0) {
    for (const auto& [k, x] : d.at({}))
      for (std::size_t a = 0; a < nn; ++a) out.add({}, idx(a, a, k), x);
    return out;
  }
  // Chains c_0 .. c_q of matrix indices: E_{c0 c1} E_{c1 c2} ... = E_{c0 cq}.
  std::vector<std::size_t> chain(q + 1, 0);
  Index t(q);
  for (;;) {
    for (const auto& [rin, v] : d.entries) {
      for (std::size_t s = 0; s < q; ++s) t[s] = idx(chain[s], chain[s + 1], rin[s]);
      SparseVec w;
      for (const auto& [k, x] : v) w.emplace(idx(chain[0], chain[q], k), x);
      out.add(t, w);
    }
    std::size_t pos = 0;
    while (pos <= q && ++chain[pos] == nn) chain[pos++] = 0;
    if (pos > q) break;
  }
  return out;
}

void for_each_tuple(const Algebra& a, std::size_t arity, std::optional<int> cap,
                    const std::function<void(const Index&)>& fn) {
  Index t(arity, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int w) {
    if (pos == arity) {
      fn(t);
      return;
    }
    for (std::size_t i = 0; i < a.dim(); ++i) {
      int wi = w + a.weight(i);
      if (cap && wi > *cap) continue;
      t[pos] = i;
      rec(pos + 1, wi);
    }
  };
  rec(0, 0);
}

Cochain random_cochain(const Algebra& a, std::size_t arity, std::size_t nonzeros, Rng& rng) {
  Cochain c = zero_cochain(a, arity);
  Index t(arity);
  for (std::size_t placed = 0, tries = 0; placed < nonzeros && tries < 50 * (nonzeros + 1); ++tries) {
    for (auto& x : t) x = rng.below(a.dim());
    if (c.input_cap && a.tuple_weight(t) > *c.input_cap) continue;
    c.add(t, rng.below(a.dim()), rng.nonzero_scalar());
    ++placed;
  }
  return c;
}

}  // namespace gerst
