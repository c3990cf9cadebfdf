#include "gerst/form_cochain.hpp"

#include <algorithm>

namespace gerst {

namespace {

using Entry = std::pair<FiberTuple, Section>;
using Component = std::vector<std::pair<const FiberTuple*, const Section*>>;

std::optional<int> min_cap(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

std::optional<int> shrink(std::optional<int> cap, int by) {
  if (!cap) return cap;
  return *cap - std::max(by, 0);
}

void drop_beyond_cap(FormCochain& c) {
  if (!c.cap) return;
  std::erase_if(c.entries, [&](const auto& kv) { return tuple_yweight(kv.first.second) > *c.cap; });
}

std::map<unsigned, Component> by_mask(const FormCochain& c) {
  std::map<unsigned, Component> out;
  for (const auto& [key, v] : c.entries) out[key.first].emplace_back(&key.second, &v);
  return out;
}

Section scale_by_xpoly(const Section& v, const std::map<Mono, Scalar>& poly, int prec) {
  Section out;
  for (const auto& [m, c] : poly) {
    Section t = v.times_x(m);
    if (!c.is_one()) t *= c;
    out += t;
  }
  return out.truncated(prec);
}

bool divides(Mono a, Mono b) {
  for (int i = 0; i < kMaxJetVars; ++i)
    if (mono_exp(a, i) > mono_exp(b, i)) return false;
  return true;
}

// D o E on the cochain parts: sum_s (-1)^{(n-1)s} D(.., E(..) at slot s, ..).
std::map<FiberTuple, Section> insert_parts(const JetDims& dims, std::size_t m, const Component& d, std::size_t n,
                                           const Component& e) {
  std::map<FiberTuple, Section> out;
  if (m == 0 || d.empty() || e.empty()) return out;
  // slot -> fiber -> entries of d with that argument
  std::vector<std::map<TermKey, std::vector<std::size_t>>> index(m);
  for (std::size_t k = 0; k < d.size(); ++k)
    for (std::size_t s = 0; s < m; ++s) index[s][(*d[k].first)[s]].push_back(k);
  for (const auto& [etuple, evalue] : e) {
    for (const auto& [fiber, poly] : evalue->by_fiber()) {
      for (std::size_t s = 0; s < m; ++s) {
        auto it = index[s].find(fiber);
        if (it == index[s].end()) continue;
        const bool negative = ((n + 1) * s) % 2 == 1;
        for (std::size_t k : it->second) {
          const FiberTuple& dt = *d[k].first;
          FiberTuple t;
          t.reserve(m + n - 1);
          t.insert(t.end(), dt.begin(), dt.begin() + static_cast<long>(s));
          t.insert(t.end(), etuple->begin(), etuple->end());
          t.insert(t.end(), dt.begin() + static_cast<long>(s) + 1, dt.end());
          Section v = scale_by_xpoly(*d[k].second, poly, dims.prec);
          if (negative) v *= Scalar(-1);
          auto& slot = out[t];
          slot += v;
        }
      }
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

}  // namespace

int tuple_yweight(const FiberTuple& t) {
  int w = 0;
  for (TermKey k : t) w += key_yweight(k);
  return w;
}

std::vector<TermKey> fiber_elements(const JetDims& dims, int max_y) {
  std::vector<TermKey> out;
  if (max_y < 0) return out;
  for (Mono y : monomials_up_to(dims.d, max_y))
    for (int a = 0; a < dims.n; ++a)
      for (int b = 0; b < dims.n; ++b) out.push_back(term_key(a, b, 0, y));
  return out;
}

std::vector<FiberTuple> fiber_tuples(const JetDims& dims, std::size_t arity, int max_total_y) {
  std::vector<FiberTuple> out;
  if (max_total_y < 0) return out;
  const auto fibers = fiber_elements(dims, max_total_y);
  FiberTuple t(arity);
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos == arity) {
      out.push_back(t);
      return;
    }
    for (TermKey f : fibers) {
      int w = key_yweight(f);
      if (w > left) continue;
      t[pos] = f;
      self(self, pos + 1, left - w);
    }
  };
  rec(rec, 0, max_total_y);
  return out;
}

FormCochain FormCochain::from_form(const FormSection& h) {
  FormCochain c(0);
  for (const auto& [m, s] : h.comps) c.add(m, {}, s);
  return c;
}

FormSection FormCochain::to_form() const {
  if (arity != 0) throw std::invalid_argument("only arity-0 cochains are forms");
  FormSection h;
  for (const auto& [key, v] : entries) h.add(key.first, v);
  return h;
}

std::size_t FormCochain::nonzeros() const {
  std::size_t n = 0;
  for (const auto& kv : entries) n += kv.second.terms.size();
  return n;
}

void FormCochain::add(unsigned mask, const FiberTuple& t, const Section& v, const Scalar& c) {
  if (v.is_zero() || c.is_zero()) return;
  auto key = std::make_pair(mask, t);
  auto it = entries.find(key);
  if (it == entries.end()) {
    Section s = v;
    if (!c.is_one()) s *= c;
    entries.emplace(std::move(key), std::move(s));
    return;
  }
  if (c.is_one())
    it->second += v;
  else
    it->second += c * v;
  if (it->second.is_zero()) entries.erase(it);
}

FormCochain& FormCochain::operator+=(const FormCochain& o) {
  if (o.arity != arity) throw std::invalid_argument("adding cochains of different arity");
  cap = min_cap(cap, o.cap);
  for (const auto& [key, v] : o.entries) add(key.first, key.second, v);
  drop_beyond_cap(*this);
  return *this;
}

FormCochain& FormCochain::operator-=(const FormCochain& o) {
  if (o.arity != arity) throw std::invalid_argument("subtracting cochains of different arity");
  cap = min_cap(cap, o.cap);
  for (const auto& [key, v] : o.entries) add(key.first, key.second, v, Scalar(-1));
  drop_beyond_cap(*this);
  return *this;
}

FormCochain& FormCochain::operator*=(const Scalar& s) {
  if (s.is_zero()) entries.clear();
  for (auto& kv : entries) kv.second *= s;
  return *this;
}

bool operator==(const FormCochain& a, const FormCochain& b) {
  return a.arity == b.arity && a.entries == b.entries;
}

FormCochain FormCochain::restricted(int max_input, int max_degree) const {
  FormCochain out(arity, cap ? std::min(*cap, max_input) : max_input);
  for (const auto& [key, v] : entries) {
    if (tuple_yweight(key.second) > max_input) continue;
    Section t = v.truncated(max_degree);
    if (!t.is_zero()) out.entries.emplace(key, std::move(t));
  }
  return out;
}

int FormCochain::shift() const {
  int s = 0;
  for (const auto& [key, v] : entries) s = std::max(s, v.max_yweight() - tuple_yweight(key.second));
  return s;
}

Scalar defect_norm(const FormCochain& c) {
  Scalar total(0);
  for (const auto& kv : c.entries)
    for (const auto& [k, x] : kv.second.terms) total += x.magnitude();
  return total;
}

Scalar defect_norm(const FormSection& s) { return defect_norm(FormCochain::from_form(s)); }

FormCochain delta(const JetDims& dims, const FormCochain& d, int window) {
  const std::size_t q = d.arity;
  FormCochain out(q + 1, min_cap(window, d.cap));
  const int cap = *out.cap;
  const auto fibers = fiber_elements(dims, cap);
  const bool q_even = q % 2 == 0;  // (-1)^{q-1} = -1
  for (const auto& [key, v] : d.entries) {
    const auto& [mask, tau] = key;
    const int w = tuple_yweight(tau);
    if (w > cap) continue;
    const Scalar sgn = popcount(mask) % 2 ? Scalar(-1) : Scalar(1);
    const Scalar left_sign = q_even ? -sgn : sgn;  // (-1)^p (-1)^{q-1}
    FiberTuple t(q + 1);
    for (TermKey b : fibers) {
      if (w + key_yweight(b) > cap) break;
      Section bs = Section::term(b);
      std::copy(tau.begin(), tau.end(), t.begin());
      t[q] = b;
      out.add(mask, t, Section::multiply(v, bs, dims.prec), sgn);
      t[0] = b;
      std::copy(tau.begin(), tau.end(), t.begin() + 1);
      out.add(mask, t, Section::multiply(bs, v, dims.prec), left_sign);
    }
    // -(-1)^{q-1} sum_i (-1)^i D(.., b_i b_{i+1}, ..)
    for (std::size_t i = 0; i < q; ++i) {
      const TermKey f = tau[i];
      const Mono beta = key_y(f);
      const Scalar c = (i % 2 == 0) ? -left_sign : left_sign;
      for (int e = 0; e < dims.n; ++e)
        for (Mono b1 : divisors(beta, dims.d)) {
          FiberTuple u;
          u.reserve(q + 1);
          u.insert(u.end(), tau.begin(), tau.begin() + static_cast<long>(i));
          u.push_back(term_key(key_row(f), e, 0, b1));
          u.push_back(term_key(e, key_col(f), 0, beta - b1));
          u.insert(u.end(), tau.begin() + static_cast<long>(i) + 1, tau.end());
          out.add(mask, u, v, c);
        }
    }
  }
  drop_beyond_cap(out);
  return out;
}

FormCochain bracket_L(const JetDims& dims, const FormCochain& x, const FormCochain& y) {
  const std::size_t m = x.arity, n = y.arity;
  const std::size_t arity = m + n == 0 ? 0 : m + n - 1;
  std::optional<int> cap = min_cap(min_cap(y.cap, shrink(x.cap, y.shift())), min_cap(x.cap, shrink(y.cap, x.shift())));
  FormCochain out(arity, cap);
  if (m == 0 && n == 0) return out;
  const bool yx_even = ((m + 1) * (n + 1)) % 2 == 0;  // (-1)^{(m-1)(n-1)} == 1
  auto xm = by_mask(x), ym = by_mask(y);
  for (const auto& [i, xc] : xm)
    for (const auto& [j, yc] : ym) {
      const int ws = wedge_sign(i, j);
      if (ws == 0) continue;
      const bool koszul_odd = ((m + 1) * static_cast<std::size_t>(popcount(j))) % 2 == 1;
      const Scalar sign(koszul_odd ? -ws : ws);
      for (const auto& [t, v] : insert_parts(dims, m, xc, n, yc)) out.add(i | j, t, v, sign);
      const Scalar sign2 = yx_even ? -sign : sign;
      for (const auto& [t, v] : insert_parts(dims, n, yc, m, xc)) out.add(i | j, t, v, sign2);
    }
  drop_beyond_cap(out);
  return out;
}

FormCochain iota(const JetDims& dims, const FormSection& h, const FormCochain& d) {
  FormCochain r = bracket_L(dims, FormCochain::from_form(h), d);
  return Scalar(-1) * std::move(r);
}

FormCochain inner_lie(const JetDims& dims, const Section& h, const FormCochain& d) {
  FormCochain out(d.arity, shrink(d.cap, h.max_yweight()));
  if (h.is_zero()) return out;
  for (const auto& [key, v] : d.entries) {
    const auto& [mask, tau] = key;
    out.add(mask, tau, commutator(h, v, dims.prec));
    for (std::size_t s = 0; s < tau.size(); ++s) {
      const TermKey f = tau[s];
      const Mono yf = key_y(f);
      // b -> coefficient polynomial of f in [h, b]
      std::map<TermKey, std::map<Mono, Scalar>> pre;
      for (const auto& [hk, hc] : h.terms) {
        const Mono ya = key_y(hk);
        if (!divides(ya, yf)) continue;
        if (key_row(hk) == key_row(f)) {
          auto& poly = pre[term_key(key_col(hk), key_col(f), 0, yf - ya)];
          poly[key_x(hk)] += hc;
        }
        if (key_col(hk) == key_col(f)) {
          auto& poly = pre[term_key(key_row(f), key_row(hk), 0, yf - ya)];
          poly[key_x(hk)] -= hc;
        }
      }
      FiberTuple t = tau;
      for (auto& [b, poly] : pre) {
        std::erase_if(poly, [](const auto& kv) { return kv.second.is_zero(); });
        if (poly.empty()) continue;
        t[s] = b;
        out.add(mask, t, scale_by_xpoly(v, poly, dims.prec), Scalar(-1));
      }
    }
  }
  drop_beyond_cap(out);
  return out;
}

FormCochain ad_inner(const JetDims& dims, const FormSection& h, const FormCochain& d) {
  FormCochain out(d.arity, shrink(d.cap, h.max_yweight()));
  for (const auto& [i, hi] : h.comps) {
    FormCochain l = inner_lie(dims, hi, d);
    const int k = popcount(i);
    for (const auto& [key, v] : l.entries) {
      const int ws = wedge_sign(i, key.first);
      if (ws == 0) continue;
      out.add(i | key.first, key.second, v, Scalar(k % 2 ? ws : -ws));
    }
  }
  drop_beyond_cap(out);
  return out;
}

FormCochain nabla_tot(const JetDims& dims, const std::vector<Section>& gamma, const FormCochain& d) {
  FormCochain out(d.arity, d.cap);
  for (int i = 0; i < dims.d; ++i) {
    const unsigned bit = 1U << i;
    FormCochain li(d.arity, d.cap);
    for (const auto& [key, v] : d.entries) {
      const auto& [mask, tau] = key;
      li.add(mask, tau, v.dx(i) - v.dy(i));
      // -sum_s D(.., -d/dy_i b, ..): the argument b = tau_s * y_i contributes (beta_i + 1) D(tau).
      FiberTuple t = tau;
      for (std::size_t s = 0; s < tau.size(); ++s) {
        const TermKey f = tau[s];
        t[s] = term_key(key_row(f), key_col(f), 0, key_y(f) + mono_unit(i));
        li.add(mask, t, v, Scalar(mono_exp(key_y(f), i) + 1));
        t[s] = f;
      }
    }
    if (static_cast<std::size_t>(i) < gamma.size() && !gamma[i].is_zero()) li += inner_lie(dims, gamma[i], d);
    for (const auto& [key, v] : li.entries) {
      const int ws = wedge_sign(bit, key.first);
      if (ws != 0) out.add(bit | key.first, key.second, v, Scalar(ws));
    }
  }
  drop_beyond_cap(out);
  return out;
}

FormSection nabla_tot(const JetDims& dims, const std::vector<Section>& gamma, const FormSection& h) {
  FormSection out = nabla_can(h, dims.d);
  for (int i = 0; i < dims.d && static_cast<std::size_t>(i) < gamma.size(); ++i) {
    const unsigned bit = 1U << i;
    for (const auto& [m, s] : h.comps) {
      const int ws = wedge_sign(bit, m);
      if (ws != 0) out.add(bit | m, commutator(gamma[i], s, dims.prec), Scalar(ws));
    }
  }
  return out.truncated(dims.prec);
}

void MixedCochain::add(const FormCochain& c, const Scalar& s) {
  auto it = parts.find(c.arity);
  if (it == parts.end()) {
    FormCochain copy = c;
    if (!s.is_one()) copy *= s;
    parts.emplace(c.arity, std::move(copy));
  } else if (s.is_one()) {
    it->second += c;
  } else {
    it->second += s * c;
  }
}

MixedCochain& MixedCochain::operator+=(const MixedCochain& o) {
  for (const auto& [q, c] : o.parts) add(c);
  return *this;
}

MixedCochain& MixedCochain::operator-=(const MixedCochain& o) {
  for (const auto& [q, c] : o.parts) add(c, Scalar(-1));
  return *this;
}

bool MixedCochain::is_zero() const {
  return std::all_of(parts.begin(), parts.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

std::size_t MixedCochain::nonzeros() const {
  std::size_t n = 0;
  for (const auto& kv : parts) n += kv.second.nonzeros();
  return n;
}

MixedCochain exp_iota(const JetDims& dims, const FormSection& f, const MixedCochain& d, int s) {
  MixedCochain out = d;
  MixedCochain term = d;
  for (int k = 1; k <= dims.d; ++k) {
    MixedCochain next;
    for (const auto& [q, c] : term.parts) {
      if (q == 0) continue;  // iota kills arity-0 cochains
      FormCochain r = iota(dims, f, c);
      r *= Scalar(s) / Scalar(k);
      next.add(r);
    }
    term = std::move(next);
    if (term.parts.empty()) break;
    out += term;
  }
  return out;
}

std::vector<FormCochain> spanning_generators(const JetDims& dims, std::size_t arity, int max_input, int max_output,
                                             const std::vector<unsigned>& masks) {
  std::vector<FormCochain> out;
  const auto outputs = fiber_elements(dims, max_output);
  for (const auto& t : fiber_tuples(dims, arity, max_input))
    for (TermKey g : outputs)
      for (unsigned m : masks) {
        FormCochain c(arity);
        c.add(m, t, Section::term(g));
        out.push_back(std::move(c));
      }
  return out;
}

FormSection random_form(const JetDims& dims, int form_degree, int x_cap, int y_min, int y_cap, std::size_t terms,
                        Rng& rng, bool traceless) {
  FormSection out;
  const auto xs = monomials_up_to(dims.d, x_cap);
  std::vector<Mono> ys;
  for (Mono y : monomials_up_to(dims.d, y_cap))
    if (mono_degree(y) >= y_min) ys.push_back(y);
  if (ys.empty()) return out;
  for (unsigned mask = 0; mask < (1U << dims.d); ++mask) {
    if (popcount(mask) != form_degree) continue;
    Section s;
    for (std::size_t k = 0; k < terms; ++k) {
      unsigned a = static_cast<unsigned>(rng.below(static_cast<std::size_t>(dims.n)));
      unsigned b = static_cast<unsigned>(rng.below(static_cast<std::size_t>(dims.n)));
      s.add(term_key(a, b, xs[rng.below(xs.size())], ys[rng.below(ys.size())]), rng.nonzero_scalar());
    }
    if (traceless) s = s.traceless(dims.n);
    out.add(mask, s);
  }
  return out;
}

}  // namespace gerst
