#include "gerst/jet_poly.hpp"

#include <bit>
#include <stdexcept>

namespace gerst {

int mono_degree(Mono m) {
  int d = 0;
  for (int i = 0; i < kMaxJetVars; ++i) d += mono_exp(m, i);
  return d;
}

std::vector<Mono> monomials_up_to(int vars, int max_degree) {
  if (vars < 0 || vars > kMaxJetVars) throw std::invalid_argument("at most three jet variables are supported");
  std::vector<Mono> out;
  std::vector<int> e(static_cast<std::size_t>(vars), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == vars - 1) {
      e[pos] = left;
      Mono m = 0;
      for (int i = 0; i < vars; ++i) m += static_cast<Mono>(e[i]) << (8 * i);
      out.push_back(m);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[pos] = k;
      self(self, pos + 1, left - k);
    }
  };
  for (int deg = 0; deg <= max_degree; ++deg) {
    if (vars == 0) {
      if (deg == 0) out.push_back(0);
      continue;
    }
    rec(rec, 0, deg);
  }
  return out;
}

std::vector<Mono> divisors(Mono m, int vars) {
  std::vector<Mono> out{0};
  for (int i = 0; i < vars; ++i) {
    std::vector<Mono> next;
    for (Mono base : out)
      for (int k = 0; k <= mono_exp(m, i); ++k) next.push_back(base + static_cast<Mono>(k) * mono_unit(i));
    out.swap(next);
  }
  return out;
}

std::string mono_str(Mono m, int vars, char var) {
  std::string s;
  for (int i = 0; i < vars; ++i) {
    int e = mono_exp(m, i);
    if (e == 0) continue;
    if (!s.empty()) s += "*";
    s += var;
    if (vars > 1) s += std::to_string(i + 1);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

Section Section::term(TermKey k, const Scalar& c) {
  Section s;
  s.add(k, c);
  return s;
}

Section Section::identity(int n) {
  Section s;
  for (int a = 0; a < n; ++a) s.add(term_key(a, a, 0, 0), Scalar(1));
  return s;
}

void Section::add(TermKey k, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

Section& Section::operator+=(const Section& o) {
  for (const auto& [k, c] : o.terms) add(k, c);
  return *this;
}

Section& Section::operator-=(const Section& o) {
  for (const auto& [k, c] : o.terms) add(k, -c);
  return *this;
}

Section& Section::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms.clear();
    return *this;
  }
  for (auto& kv : terms) kv.second *= s;
  return *this;
}

Section Section::multiply(const Section& a, const Section& b, int max_degree) {
  Section out;
  if (a.is_zero() || b.is_zero()) return out;
  std::vector<std::vector<std::pair<TermKey, const Scalar*>>> rows(16);
  for (const auto& [k, c] : b.terms) rows[key_row(k)].emplace_back(k, &c);
  for (const auto& [ka, ca] : a.terms) {
    const int da = key_degree(ka);
    if (max_degree >= 0 && da > max_degree) continue;
    for (const auto& [kb, cb] : rows[key_col(ka)]) {
      if (max_degree >= 0 && da + key_degree(kb) > max_degree) continue;
      out.add(term_key(key_row(ka), key_col(kb), key_x(ka) + key_x(kb), key_y(ka) + key_y(kb)), ca * *cb);
    }
  }
  return out;
}

Section Section::truncated(int max_degree) const {
  if (max_degree < 0) return *this;
  Section out;
  for (const auto& [k, c] : terms)
    if (key_degree(k) <= max_degree) out.terms.emplace_hint(out.terms.end(), k, c);
  return out;
}

Section Section::y_truncated(int max_y) const {
  Section out;
  for (const auto& [k, c] : terms)
    if (key_yweight(k) <= max_y) out.terms.emplace_hint(out.terms.end(), k, c);
  return out;
}

int Section::max_degree() const {
  int d = -1;
  for (const auto& kv : terms) d = std::max(d, key_degree(kv.first));
  return d;
}

int Section::min_degree() const {
  int d = -1;
  for (const auto& kv : terms) {
    int k = key_degree(kv.first);
    if (d < 0 || k < d) d = k;
  }
  return d;
}

int Section::max_yweight() const {
  int d = -1;
  for (const auto& kv : terms) d = std::max(d, key_yweight(kv.first));
  return d;
}

Section Section::dx(int i) const {
  Section out;
  for (const auto& [k, c] : terms) {
    int e = mono_exp(key_x(k), i);
    if (e == 0) continue;
    out.add(term_key(key_row(k), key_col(k), key_x(k) - mono_unit(i), key_y(k)), c * Scalar(e));
  }
  return out;
}

Section Section::dy(int i) const {
  Section out;
  for (const auto& [k, c] : terms) {
    int e = mono_exp(key_y(k), i);
    if (e == 0) continue;
    out.add(term_key(key_row(k), key_col(k), key_x(k), key_y(k) - mono_unit(i)), c * Scalar(e));
  }
  return out;
}

Section Section::times_x(Mono m) const {
  Section out;
  for (const auto& [k, c] : terms)
    out.terms.emplace(term_key(key_row(k), key_col(k), key_x(k) + m, key_y(k)), c);
  return out;
}

std::map<TermKey, std::map<Mono, Scalar>> Section::by_fiber() const {
  std::map<TermKey, std::map<Mono, Scalar>> out;
  for (const auto& [k, c] : terms) out[fiber_of(k)].emplace(key_x(k), c);
  return out;
}

Section Section::trace() const {
  Section out;
  for (const auto& [k, c] : terms)
    if (key_row(k) == key_col(k)) out.add(term_key(0, 0, key_x(k), key_y(k)), c);
  return out;
}

Section Section::traceless(int n) const {
  Section out = *this;
  const Scalar inv = Scalar(n).inverse();
  for (const auto& [k, c] : trace().terms)
    for (int a = 0; a < n; ++a) out.add(term_key(a, a, key_x(k), key_y(k)), -c * inv);
  return out;
}

std::string Section::str(int vars) const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : terms) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")E" + std::to_string(key_row(k) + 1) + std::to_string(key_col(k) + 1);
    std::string xm = mono_str(key_x(k), vars, 'x'), ym = mono_str(key_y(k), vars, 'y');
    if (!xm.empty()) s += "*" + xm;
    if (!ym.empty()) s += "*" + ym;
  }
  return s;
}

Section commutator(const Section& a, const Section& b, int max_degree) {
  return Section::multiply(a, b, max_degree) - Section::multiply(b, a, max_degree);
}

Section exp_series(const Section& s, int n, int max_degree) {
  if (s.min_degree() == 0) throw std::invalid_argument("exponential needs a generator without constant term");
  Section out = Section::identity(n);
  Section power = Section::identity(n);
  for (int k = 1;; ++k) {
    power = Section::multiply(power, s, max_degree);
    power *= Scalar(k).inverse();
    if (power.is_zero()) break;
    out += power;
  }
  return out;
}

Section log_series(const Section& s, int max_degree) {
  if (s.min_degree() == 0) throw std::invalid_argument("logarithm needs an argument without constant term");
  Section out, power;
  for (int k = 1;; ++k) {
    power = k == 1 ? s.truncated(max_degree) : Section::multiply(power, s, max_degree);
    if (power.is_zero()) break;
    Scalar c = Scalar(k).inverse();
    if (k % 2 == 0) c = -c;
    out += c * power;
  }
  return out;
}

bool FormSection::is_zero() const {
  for (const auto& kv : comps)
    if (!kv.second.is_zero()) return false;
  return true;
}

void FormSection::add(unsigned mask, const Section& s, const Scalar& c) {
  if (s.is_zero() || c.is_zero()) return;
  auto& slot = comps[mask];
  if (c.is_one())
    slot += s;
  else
    slot += c * s;
  if (slot.is_zero()) comps.erase(mask);
}

FormSection& FormSection::operator+=(const FormSection& o) {
  for (const auto& [m, s] : o.comps) add(m, s);
  return *this;
}

FormSection& FormSection::operator-=(const FormSection& o) {
  for (const auto& [m, s] : o.comps) add(m, s, Scalar(-1));
  return *this;
}

FormSection& FormSection::operator*=(const Scalar& s) {
  if (s.is_zero()) comps.clear();
  for (auto& kv : comps) kv.second *= s;
  return *this;
}

bool operator==(const FormSection& a, const FormSection& b) {
  FormSection d = a;
  d -= b;
  return d.is_zero();
}

FormSection FormSection::truncated(int max_degree) const {
  FormSection out;
  for (const auto& [m, s] : comps) out.add(m, s.truncated(max_degree));
  return out;
}

int FormSection::max_yweight() const {
  int w = -1;
  for (const auto& kv : comps) w = std::max(w, kv.second.max_yweight());
  return w;
}

int popcount(unsigned m) { return std::popcount(m); }

int wedge_sign(unsigned i, unsigned j) {
  if (i & j) return 0;
  int inversions = 0;
  for (unsigned a = i; a; a &= a - 1) {
    unsigned bit = a & -a;
    inversions += std::popcount(j & (bit - 1));
  }
  return inversions % 2 ? -1 : 1;
}

FormSection wedge(const FormSection& a, const FormSection& b, int max_degree) {
  FormSection out;
  for (const auto& [i, s] : a.comps)
    for (const auto& [j, t] : b.comps) {
      int sign = wedge_sign(i, j);
      if (sign != 0) out.add(i | j, Section::multiply(s, t, max_degree), Scalar(sign));
    }
  return out;
}

FormSection graded_commutator(const FormSection& a, const FormSection& b, int max_degree) {
  FormSection out;
  for (const auto& [i, s] : a.comps)
    for (const auto& [j, t] : b.comps) {
      int sign = wedge_sign(i, j);
      if (sign != 0) out.add(i | j, commutator(s, t, max_degree), Scalar(sign));
    }
  return out;
}

FormSection nabla_can(const FormSection& a, int d) {
  FormSection out;
  for (const auto& [m, s] : a.comps)
    for (int i = 0; i < d; ++i) {
      const unsigned bit = 1U << i;
      int sign = wedge_sign(bit, m);
      if (sign != 0) out.add(bit | m, s.dx(i) - s.dy(i), Scalar(sign));
    }
  return out;
}

FormSection de_rham(const FormSection& a, int d) {
  FormSection out;
  for (const auto& [m, s] : a.comps)
    for (int i = 0; i < d; ++i) {
      const unsigned bit = 1U << i;
      int sign = wedge_sign(bit, m);
      if (sign != 0) out.add(bit | m, s.dx(i), Scalar(sign));
    }
  return out;
}

FormSection one_form(const std::vector<Section>& s) {
  FormSection out;
  for (std::size_t i = 0; i < s.size(); ++i) out.add(1U << i, s[i]);
  return out;
}

}  // namespace gerst
