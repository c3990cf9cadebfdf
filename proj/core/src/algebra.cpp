#include "gerst/algebra.hpp"

#include <algorithm>
#include <map>

namespace gerst {

namespace {

const SparseVec kEmpty;

std::string to_label(const std::vector<int>& exps, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t v = 0; v < exps.size(); ++v) {
    if (exps[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[v];
    if (exps[v] > 1) out += "^" + std::to_string(exps[v]);
  }
  return out.empty() ? "1" : out;
}

void enumerate_monomials(int vars, int degree, std::vector<int>& cur, int pos, std::vector<std::vector<int>>& out) {
  if (pos == vars - 1) {
    cur[pos] = degree;
    out.push_back(cur);
    return;
  }
  for (int e = degree; e >= 0; --e) {
    cur[pos] = e;
    enumerate_monomials(vars, degree - e, cur, pos + 1, out);
  }
}

}  // namespace

Algebra Algebra::from_table(std::vector<std::string> labels, Vec unit, const std::vector<TableEntry>& table,
                            std::optional<std::vector<int>> weights, std::optional<int> weight_cap, bool validate) {
  Algebra a;
  const std::size_t n = labels.size();
  if (unit.size() != n) throw AlgebraError("unit has wrong length");
  if (weights && weights->size() != n) throw AlgebraError("weights have wrong length");
  if (weight_cap && !weights) throw AlgebraError("weight cap requires weights");
  a.labels_ = std::move(labels);
  a.unit_ = std::move(unit);
  a.weights_ = std::move(weights);
  a.cap_ = weight_cap;
  a.products_.assign(n * n, SparseVec{});
  for (const auto& e : table) {
    if (e.i >= n || e.j >= n || e.k >= n) throw AlgebraError("table index out of range");
    if (a.overflows(e.i, e.j)) throw AlgebraError("table entry beyond the weight cap");
    auto& slot = a.products_[e.i * n + e.j];
    slot[e.k] += e.value;
    if (slot[e.k].is_zero()) slot.erase(e.k);
  }
  if (a.weights_) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [k, x] : a.products_[i * n + j])
          if (a.weight(k) != a.weight(i) + a.weight(j))
            throw AlgebraError("product e_" + std::to_string(i) + " e_" + std::to_string(j) + " is not weight-additive");
  }
  SparseVec u = to_sparse(a.unit_);
  if (u.size() == 1 && u.begin()->second.is_one()) a.unit_index_ = u.begin()->first;

  if (!validate) return a;
  for (std::size_t i = 0; i < n; ++i) {
    SparseVec ei{{i, Scalar(1)}};
    if (a.multiply(u, ei) != ei || a.multiply(ei, u) != ei)
      throw AlgebraError("unit axiom fails on basis element " + a.labels_[i]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a.overflows(i, j)) continue;
      const SparseVec& ij = a.products_[i * n + j];
      for (std::size_t k = 0; k < n; ++k) {
        if (a.weights_ && a.cap_ && a.weight(i) + a.weight(j) + a.weight(k) > *a.cap_) continue;
        SparseVec left, right;
        for (const auto& [m, x] : ij) axpy(left, x, a.product(m, k));
        if (!a.overflows(j, k))
          for (const auto& [m, x] : a.products_[j * n + k]) axpy(right, x, a.product(i, m));
        if (left != right)
          throw AlgebraError("associativity fails on (" + a.labels_[i] + ", " + a.labels_[j] + ", " + a.labels_[k] + ")");
      }
    }
  return a;
}

int Algebra::tuple_weight(const std::vector<std::size_t>& t) const {
  int w = 0;
  for (auto i : t) w += weight(i);
  return w;
}

bool Algebra::overflows(std::size_t i, std::size_t j) const {
  return cap_ && weight(i) + weight(j) > *cap_;
}

const SparseVec& Algebra::product(std::size_t i, std::size_t j) const {
  if (overflows(i, j))
    throw WeightOverflow("product " + labels_[i] + " * " + labels_[j] + " exceeds weight cap " + std::to_string(*cap_));
  return products_[i * dim() + j];
}

SparseVec Algebra::multiply(const SparseVec& a, const SparseVec& b) const {
  SparseVec out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) axpy(out, x * y, product(i, j));
  return out;
}

Vec Algebra::multiply(const Vec& a, const Vec& b) const { return to_dense(multiply(to_sparse(a), to_sparse(b)), dim()); }

Vec Algebra::commutator(const Vec& a, const Vec& b) const {
  Vec ab = multiply(a, b);
  axpy(ab, Scalar(-1), multiply(b, a));
  return ab;
}

Vec Algebra::basis_vector(std::size_t i) const {
  Vec v = zero_vec(dim());
  v.at(i) = Scalar(1);
  return v;
}

std::vector<TableEntry> Algebra::table() const {
  std::vector<TableEntry> out;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) {
      if (overflows(i, j)) continue;
      for (const auto& [k, x] : products_[i * dim() + j]) out.push_back({i, j, k, x});
    }
  return out;
}

bool operator==(const Algebra& a, const Algebra& b) {
  return a.labels_ == b.labels_ && a.unit_ == b.unit_ && a.products_ == b.products_ && a.weights_ == b.weights_ &&
         a.cap_ == b.cap_;
}

std::vector<std::vector<int>> polynomial_monomials(int vars, int weight_cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(vars, 0);
  for (int deg = 0; deg <= weight_cap; ++deg) enumerate_monomials(vars, deg, cur, 0, out);
  return out;
}

Algebra make_polynomial_algebra(int vars, int weight_cap, const std::vector<std::string>& names) {
  if (vars < 1) throw std::invalid_argument("polynomial algebra needs at least one variable");
  if (weight_cap < 0) throw std::invalid_argument("weight cap must be non-negative");
  std::vector<std::string> var_names = names;
  if (var_names.empty()) {
    if (vars == 1)
      var_names = {"x"};
    else
      for (int v = 0; v < vars; ++v) var_names.push_back("x" + std::to_string(v + 1));
  }
  if (static_cast<int>(var_names.size()) != vars) throw std::invalid_argument("wrong number of variable names");
  auto monos = polynomial_monomials(vars, weight_cap);
  std::map<std::vector<int>, std::size_t> index;
  std::vector<std::string> labels;
  std::vector<int> weights;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    index[monos[i]] = i;
    labels.push_back(to_label(monos[i], var_names));
    int w = 0;
    for (int e : monos[i]) w += e;
    weights.push_back(w);
  }
  std::vector<TableEntry> table;
  for (std::size_t i = 0; i < monos.size(); ++i)
    for (std::size_t j = 0; j < monos.size(); ++j) {
      if (weights[i] + weights[j] > weight_cap) continue;
      std::vector<int> e(vars);
      for (int v = 0; v < vars; ++v) e[v] = monos[i][v] + monos[j][v];
      table.push_back({i, j, index.at(e), Scalar(1)});
    }
  Vec unit = zero_vec(monos.size());
  unit[0] = Scalar(1);
  return Algebra::from_table(std::move(labels), std::move(unit), table, std::move(weights), weight_cap, false);
}

Algebra make_matrix_algebra(int n, const Algebra& base) {
  if (n < 1) throw std::invalid_argument("matrix size must be at least 1");
  const std::size_t m = base.dim();
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<std::string> labels;
  std::optional<std::vector<int>> weights;
  if (base.weighted()) weights.emplace();
  for (std::size_t a = 0; a < nn; ++a)
    for (std::size_t b = 0; b < nn; ++b)
      for (std::size_t k = 0; k < m; ++k) {
        std::string unit_label = "E" + std::to_string(a + 1) + std::to_string(b + 1);
        labels.push_back(m == 1 && base.labels()[0] == "1" ? unit_label : unit_label + "*" + base.labels()[k]);
        if (weights) weights->push_back(base.weight(k));
      }
  auto idx = [&](std::size_t a, std::size_t b, std::size_t k) { return (a * nn + b) * m + k; };
  std::vector<TableEntry> table;
  auto base_table = base.table();
  for (std::size_t a = 0; a < nn; ++a)
    for (std::size_t b = 0; b < nn; ++b)
      for (std::size_t c = 0; c < nn; ++c)
        for (const auto& e : base_table) table.push_back({idx(a, b, e.i), idx(b, c, e.j), idx(a, c, e.k), e.value});
  Vec unit = zero_vec(nn * nn * m);
  for (std::size_t a = 0; a < nn; ++a)
    for (std::size_t k = 0; k < m; ++k) unit[idx(a, a, k)] = base.unit()[k];
  return Algebra::from_table(std::move(labels), std::move(unit), table, std::move(weights), base.weight_cap(),
                             false);
}

Algebra make_truncated_polynomial_algebra(int m) {
  if (m < 1) throw std::invalid_argument("truncation must be positive");
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
  std::vector<TableEntry> table;
  for (int i = 0; i < m; ++i)
    for (int j = 0; i + j < m; ++j)
      table.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(i + j), Scalar(1)});
  Vec unit = zero_vec(m);
  unit[0] = Scalar(1);
  return Algebra::from_table(std::move(labels), std::move(unit), table);
}

Algebra make_ground_field() {
  Vec unit{Scalar(1)};
  return Algebra::from_table({"1"}, unit, {{0, 0, 0, Scalar(1)}});
}

Algebra unit_adapted(const Algebra& a) {
  if (a.unit_index()) return a;
  const std::size_t n = a.dim();
  std::size_t p = 0;
  while (p < n && a.unit()[p].is_zero()) ++p;
  if (p == n) throw AlgebraError("zero unit");
  const Vec& u = a.unit();
  const Scalar up_inv = u[p].inverse();
  auto to_new = [&](const SparseVec& v) {
    SparseVec out = v;
    auto it = v.find(p);
    if (it == v.end()) return out;
    Scalar cp = it->second * up_inv;
    for (std::size_t i = 0; i < n; ++i)
      if (i != p && !u[i].is_zero()) axpy(out, -cp, SparseVec{{i, u[i]}});
    out[p] = cp;
    return out;
  };
  auto from_new = [&](std::size_t i) { return i == p ? to_sparse(u) : SparseVec{{i, Scalar(1)}}; };
  std::vector<TableEntry> table;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a.overflows(i, j)) continue;
      for (const auto& [k, x] : to_new(a.multiply(from_new(i), from_new(j)))) table.push_back({i, j, k, x});
    }
  auto labels = a.labels();
  labels[p] = "1";
  Vec unit = zero_vec(n);
  unit[p] = Scalar(1);
  return Algebra::from_table(std::move(labels), std::move(unit), table, a.weights(), a.weight_cap());
}

std::vector<Vec> SubspaceBasis::vectors() const {
  std::vector<Vec> out;
  for (const auto& r : echelon.basis()) out.push_back(to_dense(r, ambient));
  return out;
}

std::vector<std::size_t> SubspaceBasis::graded_dims(const Algebra& a) const {
  std::vector<std::size_t> dims;
  for (std::size_t c : echelon.pivot_columns()) {
    std::size_t w = static_cast<std::size_t>(a.weight(c));
    if (dims.size() <= w) dims.resize(w + 1, 0);
    ++dims[w];
  }
  return dims;
}

namespace {

// Basis indices grouped by weight (a single group for unweighted algebras).
std::map<int, std::vector<std::size_t>> weight_groups(const Algebra& a) {
  std::map<int, std::vector<std::size_t>> g;
  for (std::size_t i = 0; i < a.dim(); ++i) g[a.weight(i)].push_back(i);
  return g;
}

}  // namespace

SubspaceBasis center(const Algebra& a) {
  const std::size_t n = a.dim();
  SubspaceBasis out{n, EchelonBasis(n)};
  // Commutation equations are weight-homogeneous; solve one weight at a time.
  for (const auto& [w, cols] : weight_groups(a)) {
    SparseMatrix m(n * n, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const std::size_t j = cols[c];
      for (std::size_t i = 0; i < n; ++i) {
        if (a.overflows(j, i) || a.overflows(i, j)) continue;
        SparseVec comm = a.product(j, i);
        axpy(comm, Scalar(-1), a.product(i, j));
        for (const auto& [k, x] : comm) m.add(i * n + k, c, x);
      }
    }
    for (const auto& kv : kernel_basis(m)) {
      SparseVec v;
      for (const auto& [c, x] : kv) v.emplace(cols[c], x);
      out.echelon.insert(v);
    }
  }
  return out;
}

SubspaceBasis commutator_submodule(const Algebra& a) {
  const std::size_t n = a.dim();
  SubspaceBasis z = center(a);
  SubspaceBasis out{n, EchelonBasis(n)};
  auto zs = z.echelon.basis();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a.overflows(i, j)) continue;
      SparseVec comm = a.product(i, j);
      axpy(comm, Scalar(-1), a.product(j, i));
      if (comm.empty()) continue;
      for (const auto& zv : zs) {
        int wz = a.weight(zv.begin()->first);
        if (a.weight_cap() && wz + a.weight(i) + a.weight(j) > *a.weight_cap()) continue;
        out.echelon.insert(a.multiply(zv, comm));
      }
    }
  return out;
}

Decomposition decompose(const Algebra& a, const Vec& element) {
  const std::size_t n = a.dim();
  auto zb = center(a).echelon.basis();
  auto cb = commutator_submodule(a).echelon.basis();
  SparseMatrix m(n, zb.size() + cb.size());
  for (std::size_t c = 0; c < zb.size(); ++c) m.set_column(c, zb[c]);
  for (std::size_t c = 0; c < cb.size(); ++c) m.set_column(zb.size() + c, cb[c]);
  const std::size_t r = rank(m);
  if (r != n || m.cols() != n)
    throw AlgebraError("center + [A,A] is not a direct sum spanning A: span defect " + std::to_string(n - r) +
                       ", overlap " + std::to_string(m.cols() - r));
  auto x = solve(m, to_sparse(element));
  Decomposition d{zero_vec(n), zero_vec(n)};
  for (const auto& [c, s] : *x) {
    if (c < zb.size())
      for (const auto& [k, v] : zb[c]) d.central[k] += s * v;
    else
      for (const auto& [k, v] : cb[c - zb.size()]) d.traceless[k] += s * v;
  }
  return d;
}

SparseMatrix derivation_ad(const Algebra& a, const Vec& element) {
  const std::size_t n = a.dim();
  SparseMatrix m(n, n);
  SparseVec e = to_sparse(element);
  for (std::size_t j = 0; j < n; ++j) {
    SparseVec ej{{j, Scalar(1)}};
    SparseVec c = a.multiply(e, ej);
    axpy(c, Scalar(-1), a.multiply(ej, e));
    m.set_column(j, c);
  }
  return m;
}

SparseMatrix left_multiplication(const Algebra& a, const Vec& element) {
  const std::size_t n = a.dim();
  SparseMatrix m(n, n);
  SparseVec e = to_sparse(element);
  for (std::size_t j = 0; j < n; ++j) m.set_column(j, a.multiply(e, SparseVec{{j, Scalar(1)}}));
  return m;
}

std::size_t derivation_space_dim(const Algebra& a) {
  if (a.weight_cap()) throw AlgebraError("derivation space requires a finite-dimensional algebra");
  const std::size_t n = a.dim();
  // Unknown D_{k,i} = coefficient of e_k in D(e_i), column k * n + i.
  SparseMatrix m(n * n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t row0 = (i * n + j) * n;
      for (const auto& [l, c] : a.product(i, j))
        for (std::size_t k = 0; k < n; ++k) m.add(row0 + k, k * n + l, c);
      // - D(e_i) e_j - e_i D(e_j)
      for (std::size_t p = 0; p < n; ++p) {
        for (const auto& [k, c] : a.product(p, j)) m.add(row0 + k, p * n + i, -c);
        for (const auto& [k, c] : a.product(i, p)) m.add(row0 + k, p * n + j, -c);
      }
    }
  return n * n - rank(m);
}

std::size_t ad_rank_on(const Algebra& a, const SubspaceBasis& s) {
  const std::size_t n = a.dim();
  auto vs = s.vectors();
  SparseMatrix m(n * n, vs.size());
  for (std::size_t c = 0; c < vs.size(); ++c) {
    SparseMatrix ad = derivation_ad(a, vs[c]);
    for (std::size_t r = 0; r < n; ++r)
      for (const auto& [col, x] : ad.row(r)) m.set(r * n + col, c, x);
  }
  return rank(m);
}

}  // namespace gerst
