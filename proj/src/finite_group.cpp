#include "procstar/finite_group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

#include "procstar/linalg.hpp"

namespace procstar {

namespace {

std::string normalize_family(std::string f) {
  std::replace(f.begin(), f.end(), '-', '_');
  return f;
}

std::string describe(const GroupDescriptor& d) {
  const std::string fam = normalize_family(d.family);
  std::string s = fam + "(";
  if (fam == "direct_product") {
    for (std::size_t i = 0; i < d.factors.size(); ++i) s += (i ? "," : "") + describe(d.factors[i]);
  } else {
    for (std::size_t i = 0; i < d.params.size(); ++i)
      s += (i ? "," : "") + std::to_string(d.params[i]);
  }
  return s + ")";
}

int single_param(const GroupDescriptor& d) {
  if (d.params.size() != 1)
    throw UsageError("family '" + d.family + "' takes exactly one parameter");
  return d.params[0];
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a)
    return std::numeric_limits<std::size_t>::max();
  return a * b;
}

}  // namespace

GroupDescriptor cyclic(int n) { return {"cyclic", {n}, {}}; }
GroupDescriptor elementary_abelian_2(int k) { return {"elementary_abelian_2", {k}, {}}; }
GroupDescriptor dihedral(int n) { return {"dihedral", {n}, {}}; }
GroupDescriptor symmetric(int n) { return {"symmetric", {n}, {}}; }
GroupDescriptor heisenberg_mod(int n) { return {"heisenberg_mod", {n}, {}}; }
GroupDescriptor direct_product(std::vector<GroupDescriptor> factors) {
  return {"direct_product", {}, std::move(factors)};
}

int permutation_index(std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  int rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (perm[j] < perm[i]) ++smaller;
    int fact = 1;
    for (int f = 2; f < n - i; ++f) fact *= f;
    rank += smaller * fact;
  }
  return rank;
}

std::vector<int> permutation_from_index(int n, int index) {
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> perm;
  perm.reserve(n);
  for (int i = n; i >= 1; --i) {
    int fact = 1;
    for (int f = 2; f < i; ++f) fact *= f;
    const int q = index / fact;
    index %= fact;
    perm.push_back(pool[q]);
    pool.erase(pool.begin() + q);
  }
  return perm;
}

int heisenberg_mod_index(int n, std::int64_t a, std::int64_t b, std::int64_t c) {
  auto r = [n](std::int64_t v) { return static_cast<int>(((v % n) + n) % n); };
  return (r(a) * n + r(b)) * n + r(c);
}

int dihedral_index(int n, int rotation, int reflection) {
  return ((rotation % n) + n) % n + n * (reflection & 1);
}

std::size_t family_order(const GroupDescriptor& d) {
  const std::string fam = normalize_family(d.family);
  if (fam == "direct_product") {
    std::size_t o = 1;
    for (const auto& f : d.factors) o = saturating_mul(o, family_order(f));
    return o;
  }
  const int p = single_param(d);
  if (fam == "cyclic") {
    if (p < 1) throw UsageError("cyclic(n) needs n >= 1");
    return static_cast<std::size_t>(p);
  }
  if (fam == "elementary_abelian_2") {
    if (p < 0) throw UsageError("elementary_abelian_2(k) needs k >= 0");
    if (p >= 62) return std::numeric_limits<std::size_t>::max();
    return std::size_t{1} << p;
  }
  if (fam == "dihedral") {
    if (p < 1) throw UsageError("dihedral(n) needs n >= 1");
    return 2 * static_cast<std::size_t>(p);
  }
  if (fam == "symmetric") {
    if (p < 1 || p > 6) throw UsageError("symmetric(n) is supported for 1 <= n <= 6");
    std::size_t o = 1;
    for (int i = 2; i <= p; ++i) o *= static_cast<std::size_t>(i);
    return o;
  }
  if (fam == "heisenberg_mod") {
    if (p < 1) throw UsageError("heisenberg_mod(n) needs n >= 1");
    const auto n = static_cast<std::size_t>(p);
    return saturating_mul(saturating_mul(n, n), n);
  }
  throw UsageError("unsupported group family '" + d.family + "'");
}

FiniteGroupPtr build_finite_group(const GroupDescriptor& d, std::size_t order_cap) {
  const std::size_t ord = family_order(d);
  if (ord > order_cap)
    throw CapExceeded(describe(d) + " has order " + std::to_string(ord) + " above the cap " +
                      std::to_string(order_cap));
  const int n = static_cast<int>(ord);
  std::vector<int> t(static_cast<std::size_t>(n) * n);
  auto at = [&](int x, int y) -> int& { return t[static_cast<std::size_t>(x) * n + y]; };
  const std::string fam = normalize_family(d.family);

  if (fam == "cyclic") {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) at(x, y) = (x + y) % n;
  } else if (fam == "elementary_abelian_2") {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) at(x, y) = x ^ y;
  } else if (fam == "dihedral") {
    const int m = d.params[0];
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const int i = x % m, a = x / m, j = y % m, b = y / m;
        at(x, y) = dihedral_index(m, a ? i - j : i + j, a ^ b);
      }
  } else if (fam == "symmetric") {
    const int k = d.params[0];
    std::vector<std::vector<int>> perms(n);
    for (int x = 0; x < n; ++x) perms[x] = permutation_from_index(k, x);
    std::vector<int> comp(k);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        // (xy)(i) = x(y(i))
        for (int i = 0; i < k; ++i) comp[i] = perms[x][perms[y][i]];
        at(x, y) = permutation_index(comp);
      }
  } else if (fam == "heisenberg_mod") {
    const int m = d.params[0];
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        const int a = x / (m * m), b = (x / m) % m, c = x % m;
        const int a2 = y / (m * m), b2 = (y / m) % m, c2 = y % m;
        at(x, y) = heisenberg_mod_index(m, a + a2, b + b2, c + c2 + a * b2);
      }
  } else if (fam == "direct_product") {
    std::vector<FiniteGroupPtr> fs;
    for (const auto& f : d.factors) fs.push_back(build_finite_group(f, order_cap));
    // Row-major: last factor varies fastest.
    std::vector<int> stride(fs.size(), 1);
    for (int i = static_cast<int>(fs.size()) - 2; i >= 0; --i)
      stride[i] = stride[i + 1] * fs[i + 1]->order();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        int z = 0;
        for (std::size_t i = 0; i < fs.size(); ++i) {
          const int xi = (x / stride[i]) % fs[i]->order();
          const int yi = (y / stride[i]) % fs[i]->order();
          z += fs[i]->mul(xi, yi) * stride[i];
        }
        at(x, y) = z;
      }
  }
  return std::make_shared<const FiniteGroup>(n, std::move(t), describe(d));
}

FiniteGroup::FiniteGroup(int order, std::vector<int> table, std::string label)
    : order_(order), table_(std::move(table)), label_(std::move(label)) {
  if (order_ < 1) throw UsageError("group order must be positive");
  if (table_.size() != static_cast<std::size_t>(order_) * order_)
    throw UsageError("multiplication table has the wrong size");
  for (int v : table_)
    if (v < 0 || v >= order_) throw UsageError("multiplication table entry out of range");

  identity_ = -1;
  for (int e = 0; e < order_ && identity_ < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < order_ && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw UsageError(label_ + ": no identity element");

  inverse_.assign(order_, -1);
  for (int x = 0; x < order_; ++x) {
    if (inverse_[x] >= 0) continue;
    for (int y = 0; y < order_; ++y)
      if (mul(x, y) == identity_ && mul(y, x) == identity_) {
        inverse_[x] = y;
        inverse_[y] = x;
        break;
      }
    if (inverse_[x] < 0) throw UsageError(label_ + ": element without inverse");
  }

  std::vector<char> in_sub(order_, 0);
  in_sub[identity_] = 1;
  for (int x = 0; x < order_; ++x) {
    if (in_sub[x]) continue;
    generators_.push_back(x);
    for (int v : closure(generators_)) in_sub[v] = 1;
  }

  bfs_parent_.assign(order_, -1);
  bfs_generator_.assign(order_, -1);
  std::deque<int> queue{identity_};
  bfs_parent_[identity_] = identity_;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      const int y = mul(x, generators_[i]);
      if (bfs_parent_[y] < 0) {
        bfs_parent_[y] = x;
        bfs_generator_[y] = static_cast<int>(i);
        queue.push_back(y);
      }
    }
  }
}

int FiniteGroup::power(int x, std::int64_t e) const {
  if (e < 0) {
    x = inv(x);
    e = -e;
  }
  const int ord = element_order(x);
  e %= ord;
  int acc = identity_;
  for (std::int64_t i = 0; i < e; ++i) acc = mul(acc, x);
  return acc;
}

int FiniteGroup::element_order(int x) const {
  int k = 1;
  for (int y = x; y != identity_; y = mul(y, x)) ++k;
  return k;
}

std::vector<int> FiniteGroup::word(int x) const {
  std::vector<int> w;
  while (x != identity_) {
    w.push_back(bfs_generator_[x]);
    x = bfs_parent_[x];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
  std::vector<char> seen(order_, 0);
  std::vector<std::vector<int>> classes;
  for (int x = 0; x < order_; ++x) {
    if (seen[x]) continue;
    std::vector<int> cls;
    for (int g = 0; g < order_; ++g) {
      const int y = mul(mul(g, x), inv(g));
      if (!seen[y]) {
        seen[y] = 1;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<int> FiniteGroup::class_of() const {
  std::vector<int> idx(order_, -1);
  const auto classes = conjugacy_classes();
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int x : classes[c]) idx[x] = static_cast<int>(c);
  return idx;
}

bool FiniteGroup::is_associative(std::uint64_t seed, int samples) const {
  if (order_ <= 200) {
    for (int x = 0; x < order_; ++x)
      for (int y = 0; y < order_; ++y)
        for (int z = 0; z < order_; ++z)
          if (mul(mul(x, y), z) != mul(x, mul(y, z))) return false;
    return true;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, order_ - 1);
  for (int s = 0; s < samples; ++s) {
    const int x = pick(rng), y = pick(rng), z = pick(rng);
    if (mul(mul(x, y), z) != mul(x, mul(y, z))) return false;
  }
  return true;
}

std::vector<int> FiniteGroup::closure(std::span<const int> gens) const {
  std::vector<char> in(order_, 0);
  std::vector<int> members{identity_};
  in[identity_] = 1;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (int g : gens) {
      const int y = mul(members[i], g);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<int> FiniteGroup::normal_closure(std::span<const int> gens) const {
  std::vector<int> conj;
  std::vector<char> seen(order_, 0);
  for (int s : gens)
    for (int g = 0; g < order_; ++g) {
      const int c = mul(mul(g, s), inv(g));
      if (!seen[c]) {
        seen[c] = 1;
        conj.push_back(c);
      }
    }
  return closure(conj);
}

RegularRepresentation::RegularRepresentation(FiniteGroupPtr group) : group_(std::move(group)) {
  const int n = group_->order();
  perms_.reserve(n);
  for (int g = 0; g < n; ++g) {
    Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> p(n);
    for (int h = 0; h < n; ++h) p.indices()(h) = group_->mul(g, h);
    perms_.push_back(std::move(p));
  }
}

Eigen::MatrixXd RegularRepresentation::dense(int g) const {
  return perms_[g].toDenseMatrix().cast<double>();
}

Eigen::MatrixXcd RegularRepresentation::operator_of(const Eigen::VectorXcd& coeffs) const {
  const int n = group_->order();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    if (coeffs(s) == std::complex<double>(0.0)) continue;
    for (int y = 0; y < n; ++y) m(group_->mul(s, y), y) += coeffs(s);
  }
  return m;
}

RegularRepresentation regular_representation(FiniteGroupPtr group) {
  return RegularRepresentation(std::move(group));
}

std::vector<std::complex<double>> Representation::character() const {
  std::vector<std::complex<double>> chi;
  chi.reserve(matrices.size());
  for (const auto& m : matrices) chi.push_back(m.trace());
  return chi;
}

std::vector<int> IrrepDecomposition::dims() const {
  std::vector<int> d;
  for (const auto& b : blocks) d.push_back(b.dim);
  return d;
}

bool is_unitary_representation(const Representation& rep, double tol) {
  return std::all_of(rep.matrices.begin(), rep.matrices.end(),
                     [&](const Eigen::MatrixXcd& m) { return is_unitary(m, tol); });
}

bool is_homomorphism(const FiniteGroup& g, const Representation& rep, double tol) {
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y)
      if (max_abs_diff(rep.matrices[g.mul(x, y)], rep.matrices[x] * rep.matrices[y]) > tol)
        return false;
  return true;
}

bool is_irreducible(const FiniteGroup& g, const Representation& rep, double tol,
                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Eigen::MatrixXcd x = random_complex(rep.dim, rep.dim, rng);
  Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(rep.dim, rep.dim);
  for (const auto& m : rep.matrices) avg += m * x * m.adjoint();
  avg /= static_cast<double>(g.order());
  return distance_from_scalar(avg) <= tol * std::max(1.0, x.cwiseAbs().maxCoeff());
}

std::complex<double> character_inner(const FiniteGroup& g, const Representation& a,
                                     const Representation& b) {
  std::complex<double> s = 0.0;
  for (int x = 0; x < g.order(); ++x) s += a.matrices[x].trace() * std::conj(b.matrices[x].trace());
  return s / static_cast<double>(g.order());
}

double block_norm(const IrrepDecomposition& dec, const Eigen::VectorXcd& coeffs) {
  double best = 0.0;
  for (const auto& block : dec.blocks) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(block.dim, block.dim);
    for (Eigen::Index g = 0; g < coeffs.size(); ++g)
      if (coeffs(g) != std::complex<double>(0.0)) m += coeffs(g) * block.matrices[g];
    best = std::max(best, spectral_norm(m));
  }
  return best;
}

namespace {

// Consecutive runs of sorted eigenvalues whose gaps stay below `gap`.
std::vector<std::pair<int, int>> clusters(const Eigen::VectorXd& ev, double gap) {
  std::vector<std::pair<int, int>> out;
  int start = 0;
  for (int i = 1; i <= ev.size(); ++i)
    if (i == ev.size() || ev(i) - ev(i - 1) >= gap) {
      out.emplace_back(start, i - start);
      start = i;
    }
  return out;
}

int exact_sqrt(int v) {
  const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(v))));
  return r * r == v ? r : -1;
}

IrrepDecomposition decompose_once(const FiniteGroup& g, std::mt19937_64& rng, const Config& cfg) {
  const int n = g.order();
  const auto classes = g.conjugacy_classes();
  const auto cls = g.class_of();
  std::normal_distribution<double> n01;

  // Hermitian central element sum_C (c_C K_C + conj(c_C) K_C^*), normalised per class size.
  std::vector<std::complex<double>> c(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i)
    c[i] = std::complex<double>(n01(rng), n01(rng)) / static_cast<double>(classes[i].size());
  Eigen::VectorXcd w(n);
  for (int x = 0; x < n; ++x) w(x) = c[cls[x]] + std::conj(c[cls[g.inv(x)]]);

  Eigen::MatrixXcd central = Eigen::MatrixXcd::Zero(n, n);
  for (int s = 0; s < n; ++s)
    for (int y = 0; y < n; ++y) central(g.mul(s, y), y) += w(s);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(central);
  if (es.info() != Eigen::Success) throw PrecisionError("central eigensolver failed");
  const auto iso = clusters(es.eigenvalues(), cfg.tol.spec);
  if (iso.size() != classes.size())
    throw PrecisionError("isotypic split found " + std::to_string(iso.size()) +
                         " clusters for " + std::to_string(classes.size()) + " classes");

  std::vector<std::complex<double>> r(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : r) v = std::complex<double>(n01(rng), n01(rng)) * scale;

  IrrepDecomposition dec;
  for (const auto& [start, size] : iso) {
    const int d = exact_sqrt(size);
    if (d < 0) throw PrecisionError("isotypic component of non-square dimension");
    const Eigen::MatrixXcd basis = es.eigenvectors().middleCols(start, size);

    Eigen::MatrixXcd q;
    if (d == 1) {
      q = basis;
    } else {
      // Right translations (R_g f)(x) = f(xg) commute with the left regular action.
      Eigen::MatrixXcd rp = Eigen::MatrixXcd::Zero(n, size);
      for (int h = 0; h < n; ++h)
        for (int x = 0; x < n; ++x) rp.row(x) += r[h] * basis.row(g.mul(x, h));
      const Eigen::MatrixXcd b = basis.adjoint() * rp;
      const Eigen::MatrixXcd herm = b + b.adjoint();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> inner(herm);
      if (inner.info() != Eigen::Success) throw PrecisionError("commutant eigensolver failed");
      const auto parts = clusters(inner.eigenvalues(), cfg.tol.spec);
      if (static_cast<int>(parts.size()) != d ||
          std::any_of(parts.begin(), parts.end(), [d](auto p) { return p.second != d; }))
        throw PrecisionError("commutant split does not have the expected multiplicity");
      q = basis * inner.eigenvectors().leftCols(d);
    }

    Irrep block;
    block.dim = d;
    block.matrices.resize(n);
    Eigen::MatrixXcd shifted(n, d);
    for (int x = 0; x < n; ++x) {
      // (L_x Q)(y) = Q(x^-1 y)
      for (int y = 0; y < n; ++y) shifted.row(y) = q.row(g.mul(g.inv(x), y));
      block.matrices[x] = q.adjoint() * shifted;
    }
    dec.blocks.push_back(std::move(block));
    dec.multiplicities.push_back(d);
  }
  return dec;
}

void certify(const FiniteGroup& g, const IrrepDecomposition& dec, const Config& cfg) {
  const double tol = cfg.tol.alg * std::max(1.0, std::sqrt(static_cast<double>(g.order())));
  int total = 0;
  for (const auto& b : dec.blocks) {
    total += b.dim * b.dim;
    if (!is_unitary_representation(b, tol)) throw PrecisionError("block is not unitary");
    for (int x = 0; x < g.order(); ++x)
      for (int s : g.generators())
        if (max_abs_diff(b.matrices[g.mul(x, s)], b.matrices[x] * b.matrices[s]) > tol)
          throw PrecisionError("block is not a homomorphism");
    if (std::abs(character_inner(g, b, b) - 1.0) > tol)
      throw PrecisionError("block is not irreducible");
  }
  if (total != g.order()) throw PrecisionError("dimension count does not match the group order");
  for (std::size_t i = 0; i < dec.blocks.size(); ++i)
    for (std::size_t j = i + 1; j < dec.blocks.size(); ++j)
      if (std::abs(character_inner(g, dec.blocks[i], dec.blocks[j])) > tol)
        throw PrecisionError("two blocks are equivalent");
}

bool character_less(const Irrep& a, const Irrep& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  const auto ca = a.character(), cb = b.character();
  auto key = [](double v) { return std::llround(v * 1e6); };
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (key(ca[i].real()) != key(cb[i].real())) return key(ca[i].real()) > key(cb[i].real());
    if (key(ca[i].imag()) != key(cb[i].imag())) return key(ca[i].imag()) > key(cb[i].imag());
  }
  return false;
}

}  // namespace

IrrepDecomposition decompose_regular(const FiniteGroupPtr& group, std::uint64_t seed,
                                     const Config& cfg) {
  const FiniteGroup& g = *group;
  if (static_cast<std::size_t>(g.order()) > cfg.caps.group_order)
    throw CapExceeded("group order above the decomposition cap");
  std::string last_error;
  for (int attempt = 0; attempt < std::max(1, cfg.caps.decompose_retries); ++attempt) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt));
    try {
      IrrepDecomposition dec = decompose_once(g, rng, cfg);
      certify(g, dec, cfg);
      std::vector<std::size_t> order(dec.blocks.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return character_less(dec.blocks[a], dec.blocks[b]);
      });
      IrrepDecomposition sorted;
      for (std::size_t i : order) {
        sorted.blocks.push_back(std::move(dec.blocks[i]));
        sorted.multiplicities.push_back(dec.multiplicities[i]);
      }
      sorted.attempts = attempt + 1;
      return sorted;
    } catch (const PrecisionError& e) {
      last_error = e.what();
    }
  }
  throw PrecisionError("decompose_regular(" + g.label() + ") failed after retries: " + last_error);
}

}  // namespace procstar
