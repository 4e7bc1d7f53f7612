#include "brauer/repq.hpp"

#include "brauer/polynomial.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace brauer {

RationalModule::RationalModule(const Group& g, std::vector<QMatrix> generator_matrices)
    : group_(&g), gens_(std::move(generator_matrices)) {
  if (gens_.size() != g.generators().size())
    throw std::invalid_argument("module needs one matrix per group generator");
  dim_ = gens_.empty() ? 0 : gens_.front().rows();
  for (const auto& a : gens_)
    if (a.rows() != dim_ || a.cols() != dim_) throw std::invalid_argument("module matrices of wrong shape");
}

const QMatrix& RationalModule::matrix(int element) const {
  if (!all_) {
    const Group& g = *group_;
    auto mats = std::make_shared<std::vector<QMatrix>>(g.order());
    std::vector<char> done(g.order(), 0);
    (*mats)[0] = QMatrix::identity(dim_);
    done[0] = 1;
    std::vector<int> queue{0};
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (std::size_t s = 0; s < gens_.size(); ++s) {
        int y = g.mul(queue[k], g.generators()[s]);
        if (done[y]) continue;
        done[y] = 1;
        (*mats)[y] = (*mats)[queue[k]] * gens_[s];
        queue.push_back(y);
      }
    all_ = mats;
  }
  return (*all_)[element];
}

RationalModule permutation_module(const Group& g, const Subgroup& h) {
  CosetSpace cs(g, h);
  std::vector<QMatrix> mats;
  for (int s : g.generators()) {
    QMatrix a(cs.size(), cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) a(cs.act(s, static_cast<int>(i)), i) = 1;
    mats.push_back(std::move(a));
  }
  return RationalModule(g, std::move(mats));
}

RationalModule regular_module(const Group& g) { return permutation_module(g, g.trivial()); }

RationalModule submodule(const RationalModule& m, const QMatrix& basis) {
  std::vector<QMatrix> mats;
  for (const auto& a : m.generator_matrices()) mats.push_back(restrict_action(basis, a));
  return RationalModule(m.group(), std::move(mats));
}

std::vector<Rational> character(const RationalModule& m) {
  std::vector<Rational> chi;
  for (const auto& cc : m.group().conjugacy_classes()) {
    const QMatrix& a = m.matrix(cc.representative);
    Rational t = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    chi.push_back(t);
  }
  return chi;
}

std::vector<Rational> permutation_character(const Group& g, const Subgroup& h) {
  CosetSpace cs(g, h);
  std::vector<Rational> chi;
  for (const auto& cc : g.conjugacy_classes()) {
    long fixed = 0;
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (cs.act(cc.representative, static_cast<int>(i)) == static_cast<int>(i)) ++fixed;
    chi.emplace_back(fixed);
  }
  return chi;
}

std::vector<std::vector<int>> rational_classes(const Group& g) {
  const auto& classes = g.conjugacy_classes();
  std::vector<int> owner(classes.size(), -1);
  std::vector<std::vector<int>> out;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (owner[c] != -1) continue;
    const int x = classes[c].representative, o = classes[c].element_order;
    std::vector<int> members;
    for (int k = 1; k <= o; ++k) {
      if (std::gcd(k, o) != 1) continue;
      int d = g.class_of(g.power(x, k));
      if (owner[d] == -1) {
        owner[d] = static_cast<int>(out.size());
        members.push_back(d);
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  return out;
}

namespace {

ZMatrix permutation_character_matrix(const Group& g) {
  const auto& classes = g.subgroup_classes();
  ZMatrix m(classes.size(), g.conjugacy_classes().size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto chi = permutation_character(g, classes[i].representative);
    for (std::size_t c = 0; c < chi.size(); ++c) m(i, c) = chi[c].get_num();
  }
  return m;
}

}  // namespace

ZMatrix relation_lattice(const Group& g) { return integer_left_kernel(permutation_character_matrix(g)); }

bool is_relation(const Group& g, const RelationVector& v) {
  ZMatrix m = permutation_character_matrix(g);
  if (v.size() != m.rows()) throw std::invalid_argument("relation vector has wrong length");
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Integer s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += v[i] * m(i, c);
    if (s != 0) return false;
  }
  return true;
}

std::vector<Rational> central_character(const RationalModule& m) {
  const Group& g = m.group();
  auto chi = character(m);
  std::vector<Rational> out;
  for (const auto& rc : rational_classes(g)) {
    Rational s = 0;
    for (int c : rc) s += chi[c] * static_cast<long>(g.conjugacy_classes()[c].elements.size());
    out.push_back(s / static_cast<long>(m.dim()));
  }
  return out;
}

std::vector<std::pair<QMatrix, std::vector<Rational>>> isotypic_components(const RationalModule& m) {
  const Group& g = m.group();
  const auto rcs = rational_classes(g);
  const std::size_t n = m.dim();
  std::vector<std::size_t> order(rcs.size());
  std::iota(order.begin(), order.end(), 0);
  auto rc_size = [&](std::size_t r) {
    std::size_t s = 0;
    for (int c : rcs[r]) s += g.conjugacy_classes()[c].elements.size();
    return s;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rc_size(a) < rc_size(b); });

  struct Piece {
    QMatrix basis;
    std::vector<Rational> cc;
  };
  std::vector<Piece> pieces{{QMatrix::identity(n), std::vector<Rational>(rcs.size(), Rational(0))}};
  const unsigned long prime = 2147483647UL;
  for (std::size_t r : order) {
    QMatrix sum(n, n);
    for (int c : rcs[r])
      for (int e : g.conjugacy_classes()[c].elements) sum += m.matrix(e);
    const long bound = static_cast<long>(rc_size(r));
    std::vector<Piece> next;
    for (auto& piece : pieces) {
      const std::size_t d = piece.basis.cols();
      QMatrix x = restrict_action(piece.basis, sum);
      std::size_t found = 0;
      for (long lambda = -bound; lambda <= bound && found < d; ++lambda) {
        QMatrix shifted = x;
        for (std::size_t i = 0; i < d; ++i) shifted(i, i) -= lambda;
        long rk = rank_mod_p(shifted, prime);
        if (rk == static_cast<long>(d)) continue;
        QMatrix k = kernel(shifted);
        if (k.cols() == 0) continue;
        found += k.cols();
        Piece p{column_space(piece.basis * k), piece.cc};
        p.cc[r] = lambda;
        next.push_back(std::move(p));
      }
      if (found != d) throw std::logic_error("class sum is not diagonalizable over Z");
    }
    pieces = std::move(next);
  }
  std::vector<std::pair<QMatrix, std::vector<Rational>>> out;
  for (auto& p : pieces) out.emplace_back(std::move(p.basis), std::move(p.cc));
  return out;
}

std::vector<QMatrix> endomorphism_basis(const RationalModule& m) {
  const std::size_t d = m.dim();
  const auto& gens = m.generator_matrices();
  QMatrix eq(gens.size() * d * d, d * d);
  for (std::size_t s = 0; s < gens.size(); ++s) {
    const QMatrix& a = gens[s];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const std::size_t row = s * d * d + i * d + j;
        // (A X)_{ij} - (X A)_{ij}
        for (std::size_t k = 0; k < d; ++k) {
          if (a(i, k) != 0) eq(row, k * d + j) += a(i, k);
          if (a(k, j) != 0) eq(row, i * d + k) -= a(k, j);
        }
      }
  }
  QMatrix ker = kernel(eq);
  std::vector<QMatrix> out;
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    QMatrix x(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) x(i, j) = ker(i * d + j, c);
    out.push_back(std::move(x));
  }
  return out;
}

std::size_t endomorphism_dim(const RationalModule& m) { return endomorphism_basis(m).size(); }

namespace {

bool commutative(const std::vector<QMatrix>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!(basis[i] * basis[j] == basis[j] * basis[i])) return false;
  return true;
}

// Incremental span with distinct normalized pivots.
class EchelonSpan {
 public:
  explicit EchelonSpan(std::size_t n) : n_(n) {}
  bool add(const QMatrix& v) {
    QMatrix r = v;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Rational f = r(pivots_[k], 0);
      if (f == 0) continue;
      for (std::size_t i = 0; i < n_; ++i)
        if (rows_[k](i, 0) != 0) r(i, 0) -= f * rows_[k](i, 0);
    }
    std::size_t p = 0;
    while (p < n_ && r(p, 0) == 0) ++p;
    if (p == n_) return false;
    Rational inv = 1 / r(p, 0);
    for (std::size_t i = 0; i < n_; ++i) r(i, 0) *= inv;
    rows_.push_back(r);
    pivots_.push_back(p);
    originals_.push_back(v);
    return true;
  }
  std::size_t size() const { return rows_.size(); }
  const QMatrix& original(std::size_t k) const { return originals_[k]; }
  QMatrix basis() const {
    QMatrix b(n_, originals_.size());
    for (std::size_t k = 0; k < originals_.size(); ++k)
      for (std::size_t i = 0; i < n_; ++i) b(i, k) = originals_[k](i, 0);
    return b;
  }

 private:
  std::size_t n_;
  std::vector<QMatrix> rows_, originals_;
  std::vector<std::size_t> pivots_;
};

QMatrix spin(const RationalModule& m, const QMatrix& w) {
  EchelonSpan span(m.dim());
  span.add(w);
  for (std::size_t k = 0; k < span.size(); ++k)
    for (const auto& a : m.generator_matrices()) span.add(a * span.original(k));
  return span.basis();
}

RationalModule certify(RationalModule u) {
  u.irreducible = true;
  return u;
}

// A certified irreducible submodule of the isotypic module v.
RationalModule find_irreducible(const RationalModule& v, const DecomposeOptions& opts) {
  const Group& g = v.group();
  const auto& classes = g.subgroup_classes();
  std::optional<RationalModule> smallest;
  for (std::size_t ci = classes.size(); ci-- > 0;) {
    QMatrix f = fixed_subspace(v, classes[ci].representative);
    for (std::size_t c = 0; c < std::min<std::size_t>(f.cols(), 2); ++c) {
      RationalModule u = submodule(v, spin(v, f.column(c)));
      if (commutative(endomorphism_basis(u))) return certify(std::move(u));
      if (!smallest || u.dim() < smallest->dim()) smallest = u;
    }
  }
  if (!smallest) smallest = v;
  // Split by rational eigenvalues of random endomorphisms.
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  RationalModule u = *smallest;
  for (unsigned b = 0; b < opts.sample_budget; ++b) {
    auto basis = endomorphism_basis(u);
    if (commutative(basis)) return certify(std::move(u));
    QMatrix x(u.dim(), u.dim());
    for (const auto& e : basis) x += e.scaled(coef(rng));
    auto cp = characteristic_polynomial(x);
    Integer den = 1;
    for (const auto& c : cp) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    ZPoly zp;
    for (const auto& c : cp) zp.push_back(Rational(c * den).get_num());
    for (const auto& lambda : rational_roots(zp)) {
      QMatrix shifted = x;
      for (std::size_t i = 0; i < u.dim(); ++i) shifted(i, i) -= lambda;
      QMatrix k = kernel(shifted);
      if (k.cols() > 0 && k.cols() < u.dim()) {
        u = submodule(u, k);
        break;
      }
    }
  }
  throw UndecidedIrreducibility("no certified irreducible found in an isotypic component of dimension " +
                                std::to_string(v.dim()) + " (best candidate has dimension " +
                                std::to_string(u.dim()) + ")");
}

}  // namespace

Decomposition decompose(const RationalModule& m, const DecomposeOptions& opts) {
  if (m.dim() > opts.dim_cap)
    throw CapacityError("module dimension " + std::to_string(m.dim()) + " exceeds cap " + std::to_string(opts.dim_cap));
  Decomposition out;
  out.seed = opts.seed;
  for (auto& [basis, cc] : isotypic_components(m)) {
    RationalModule v = submodule(m, basis);
    RationalModule u = find_irreducible(v, opts);
    if (basis.cols() % u.dim() != 0) throw std::logic_error("irreducible dimension does not divide isotypic dimension");
    Constituent c;
    c.multiplicity = basis.cols() / u.dim();
    c.module = std::move(u);
    c.isotypic_basis = std::move(basis);
    c.central_character = std::move(cc);
    out.parts.push_back(std::move(c));
  }
  return out;
}

std::vector<Irreducible> rational_irreducibles(const Group& g, const DecomposeOptions& opts) {
  const std::size_t target = rational_classes(g).size();
  std::map<std::vector<Rational>, Irreducible> found;
  const auto& classes = g.subgroup_classes();
  for (std::size_t ci = classes.size(); ci-- > 0 && found.size() < target;) {
    const std::size_t index = g.order() / classes[ci].order();
    if (index > opts.dim_cap) continue;
    RationalModule perm = permutation_module(g, classes[ci].representative);
    for (auto& [basis, cc] : isotypic_components(perm)) {
      if (found.count(cc)) continue;
      Irreducible irr;
      irr.module = find_irreducible(submodule(perm, basis), opts);
      irr.character = character(irr.module);
      irr.central_character = cc;
      irr.endomorphism_dim = endomorphism_dim(irr.module);
      found.emplace(cc, std::move(irr));
    }
  }
  if (found.size() < target)
    throw CapacityError("permutation modules within the dimension cap miss some irreducibles");
  std::vector<Irreducible> out;
  for (auto& [cc, irr] : found) out.push_back(std::move(irr));
  auto is_trivial = [&](const Irreducible& irr) {
    return irr.dim() == 1 && std::all_of(irr.character.begin(), irr.character.end(), [](const Rational& x) { return x == 1; });
  };
  std::sort(out.begin(), out.end(), [&](const Irreducible& a, const Irreducible& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    if (is_trivial(a) != is_trivial(b)) return is_trivial(a);
    return a.character > b.character;
  });
  std::map<std::size_t, int> per_dim;
  for (const auto& irr : out)
    if (!is_trivial(irr)) per_dim[irr.dim()]++;
  std::map<std::size_t, int> seen;
  for (auto& irr : out) {
    if (is_trivial(irr)) {
      irr.label = "1";
    } else {
      irr.label = "rho" + std::to_string(irr.dim());
      if (per_dim[irr.dim()] > 1) irr.label += static_cast<char>('a' + seen[irr.dim()]++);
    }
    irr.module.label = irr.label;
  }
  return out;
}

std::size_t identify(const std::vector<Irreducible>& catalog, const std::vector<Rational>& cc) {
  for (std::size_t i = 0; i < catalog.size(); ++i)
    if (catalog[i].central_character == cc) return i;
  throw std::out_of_range("module does not match any catalogued irreducible");
}

QMatrix invariant_inner_product(const RationalModule& m, const QMatrix* seed) {
  const std::size_t d = m.dim();
  QMatrix gram(d, d);
  for (std::size_t e = 0; e < m.group().order(); ++e) {
    const QMatrix& a = m.matrix(static_cast<int>(e));
    gram += seed ? a.transpose() * (*seed) * a : a.transpose() * a;
  }
  return gram;
}

QMatrix fixed_subspace(const RationalModule& m, const Subgroup& h) {
  const std::size_t d = m.dim();
  QMatrix stack(0, d);
  for (int s : h.generators) {
    QMatrix diff = m.matrix(s) - QMatrix::identity(d);
    stack = stack.rows() == 0 ? diff : vstack(stack, diff);
  }
  if (stack.rows() == 0) return QMatrix::identity(d);
  QMatrix k = kernel(stack);
  if (k.cols() == 0) return k;
  return column_space(k);
}

Rational gram_det_on_fixed(const RationalModule& m, const Subgroup& h, const QMatrix& gram) {
  QMatrix p = fixed_subspace(m, h);
  if (p.cols() == 0) return 1;
  QMatrix restricted = p.transpose() * gram * p;
  Rational scale = Rational(1, static_cast<long>(h.order()));
  return determinant(restricted.scaled(scale));
}

}  // namespace brauer
