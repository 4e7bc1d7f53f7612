#include "brauer/isogeny.hpp"

#include "brauer/polynomial.hpp"
#include "brauer/square_class.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace brauer {

PermLattice::PermLattice(std::shared_ptr<const Group> g, std::vector<Subgroup> summands,
                         std::vector<std::vector<int>> representatives)
    : group_(std::move(g)) {
  if (!representatives.empty() && representatives.size() != summands.size())
    throw std::invalid_argument("PermLattice: one representative list per summand expected");
  for (std::size_t i = 0; i < summands.size(); ++i) {
    offsets_.push_back(rank_);
    if (representatives.empty() || representatives[i].empty())
      spaces_.emplace_back(*group_, summands[i]);
    else
      spaces_.emplace_back(*group_, summands[i], representatives[i]);
    rank_ += spaces_.back().size();
  }
}

std::size_t PermLattice::basis_index(std::size_t summand, int element) const {
  return offsets_.at(summand) + spaces_[summand].coset_of_element(element);
}

ZMatrix PermLattice::action(int element) const {
  ZMatrix m(rank_, rank_);
  for (std::size_t s = 0; s < spaces_.size(); ++s)
    for (std::size_t c = 0; c < spaces_[s].size(); ++c)
      m(offsets_[s] + spaces_[s].act(element, static_cast<int>(c)), offsets_[s] + c) = 1;
  return m;
}

RationalModule PermLattice::rational_module() const {
  std::vector<QMatrix> gens;
  for (int g : group_->generators()) gens.push_back(to_rational(action(g)));
  return RationalModule(*group_, std::move(gens));
}

bool IntegerGModuleMap::is_equivariant() const {
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank()) return false;
  for (int g : source.group().generators())
    if (!(target.action(g) * matrix == matrix * source.action(g))) return false;
  return true;
}

bool IntegerGModuleMap::is_isogeny() const { return matrix.square() && !matrix.empty() && determinant() != 0; }

Integer IntegerGModuleMap::determinant() const {
  if (!matrix.square()) throw std::invalid_argument("determinant: map is not square");
  return brauer::determinant(matrix);
}

IntegerGModuleMap map_from_generators(const PermLattice& source, const PermLattice& target,
                                      const std::vector<RingElement>& images) {
  if (images.size() != source.summand_count())
    throw std::invalid_argument("map_from_generators: one image per source summand expected");
  const Group& g = source.group();
  IntegerGModuleMap f{source, target, ZMatrix(target.rank(), source.rank())};
  auto image_vector = [&](const RingElement& img, int x) {
    std::vector<Integer> v(target.rank(), 0);
    for (const auto& t : img) {
      if (t.summand >= target.summand_count()) throw std::invalid_argument("map_from_generators: bad summand");
      v[target.basis_index(t.summand, g.mul(x, t.element))] += t.coefficient;
    }
    return v;
  };
  for (std::size_t s = 0; s < images.size(); ++s) {
    const CosetSpace& space = source.summand(s);
    const auto base = image_vector(images[s], g.identity());
    for (int h : space.subgroup().generators)
      if (image_vector(images[s], h) != base)
        throw std::invalid_argument("map_from_generators: image of generator " + std::to_string(s + 1) +
                                    " is not fixed by its stabilizer");
    for (std::size_t c = 0; c < space.size(); ++c) {
      const auto v = image_vector(images[s], space.representatives()[c]);
      for (std::size_t r = 0; r < v.size(); ++r) f.matrix(r, source.offset(s) + c) = v[r];
    }
  }
  if (!f.is_equivariant()) throw std::logic_error("map_from_generators: result not equivariant");
  return f;
}

IntegerGModuleMap compose_transpose(const IntegerGModuleMap& f) {
  if (!f.matrix.square()) throw std::invalid_argument("compose_transpose: map is not square");
  return {f.source, f.source, f.matrix.transpose() * f.matrix};
}

namespace {

void require_odd_prime(int p) {
  if (p < 3 || !is_prime(Integer(p))) throw std::invalid_argument("build_borel_f: p must be an odd prime");
}

Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

int gpow(const Group& g, int x, long k) {
  const long n = g.element_order(x);
  return g.power(x, ((k % n) + n) % n);
}

}  // namespace

BorelIsogeny build_borel_f(int p) {
  require_odd_prime(p);
  return build_borel_f(std::make_shared<const Group>(presets::borel(p)), p);
}

BorelIsogeny build_borel_f(std::shared_ptr<const Group> gp, int p) {
  require_odd_prime(p);
  const Group& G = *gp;
  const int g = G.named("g"), h = G.named("h");
  if (G.element_order(g) != p || G.element_order(h) != p - 1 || static_cast<long>(G.order()) != p * (p - 1))
    throw std::invalid_argument("build_borel_f: group does not match Borel(p)");
  std::vector<int> gi, hj, hjgi;
  for (int i = 0; i < p; ++i) gi.push_back(gpow(G, g, i));
  for (int j = 0; j < p - 1; ++j) hj.push_back(gpow(G, h, j));
  for (int j = 0; j < p - 1; ++j)
    for (int i = 0; i < p; ++i) hjgi.push_back(G.mul(hj[j], gi[i]));
  const Subgroup zl = G.closure({h}), zm = G.closure({g});

  std::vector<Subgroup> src(p - 1, zl), tgt(p - 1, G.whole());
  std::vector<std::vector<int>> src_reps(p - 1, gi), tgt_reps(p - 1, std::vector<int>{G.identity()});
  src.push_back(zm);
  src_reps.push_back(hj);
  tgt.push_back(G.trivial());
  tgt_reps.push_back(hjgi);
  PermLattice v1(gp, src, src_reps), v2(gp, tgt, tgt_reps);

  const std::size_t yp = p - 1;
  std::vector<RingElement> images;
  RingElement x1{{1, G.identity(), 0}};
  for (int j : hj) x1.push_back({1, j, yp});
  images.push_back(x1);
  for (int k = 2; k <= p - 1; ++k) {
    RingElement xk{{1, G.identity(), 0}, {-1, G.identity(), static_cast<std::size_t>(k - 1)}};
    const int gk = gpow(G, g, 1 - k);
    for (int j : hj) {
      xk.push_back({1, j, yp});
      xk.push_back({-1, G.mul(j, gk), yp});
    }
    images.push_back(xk);
  }
  RingElement xp;
  for (int k = 0; k < p - 1; ++k) xp.push_back({1, G.identity(), static_cast<std::size_t>(k)});
  for (int i : gi) xp.push_back({-1, G.mul(G.inv(h), i), yp});
  images.push_back(xp);

  BorelIsogeny out;
  out.p = p;
  out.f = map_from_generators(v1, v2, images);
  out.ftf = compose_transpose(out.f);
  out.closed_form_det = (p * p - p + 1) * ipow(Integer(p), p * (p - 1) / 2 - 1);

  const std::size_t nl = static_cast<std::size_t>(p) * (p - 1), nm = p - 1;
  const ZMatrix& a = out.ftf.matrix;
  out.alpha1 = a.block(0, 0, nl, nl);
  out.alpha2 = a.block(nl, nl, nm, nm);
  const bool off_zero = a.block(0, nl, nl, nm).is_zero() && a.block(nl, 0, nm, nl).is_zero();

  // x_1 -> sum_{i=1}^{p-1} (g^i x_1 + p x_i), x_k -> p x_k + sum_{i=1}^{p-1} p x_i, on Z_L^{p-1};
  // alpha2 = p + (p-1) sum_j h^j on Z_M.
  ZMatrix e1(nl, nl);
  for (std::size_t k = 0; k < nm; ++k)
    for (std::size_t l = 0; l < nm; ++l)
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
          long v = 0;
          if (k == 0 && l == 0) v = (i == j) ? p : 1;
          else if (i == j) v = (k == l) ? 2 * p : p;
          e1(k * p + i, l * p + j) = v;
        }
  ZMatrix e2(nm, nm);
  for (std::size_t i = 0; i < nm; ++i)
    for (std::size_t j = 0; j < nm; ++j) e2(i, j) = (i == j ? p : 0) + p - 1;
  out.blocks_match = off_zero && out.alpha1 == e1 && out.alpha2 == e2;

  // On Z_M z_1 + Z_K z_2 with basis h^j z_1, z_2.
  out.alpha3 = ZMatrix(p, p);
  out.alpha4 = ZMatrix(p, p);
  for (std::size_t i = 0; i < nm; ++i) {
    for (std::size_t j = 0; j < nm; ++j) {
      out.alpha3(i, j) = (i == j ? 1 : 0) + 1;
      out.alpha4(i, j) = (i == j ? 1 : 0) + p;
    }
    out.alpha3(nm, i) = 1;
    out.alpha4(nm, i) = 1;
    out.alpha3(i, nm) = p - 1;
    out.alpha4(i, nm) = Integer(p - 1) * (p * p - p + 1);
  }
  ZMatrix a2p = direct_sum(out.alpha2, ZMatrix{{p}});
  ZMatrix pid = ZMatrix::identity(p);
  for (std::size_t i = 0; i < nm; ++i) pid(i, i) = p;
  // alpha3 followed by alpha2 + [p] equals [p] + id followed by alpha4.
  out.factorization_holds = a2p * out.alpha3 == out.alpha4 * pid;
  return out;
}

const ZMatrix& printed_borel_f3() {
  static const ZMatrix m{{1, 1, 1, 1, 1, 1, 1, 1},    {0, 0, 0, -1, -1, -1, 1, 1}, {1, 0, 0, 1, -1, 0, 0, -1},
                         {0, 1, 0, 0, 1, -1, 0, -1},  {0, 0, 1, -1, 0, 1, 0, -1},  {1, 0, 0, 1, 0, -1, -1, 0},
                         {0, 0, 1, 0, -1, 1, -1, 0},  {0, 1, 0, -1, 1, 0, -1, 0}};
  return m;
}

const ZMatrix& printed_borel_ftf3() {
  static const ZMatrix m{{3, 1, 1, 3, 0, 0, 0, 0}, {1, 3, 1, 0, 3, 0, 0, 0}, {1, 1, 3, 0, 0, 3, 0, 0},
                         {3, 0, 0, 6, 0, 0, 0, 0}, {0, 3, 0, 0, 6, 0, 0, 0}, {0, 0, 3, 0, 0, 6, 0, 0},
                         {0, 0, 0, 0, 0, 0, 5, 2}, {0, 0, 0, 0, 0, 0, 2, 5}};
  return m;
}

ZMatrix expected_dihedral_alpha2(int n) {
  if (n < 2) throw std::invalid_argument("expected_dihedral_alpha2: n must be at least 2");
  const int s = 1 + n % 2;
  ZMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int d = ((i - j) % n + n) % n;
      long v = 1 + (d == 0 ? 4 : 0);
      if (d == s % n) v -= 2;
      if (d == (n - s) % n) v -= 2;
      a(i, j) = v;
    }
  return a;
}

DihedralIsogeny build_dihedral_maps(int n) {
  if (n < 2) throw std::invalid_argument("build_dihedral_maps: n must be at least 2");
  return build_dihedral_maps(std::make_shared<const Group>(presets::dihedral(n)), n);
}

DihedralIsogeny build_dihedral_maps(std::shared_ptr<const Group> gp, int n) {
  if (n < 2) throw std::invalid_argument("build_dihedral_maps: n must be at least 2");
  const Group& G = *gp;
  const int g = G.named("g"), h = G.named("h");
  if (G.element_order(g) != n || G.element_order(h) != 2 || static_cast<int>(G.order()) != 2 * n)
    throw std::invalid_argument("build_dihedral_maps: group does not match D_2n");
  const int m = n / 2, delta = n % 2;
  auto gk = [&](long k) { return gpow(G, g, k); };
  std::vector<int> gi, fullreps;
  for (int i = 0; i < n; ++i) gi.push_back(gk(i));
  fullreps = gi;
  for (int i = 0; i < n; ++i) fullreps.push_back(G.mul(gi[i], h));

  PermLattice v1(gp, {G.closure({G.mul(gk(-1), h)}), G.closure({G.mul(gk(-2), h)}), G.closure({g})},
                 {gi, gi, {G.identity(), h}});
  PermLattice v2(gp, {G.whole(), G.whole(), G.trivial()}, {{G.identity()}, {G.identity()}, fullreps});

  const int e = G.identity();
  RingElement i1{{1, e, 2}, {1, G.mul(gk(-1), h), 2}};
  const int base = gk(m - 2);
  RingElement i2{{1, e, 1},
                 {1, G.mul(base, g), 2},
                 {-1, G.mul(base, h), 2},
                 {-1, G.mul(base, gk(2 + delta)), 2},
                 {1, G.mul(base, G.mul(gk(1 + delta), h)), 2}};
  RingElement i3{{1, e, 0}};
  for (int x : gi) {
    i3.push_back({1, x, 2});
    i3.push_back({-1, G.mul(x, h), 2});
  }

  DihedralIsogeny out;
  out.n = n;
  out.f = map_from_generators(v1, v2, {i1, i2, i3});
  out.ftf = compose_transpose(out.f);
  const ZMatrix& a = out.ftf.matrix;
  const std::size_t N = n;
  out.alpha1 = a.block(0, 0, N, N);
  out.alpha2 = a.block(N, N, N, N);
  out.alpha3 = a.block(2 * N, 2 * N, 2, 2);
  ZMatrix expect = direct_sum(direct_sum(out.alpha1, out.alpha2), out.alpha3);
  const ZMatrix a3{{2 * n + 1, -(2 * n - 1)}, {-(2 * n - 1), 2 * n + 1}};
  out.blocks_match = expect == a && out.alpha1 == ZMatrix::identity(N).scaled(2) &&
                     out.alpha2 == expected_dihedral_alpha2(n) && out.alpha3 == a3;
  return out;
}

std::string QParityExpression::render() const {
  std::string out;
  for (const auto& t : terms) {
    if (t.coefficient == 0) continue;
    if (!out.empty()) out += " + ";
    if (t.coefficient != 1) out += t.coefficient.get_str() + "*";
    out += "rk_" + t.label;
  }
  if (constant != 0) out += (out.empty() ? "" : " + ") + std::to_string(constant);
  return out.empty() ? "0" : out;
}

int QParityExpression::parity_of(const std::string& label) const {
  for (const auto& t : terms)
    if (t.label == label) return t.parity;
  return 0;
}

QParityExpression q_expression(const PermLattice& lattice, const QMatrix& a, const Integer& p) {
  if (!is_prime(p)) throw std::invalid_argument("q_expression: p must be prime");
  if (a.rows() != lattice.rank() || a.cols() != lattice.rank())
    throw std::invalid_argument("q_expression: endomorphism has the wrong size");
  const RationalModule v = lattice.rational_module();
  for (const auto& gm : v.generator_matrices())
    if (!(gm * a == a * gm)) throw std::invalid_argument("q_expression: endomorphism is not G-equivariant");
  const auto catalog = rational_irreducibles(lattice.group());
  QParityExpression out;
  out.p = p;
  for (const auto& [basis, cc] : isotypic_components(v)) {
    const Irreducible& irr = catalog[identify(catalog, cc)];
    const QMatrix restricted = restrict_action(basis, a);
    const Rational det = determinant(restricted);
    const std::string where = "component " + irr.label + " (dim " + std::to_string(basis.cols()) + ")";
    if (det == 0) throw GateFailure(where + ": endomorphism is not invertible");
    QParityTerm t;
    t.label = irr.label;
    t.dim = irr.dim();
    t.end_dim = irr.endomorphism_dim;
    if (t.end_dim == 1) {
      t.condition = "absolutely irreducible";
    } else {
      const ZPoly rest = strip_rational_roots(to_integer_poly([&] {
        QPoly cp = characteristic_polynomial(restricted);
        Integer l = 1;
        for (const auto& c : cp) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        for (auto& c : cp) c *= l;
        return cp;
      }()));
      if (rest.size() > 2 && !newton_polygon_single_slope(rest, p))
        throw GateFailure(where + ": neither Q_p-irreducibility nor the single-slope condition could be certified");
      t.condition = "single slope";
    }
    t.ord_det = ord_p(det, p);
    t.coefficient = Rational(t.ord_det, static_cast<long>(t.dim));
    t.coefficient.canonicalize();
    const Rational scaled = t.coefficient * static_cast<long>(t.end_dim);
    if (scaled.get_den() != 1)
      throw GateFailure(where + ": coefficient " + t.coefficient.get_str() + " times dim End is not an integer");
    t.parity = static_cast<int>(((scaled.get_num() % 2) + 2) % 2 == 0 ? 0 : 1);
    out.terms.push_back(t);
  }
  std::sort(out.terms.begin(), out.terms.end(), [&](const QParityTerm& x, const QParityTerm& y) {
    auto pos = [&](const std::string& l) {
      for (std::size_t i = 0; i < catalog.size(); ++i)
        if (catalog[i].label == l) return i;
      return catalog.size();
    };
    return pos(x.label) < pos(y.label);
  });
  return out;
}

QParityExpression q_parity(const IntegerGModuleMap& f, const Integer& p) {
  if (!f.is_isogeny()) throw std::invalid_argument("q_parity: map is not an isogeny");
  return q_expression(f.source, to_rational(compose_transpose(f).matrix), p);
}

ZMatrix random_equivariant_endomorphism(const PermLattice& lattice, std::mt19937& rng, int range) {
  const std::size_t n = lattice.rank();
  std::vector<std::size_t> parent(n * n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int g : lattice.group().generators()) {
    const ZMatrix a = lattice.action(g);
    std::vector<std::size_t> img(n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r)
        if (a(r, c) != 0) img[c] = r;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) parent[find(i * n + j)] = find(img[i] * n + img[j]);
  }
  std::uniform_int_distribution<int> coef(-range, range);
  std::vector<long> value(n * n, 0);
  std::vector<bool> drawn(n * n, false);
  ZMatrix out(n, n);
  for (std::size_t k = 0; k < n * n; ++k) {
    const std::size_t root = find(k);
    if (!drawn[root]) {
      value[root] = coef(rng);
      drawn[root] = true;
    }
    out(k / n, k % n) = value[root];
  }
  return out;
}

}  // namespace brauer
