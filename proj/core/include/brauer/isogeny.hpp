#pragma once

#include "brauer/group.hpp"
#include "brauer/matrix.hpp"
#include "brauer/repq.hpp"

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace brauer {

// Direct sum of permutation lattices Z[G/H_i], each with basis the left
// cosets x H_i in the order of its coset representatives.
class PermLattice {
 public:
  PermLattice() = default;
  PermLattice(std::shared_ptr<const Group> g, std::vector<Subgroup> summands,
              std::vector<std::vector<int>> representatives = {});

  const Group& group() const { return *group_; }
  std::shared_ptr<const Group> group_ptr() const { return group_; }
  std::size_t rank() const { return rank_; }
  std::size_t summand_count() const { return spaces_.size(); }
  const CosetSpace& summand(std::size_t i) const { return spaces_[i]; }
  std::size_t offset(std::size_t i) const { return offsets_[i]; }
  // Basis index of x e_i, e_i the generator of summand i.
  std::size_t basis_index(std::size_t summand, int element) const;
  ZMatrix action(int element) const;
  RationalModule rational_module() const;

 private:
  std::shared_ptr<const Group> group_;
  std::vector<CosetSpace> spaces_;
  std::vector<std::size_t> offsets_;
  std::size_t rank_ = 0;
};

// Coefficient times group element applied to a target generator.
struct RingTerm {
  long coefficient = 1;
  int element = 0;
  std::size_t summand = 0;
};
using RingElement = std::vector<RingTerm>;

struct IntegerGModuleMap {
  PermLattice source, target;
  ZMatrix matrix;  // target.rank() x source.rank()

  bool is_equivariant() const;
  bool is_isogeny() const;
  Integer determinant() const;
};

// The map sending the generator of source summand i to images[i]; throws if
// an image is not fixed by the corresponding subgroup.
IntegerGModuleMap map_from_generators(const PermLattice& source, const PermLattice& target,
                                      const std::vector<RingElement>& images);
// f^t f as an endomorphism of the source.
IntegerGModuleMap compose_transpose(const IntegerGModuleMap& f);

struct BorelIsogeny {
  int p = 3;
  IntegerGModuleMap f;
  IntegerGModuleMap ftf;
  ZMatrix alpha1, alpha2;  // blocks of f^t f on Z_L^{p-1} and on Z_M
  ZMatrix alpha3, alpha4;  // on Z_M + Z_K
  Integer closed_form_det;  // (p^2-p+1) p^{p(p-1)/2-1}
  bool blocks_match = false;         // f^t f = alpha1 + alpha2 with the displayed blocks
  bool factorization_holds = false;  // alpha3 then (alpha2 + [p]) equals alpha4 then ([p] + id)
};
// Bases: x_k, g x_k, ..., g^{p-1} x_k; x_p, h x_p, ...; y_1..y_{p-1}; h^j g^i y_p.
BorelIsogeny build_borel_f(int p);
BorelIsogeny build_borel_f(std::shared_ptr<const Group> g, int p);

// The p = 3 matrices of f and f^t f as printed, rows indexed by the bases
// {y1,y2,y3,gy3,g2y3,hy3,hgy3,hg2y3} and columns by {x1,gx1,g2x1,x2,gx2,g2x2,x3,hx3}.
const ZMatrix& printed_borel_f3();
const ZMatrix& printed_borel_ftf3();

struct DihedralIsogeny {
  int n = 3;
  IntegerGModuleMap f;
  IntegerGModuleMap ftf;
  ZMatrix alpha1, alpha2, alpha3;
  bool blocks_match = false;
};
// G = D_{2n} with generators g (order n) and h; V1 = Z[G/<g^-1 h>] + Z[G/<g^-2 h>] + Z[G/<g>],
// V2 = Z + Z + Z[G].
DihedralIsogeny build_dihedral_maps(int n);
DihedralIsogeny build_dihedral_maps(std::shared_ptr<const Group> g, int n);

// 4 I - 2 P^{1+d} - 2 P^{-1-d} + J on the basis g^i v_2, n = 2m + d.
ZMatrix expected_dihedral_alpha2(int n);

struct QParityTerm {
  std::string label;       // irreducible label from the rational catalog
  std::size_t dim = 0;
  std::size_t end_dim = 1;
  Rational coefficient;    // ord_p det on the isotypic component / dim rho
  long ord_det = 0;
  int parity = 0;          // coefficient * end_dim mod 2
  std::string condition;   // "absolutely irreducible" or "single slope"
};
struct QParityExpression {
  Integer p;
  std::vector<QParityTerm> terms;  // one per irreducible occurring in the source
  long constant = 0;
  std::string render() const;      // e.g. "rk_1 + rk_rho1 + rk_rho2"
  int parity_of(const std::string& label) const;
};

struct GateFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Endomorphism `a` of the rational module of `lattice`, split over the isotypic
// components. Throws GateFailure naming the component where neither
// sufficient condition holds or the coefficient times dim End is not an integer.
QParityExpression q_expression(const PermLattice& lattice, const QMatrix& a, const Integer& p);
// q_expression of f^t f; f must be an isogeny.
QParityExpression q_parity(const IntegerGModuleMap& f, const Integer& p);

// Random G-equivariant endomorphism: integer combination of orbital matrices.
ZMatrix random_equivariant_endomorphism(const PermLattice& lattice, std::mt19937& rng, int range = 3);

}  // namespace brauer
