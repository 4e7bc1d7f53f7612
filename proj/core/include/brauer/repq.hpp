#pragma once

#include "brauer/group.hpp"
#include "brauer/matrix.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace brauer {

// Finite-dimensional Q[G]-module given by the matrices of the group
// generators (acting on column vectors).
class RationalModule {
 public:
  RationalModule() = default;
  RationalModule(const Group& g, std::vector<QMatrix> generator_matrices);

  std::size_t dim() const { return dim_; }
  const std::vector<QMatrix>& generator_matrices() const { return gens_; }
  // Matrix of an arbitrary element, by index in the group (cached).
  const QMatrix& matrix(int element) const;
  const Group& group() const { return *group_; }

  bool irreducible = false;
  std::string label;

 private:
  const Group* group_ = nullptr;
  std::size_t dim_ = 0;
  std::vector<QMatrix> gens_;
  mutable std::shared_ptr<std::vector<QMatrix>> all_;
};

struct UndecidedIrreducibility : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coefficients n_H indexed by subgroup class (Group::subgroup_classes order).
using RelationVector = std::vector<long>;

RationalModule permutation_module(const Group& g, const Subgroup& h);
RationalModule regular_module(const Group& g);
// Submodule spanned by the (G-stable) columns of `basis`.
RationalModule submodule(const RationalModule& m, const QMatrix& basis);

// Trace on each conjugacy class.
std::vector<Rational> character(const RationalModule& m);
// Number of fixed points on G/H of each conjugacy class.
std::vector<Rational> permutation_character(const Group& g, const Subgroup& h);
// Conjugacy class indices grouped into rational classes (g ~ g^k, k prime to ord g).
std::vector<std::vector<int>> rational_classes(const Group& g);

// Integer relations sum n_H [G/H] = 0 between permutation characters, as rows
// of a matrix in Hermite normal form.
ZMatrix relation_lattice(const Group& g);
bool is_relation(const Group& g, const RelationVector& v);

struct DecomposeOptions {
  std::size_t dim_cap = 512;
  std::uint64_t seed = 1;
  unsigned sample_budget = 32;
};

struct Constituent {
  RationalModule module;      // irreducible, certified
  std::size_t multiplicity = 0;
  QMatrix isotypic_basis;     // columns spanning the isotypic component
  std::vector<Rational> central_character;  // scalar of each rational class sum
};

struct Decomposition {
  std::vector<Constituent> parts;
  std::uint64_t seed = 0;
};

// Isotypic splitting through rational class sums, then one certified
// irreducible per component (commutative endomorphism algebra).
Decomposition decompose(const RationalModule& m, const DecomposeOptions& opts = {});

// Isotypic components alone (columns bases), with their central characters.
std::vector<std::pair<QMatrix, std::vector<Rational>>> isotypic_components(const RationalModule& m);

// Dimension of End_G(m) over Q.
std::size_t endomorphism_dim(const RationalModule& m);
// Basis of End_G(m).
std::vector<QMatrix> endomorphism_basis(const RationalModule& m);

struct Irreducible {
  std::string label;
  RationalModule module;
  std::vector<Rational> character;
  std::vector<Rational> central_character;
  std::size_t endomorphism_dim = 1;
  std::size_t dim() const { return module.dim(); }
};

// All rational irreducibles of G, ordered by (dimension, character), labelled
// "1", "rho<dim>" with letter suffixes on ties.
std::vector<Irreducible> rational_irreducibles(const Group& g, const DecomposeOptions& opts = {});
// Index of the catalog entry whose central character matches.
std::size_t identify(const std::vector<Irreducible>& catalog, const std::vector<Rational>& central_character);
std::vector<Rational> central_character(const RationalModule& m);

// G-invariant symmetric positive definite form: sum over g of r(g)^T S r(g),
// with S the identity unless given.
QMatrix invariant_inner_product(const RationalModule& m, const QMatrix* seed = nullptr);
// Columns: reduced column echelon basis of the H-fixed vectors.
QMatrix fixed_subspace(const RationalModule& m, const Subgroup& h);
// det of (1/|H|) gram restricted to the H-fixed subspace; 1 if that is zero.
Rational gram_det_on_fixed(const RationalModule& m, const Subgroup& h, const QMatrix& gram);

}  // namespace brauer
