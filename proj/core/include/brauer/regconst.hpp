#pragma once

#include "brauer/repq.hpp"
#include "brauer/square_class.hpp"

#include <string>
#include <vector>

namespace brauer {

struct NamedRelation {
  std::string name;
  RelationVector coefficients;
};

// "2S3+1-2C2-C3": positive terms by decreasing subgroup order, then negative
// terms by increasing order.
std::string render_relation(const Group& g, const RelationVector& v);
// Inverse of render_relation; accepts any term order. A term is an optional
// sign, an optional coefficient and a subgroup class label; write "2*1" for
// a multiple of the trivial subgroup.
RelationVector parse_relation(const Group& g, const std::string& text);

// The relations listed for S3 (and any group labelled S3), A5, Borel(p) and
// D2n with n odd; empty for other groups.
std::vector<NamedRelation> standard_relations(const Group& g);

// Product over H of det((1/|H|) <,> on rho^H)^{n_H} modulo squares; the form is
// the averaged one unless `gram` is given.
SquareClass regulator_constant(const Group& g, const RelationVector& theta, const RationalModule& rho,
                               const QMatrix* gram = nullptr);

struct RegConstTable {
  const Group* group = nullptr;
  std::vector<Irreducible> irreducibles;
  std::vector<NamedRelation> relations;
  std::vector<std::vector<SquareClass>> entries;  // [relation][irreducible]
};

// Lattice basis rows (unless include_lattice is false) followed by `extra`.
RegConstTable regconst_table(const Group& g, const std::vector<NamedRelation>& extra = {}, bool include_lattice = true,
                             const DecomposeOptions& opts = {});

// prod_k C(Theta, rho_k)^{n_k} for the relation in row `relation`.
SquareClass regulator_quotient_class(const RegConstTable& t, std::size_t relation, const std::vector<long>& multiplicities);

struct ComputableCombination {
  Integer prime;
  std::vector<std::vector<int>> basis;  // F2 row-reduced 0/1 vectors over the irreducibles
  std::vector<std::string> rendered;    // e.g. "1+rho5"
};
std::vector<ComputableCombination> computable_combinations(const RegConstTable& t);

}  // namespace brauer
