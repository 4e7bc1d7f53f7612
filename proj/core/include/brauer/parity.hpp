#pragma once

#include "brauer/curve_file.hpp"
#include "brauer/group.hpp"
#include "brauer/local_curve.hpp"
#include "brauer/square_class.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace brauer {

enum class TowerFamily { borel, dihedral, false_tate, s3 };
std::string to_string(TowerFamily f);

struct TowerPlace {
  LocalCurveData data;
  Subgroup decomposition;
  Subgroup inertia;
};

// F/K Galois with group G; K, M, L, F are the fixed fields of G, <g>, <h>, 1.
struct TowerDescription {
  TowerFamily family = TowerFamily::borel;
  int p = 3;
  std::shared_ptr<const Group> group;
  std::vector<TowerPlace> places;  // bad places and archimedean places of K
  std::string description;

  Subgroup field_group(char field) const;  // 'K', 'M', 'L', 'F'
  PlaceDecomposition decomposition(std::size_t place, char field) const;
  // Local Galois data and sum e f count = [K' : K] for every place and field.
  void validate() const;
};

// Tower for the Borel(p) group from explicit per-place (D, I) data. Each entry
// of `decomposition`/`inertia` lists generating elements.
TowerDescription make_tower(TowerFamily family, int p, std::shared_ptr<const Group> g,
                            std::vector<TowerPlace> places);

// K = Q, F = Q(mu_p, m^{1/p}) with Galois group Borel(p) acting on the roots
// zeta^i m^{1/p}. m > 1 must be p-th power free. Places of good reduction at p
// with omega_disc = 0 are dropped.
TowerDescription kummer_tower(const std::vector<LocalCurveData>& curve, int p, long m);

// Subgroup generated by comma-separated words in the named elements, e.g.
// "g,h", "g^-1*h", "1". Throws std::invalid_argument on unknown letters.
Subgroup parse_subgroup_words(const Group& g, const std::string& words);

// Tower with group Borel(p) (borel, s3) or D_2p (dihedral) from a curve file
// whose places all carry decomposition and inertia words.
TowerDescription tower_from_curve(const CurveData& curve, TowerFamily family, int p);

enum class Evidence { tamagawa_side, root_number_side, both };
std::string to_string(Evidence e);

struct ParityVerdict {
  std::string combination;
  int parity = 0;  // 0 even, 1 odd
  Evidence evidence = Evidence::tamagawa_side;
  std::vector<std::string> assumptions;
  std::vector<std::string> notes;
  bool operator==(const ParityVerdict&) const = default;
};

struct InconsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

// Raises InconsistencyError if both sides are present and differ.
ParityVerdict make_verdict(std::string combination, std::optional<int> tamagawa_parity,
                           std::optional<int> root_parity, std::vector<std::string> assumptions);

struct PlaceContribution {
  std::string place;
  std::string label;  // case of the local analysis ("1".."5b"), "-" if not classified
  long ord_quotient = 0;
  std::optional<int> root_product;
};

struct BorelReport {
  ParityVerdict verdict;
  std::vector<PlaceContribution> places;
  SquareClass tamagawa_class;  // of C(F) C(K)^{p-1} / (C(M) C(L)^{p-1})
  std::optional<ParityVerdict> rank_over_l;  // when the ranks over K and M are supplied
};

struct KnownRanks {
  std::optional<long> k, m;
};

BorelReport borel_parity(const TowerDescription& tower, int p, const KnownRanks& known = {});

struct LadderLayer {
  int n = 0;
  int w_l = 1;          // w(E/L_n), L_n = K(m^{1/p^n})
  int w_f = 1;          // w(E/F_n), F_n = K(mu_p, m^{1/p^n}); equals w(E/K(mu_p)) for n >= 1
  long bound_l = 0;     // Selmer rank lower bound over L_n
  Integer bound_f = 0;  // over K(mu_{p^n}, m^{1/p^n})
  ParityVerdict verdict_l, verdict_f;
};

// Root number over K(mu_p) and over L_n for K = Q, computed place by place.
int root_number_cyclotomic(const std::vector<LocalCurveData>& curve, int p);
int root_number_radical(const std::vector<LocalCurveData>& curve, int p, long m, int n);

// Layers 0..n. rank_k, if given, is the p^infinity-Selmer rank over K.
std::vector<LadderLayer> false_tate_ladder(const std::vector<LocalCurveData>& curve, int p, long m, int n,
                                           std::optional<long> rank_k = std::nullopt);

struct DihedralReport {
  ParityVerdict verdict;
  std::vector<PlaceContribution> places;
  std::optional<long> s1, s2;   // only for p > 3
  std::optional<std::string> rank_jump;
};

// rank_m_parity: parity of the Selmer rank over M, if known.
DihedralReport dihedral_parity(const TowerDescription& tower, int p, std::optional<int> rank_m_parity = {});

struct S3Report {
  BorelReport borel;
  ParityVerdict selmer_combination;
};
S3Report s3_theorem_parity(const TowerDescription& tower);

// det [[2H, -H], [-H, 2H]] == 3^n det(H)^2.
bool height_block_identity_check(const QMatrix& h);

}  // namespace brauer
