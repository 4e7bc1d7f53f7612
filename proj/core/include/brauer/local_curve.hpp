#pragma once

#include "brauer/group.hpp"
#include "brauer/matrix.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace brauer {

enum class PlaceKind { finite, real, complex };
enum class Reduction { good, split_mult, nonsplit_mult, additive_pot_mult, additive_pot_good };

std::string to_string(PlaceKind k);
std::string to_string(Reduction r);
PlaceKind parse_place_kind(const std::string& s);
Reduction parse_reduction(const std::string& s);

// Residue-field facts about a minimal model y^2 = x^3 + a4 x + a6 with
// additive reduction. They fix the Tamagawa numbers and the split/non-split
// behaviour after tame base change, with uniformizers chosen so that
// pi_new^e = pi.
struct AdditiveHints {
  bool twist_square = false;     // I_n^*: becomes split multiplicative under even ramification
  bool cstar_square = false;     // I_n^*: c = 4 rather than 2
  bool a6_square = false;        // IV, IV^*: c = 3 rather than 1
  bool a6_cube = false;          // II, II^* turning into I0^*, residue field with cube roots of unity
  bool minus_a4_square = false;  // III, III^* turning into I0^*
  int cubic_roots = 1;           // I0^*: roots of the reduced cubic (0, 1 or 3)
  bool operator==(const AdditiveHints&) const = default;
};

struct LocalCurveData {
  std::string place;
  PlaceKind kind = PlaceKind::finite;
  long residue_char = 0;
  Integer residue_size = 0;
  Reduction reduction = Reduction::good;
  long ord_delta = 0;
  long tamagawa = 1;
  long omega_disc = 0;  // |omega/omega_min|_v = q^{-omega_disc}
  std::optional<int> w_override;
  AdditiveHints hints;

  bool finite() const { return kind == PlaceKind::finite; }
  bool semistable() const { return reduction != Reduction::additive_pot_mult && reduction != Reduction::additive_pot_good; }
  std::string kodaira() const;
  // Throws std::invalid_argument on inconsistent fields.
  void validate() const;
  bool operator==(const LocalCurveData&) const = default;
};

struct UnsupportedCase : std::runtime_error {
  using std::runtime_error::runtime_error;
};

LocalCurveData real_place();
LocalCurveData complex_place();
LocalCurveData finite_place(long ell, Integer q, Reduction r, long ord_delta, long tamagawa, long omega_disc = 0);

// Kodaira label of an additive potentially good type from ord(Delta) (char >= 5).
std::string potentially_good_kodaira(long ord_delta);

bool root_number_supported(const LocalCurveData& d);
// Sign from reduction type and residue field; throws UnsupportedCase for
// additive reduction in residue characteristic 2 or 3.
int local_root_number(const LocalCurveData& d);
// The override when present, else local_root_number.
int effective_root_number(const LocalCurveData& d);
int global_root_number(const std::vector<LocalCurveData>& places);

// Base change to a prime with ramification e and residue degree f.
LocalCurveData base_change_semistable(const LocalCurveData& d, long e, long f);
LocalCurveData base_change_additive(const LocalCurveData& d, long e, long f);
LocalCurveData base_change(const LocalCurveData& d, long e, long f);

// ord_p of C_v = c_v |omega/omega_min|_v.
long c_ord(const LocalCurveData& d, const Integer& p);
Rational c_value(const LocalCurveData& d);
int c_quotient_ord_parity(const Integer& p, const std::vector<LocalCurveData>& numerator,
                          const std::vector<LocalCurveData>& denominator);

struct PlaceProfile {
  long e = 1;
  long f = 1;
  long count = 1;
  bool operator==(const PlaceProfile&) const = default;
};
struct PlaceDecomposition {
  std::vector<PlaceProfile> profiles;  // sorted by (e, f)
  long degree() const;
  long places() const;
  bool operator==(const PlaceDecomposition&) const = default;
};
std::string to_string(const PlaceDecomposition& d);

// Primes above v in the fixed field of H, for decomposition group D and
// inertia group I at a prime above v: D-orbits on G/H, with e the size of
// the I-orbits inside each.
PlaceDecomposition decompose_place(const Group& g, const Subgroup& h, const Subgroup& decomposition,
                                   const Subgroup& inertia);
// Local data at every prime above v, one entry per prime.
std::vector<LocalCurveData> primes_above(const LocalCurveData& v, const PlaceDecomposition& dec);

// Sum over primes above v of ord_p C and product of root numbers.
struct FieldTerms {
  long c_ord = 0;
  Rational c_value = 1;
  std::optional<int> w;  // empty if some root number is unavailable
};
FieldTerms field_terms(const LocalCurveData& v, const PlaceDecomposition& dec, const Integer& p);

// Checks that (D, I) can be the decomposition and inertia groups of a place
// with this residue field: I normal in D, D/I cyclic, and in the tame case
// I cyclic with a Frobenius acting on it by x -> x^q.
void validate_local_galois(const Group& g, const Subgroup& decomposition, const Subgroup& inertia,
                           const LocalCurveData& v);

// One place v of K in a Borel(p) extension F/K.
struct BorelScenario {
  int p = 3;
  LocalCurveData data;
  Subgroup decomposition;
  Subgroup inertia;
  std::string label;  // proof case: 1, 2, 3, 4a, 4b, 4c, 5a, 5b
};

struct EquivalenceResult {
  std::string label;
  PlaceDecomposition in_k, in_m, in_l, in_f;
  long ord_quotient = 0;  // ord_p C(F) C(K)^{p-1} / (C(M) C(L)^{p-1})
  int root_product = 1;   // W(K) W(M) W(L)
  bool agree = false;
};

struct HypothesisError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Case of the local proof the scenario falls under; throws HypothesisError if
// v | 6 ramifies in F/M with additive reduction, or root numbers are out of reach.
std::string classify_borel_place(const Group& borel, const BorelScenario& s);
EquivalenceResult tamagawa_root_equivalence(const Group& borel, const BorelScenario& s);
bool tamagawa_root_equivalence_check(const Group& borel, const BorelScenario& s);
std::vector<BorelScenario> generate_borel_scenarios(const Group& borel);

}  // namespace brauer
