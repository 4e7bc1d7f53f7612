#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace brauer {

// Image list of a permutation of {0, ..., n-1}. Products compose right to
// left: (a*b)(x) = a(b(x)).
using Perm = std::vector<int>;

Perm compose(const Perm& a, const Perm& b);
Perm invert(const Perm& a);
Perm identity_perm(int degree);
std::string cycle_string(const Perm& a);
// Parses "(0 1 2)(3 4)"; "()" is the identity. Points are 0-based.
Perm parse_cycles(const std::string& text, int degree);

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Group;

// A subgroup as a sorted list of element indices of its ambient group.
struct Subgroup {
  std::vector<int> elements;
  std::vector<int> generators;
  std::size_t order() const { return elements.size(); }
  bool contains(int e) const;
};

struct SubgroupClass {
  Subgroup representative;  // lexicographically least conjugate
  std::size_t class_size = 0;
  std::string label;
  std::size_t order() const { return representative.order(); }
};

struct ConjugacyClass {
  int representative = 0;
  std::vector<int> elements;
  int element_order = 1;
};

// Finite permutation group with its elements enumerated (|G| <= cap).
class Group {
 public:
  static constexpr std::size_t kDefaultCap = 2000;

  static Group from_generators(std::vector<Perm> generators, std::string name = "",
                               std::size_t cap = kDefaultCap);

  const std::string& name() const { return name_; }
  int degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Perm>& generator_perms() const { return gen_perms_; }
  const std::vector<int>& generators() const { return gens_; }
  const Perm& element(int i) const { return elements_[i]; }
  int index_of(const Perm& p) const;  // -1 if absent
  int identity() const { return 0; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order() + b]; }
  int inv(int a) const { return inverse_[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  int power(int a, long k) const;
  int element_order(int a) const { return orders_[a]; }
  const std::vector<ConjugacyClass>& conjugacy_classes() const { return classes_; }
  int class_of(int e) const { return class_index_[e]; }

  // Named elements (e.g. "g", "h") registered by presets.
  int named(const std::string& key) const;
  void set_named(const std::string& key, int element) { named_[key] = element; }

  // Subgroup generated by the given elements.
  Subgroup closure(const std::vector<int>& gens) const;
  Subgroup whole() const;
  Subgroup trivial() const;
  Subgroup conjugate(const Subgroup& h, int g) const;
  bool is_normal(const Subgroup& h) const;
  bool is_abelian(const Subgroup& h) const;

  // Conjugacy classes of subgroups sorted by (order, canonical element list).
  const std::vector<SubgroupClass>& subgroup_classes() const;
  // Index of the class containing h.
  std::size_t find_class(const Subgroup& h) const;
  std::size_t find_class_by_label(const std::string& label) const;

 private:
  std::string name_;
  int degree_ = 0;
  std::vector<Perm> gen_perms_;
  std::vector<int> gens_;
  std::vector<Perm> elements_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> orders_;
  std::vector<ConjugacyClass> classes_;
  std::vector<int> class_index_;
  std::map<std::string, int> named_;
  mutable std::shared_ptr<std::vector<SubgroupClass>> subgroup_cache_;
};

// Order by Schreier-Sims, without enumerating elements.
unsigned long long schreier_sims_order(const std::vector<Perm>& generators, int degree);

// Lexicographically least sorted element list among conjugates of h.
std::vector<int> canonical_key(const Group& g, const Subgroup& h);
// Isomorphism-type style label from a fingerprint of the subgroup.
std::string subgroup_label(const Group& g, const Subgroup& h);

// Left cosets xH, indexed in Schreier-tree order from the identity coset
// (or by an explicit representative list).
class CosetSpace {
 public:
  CosetSpace(const Group& g, Subgroup h);
  CosetSpace(const Group& g, Subgroup h, std::vector<int> representatives);

  std::size_t size() const { return reps_.size(); }
  const Subgroup& subgroup() const { return h_; }
  const std::vector<int>& representatives() const { return reps_; }
  int coset_of_element(int x) const { return coset_of_[x]; }
  int act(int g, int coset) const { return coset_of_[group_->mul(g, reps_[coset])]; }
  Perm permutation(int g) const;

 private:
  void index_cosets();
  const Group* group_;
  Subgroup h_;
  std::vector<int> reps_;
  std::vector<int> coset_of_;
};

namespace presets {
Group symmetric(int n);
Group alternating(int n);
Group cyclic(int n);
// D_{2n} = <g, h | g^n = h^2 = 1, hghg = 1>; names "g", "h".
Group dihedral(int n);
// Borel subgroup of GL2(F_p) modulo centre, realized as the affine group
// x -> a x + b; names "g" (x -> x+1) and "h" (x -> r x, r primitive root).
Group borel(int p);
// S3, A5, S<n>, A<n>, C<n>, D2n:<n>, Borel:<p>.
Group by_name(const std::string& spec);
}  // namespace presets

int primitive_root(int p);

}  // namespace brauer
