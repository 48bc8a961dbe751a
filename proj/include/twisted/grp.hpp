#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace twisted::grp {

enum class Family { Cyclic, Dihedral, ProductOfFinite, Zd, FreeF2, FreeProductZ2Z3 };

struct GroupSpec {
  Family family = Family::Cyclic;
  // Cyclic: {n}. Dihedral: {n} (order 2n). ProductOfFinite: moduli. Zd: {d}. Free families: {}.
  std::vector<int> params;

  static GroupSpec cyclic(int n) { return {Family::Cyclic, {n}}; }
  static GroupSpec dihedral(int n) { return {Family::Dihedral, {n}}; }
  static GroupSpec product(std::vector<int> moduli) { return {Family::ProductOfFinite, std::move(moduli)}; }
  static GroupSpec zd(int d) { return {Family::Zd, {d}}; }
  static GroupSpec free_f2() { return {Family::FreeF2, {}}; }
  static GroupSpec z2_z3() { return {Family::FreeProductZ2Z3, {}}; }
};

// Normal-form code. Cyclic: {k}. Dihedral: {k, x} for r^k s^x. Product: residues.
// Z^d: coordinates. F2: reduced letters, +-1 for a^{+-1}, +-2 for b^{+-1}.
// Z2*Z3: alternating syllables, 0 = s, 1 = t, 2 = t^2.
struct GroupElement {
  std::vector<int> code;
  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;
};

enum class LengthTag { Word, L1, L2, L2Squared, Block };

std::string_view length_name(LengthTag tag);
LengthTag parse_length(std::string_view name);

class Group {
 public:
  explicit Group(GroupSpec spec);

  const GroupSpec& spec() const { return spec_; }
  std::string name() const;
  bool is_finite() const;
  std::size_t order() const;  // throws std::logic_error on infinite groups

  GroupElement identity() const;
  GroupElement mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  bool is_identity(const GroupElement& a) const { return a == identity(); }

  // Whole group, finite families only.
  const std::vector<GroupElement>& elements() const;
  // Symmetric generating set used for word length.
  std::vector<GroupElement> generators() const;
  // Generators used by factorization (one per index).
  std::vector<GroupElement> basic_generators() const;
  // g = prod_k basic[idx_k]^{exp_k}, in order.
  std::vector<std::pair<int, int>> factorization(const GroupElement& g) const;

  GroupElement normal_form(std::string_view word) const;
  std::string to_string(const GroupElement& g) const;

  double length(const GroupElement& g, LengthTag tag) const;
  LengthTag default_length() const;
  bool supports_length(LengthTag tag) const;
  // Largest word length on a finite group.
  int diameter() const;

  // {g : L(g) <= R}, ordered by (L, code).
  std::vector<GroupElement> ball(double radius, LengthTag tag) const;
  std::vector<GroupElement> ball(double radius) const { return ball(radius, default_length()); }

  bool has_folner() const;
  std::vector<GroupElement> folner(int i) const;

 private:
  GroupSpec spec_;
  std::vector<GroupElement> elements_;
  std::map<GroupElement, int> word_length_;
  int diameter_ = 0;

  GroupElement generator_power(int index, int exponent) const;
};

// |gF ∩ F| for a finite set F.
std::size_t translate_overlap(const Group& group, const GroupElement& g,
                              const std::vector<GroupElement>& f);

}  // namespace twisted::grp
