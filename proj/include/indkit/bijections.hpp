// Exact algebra of eventually-periodic ray sets (power-of-two moduli, finite
// exceptions) and of piecewise-affine partial bijections x -> 2^z x + r.
#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "indkit/model.hpp"

namespace indkit {

using Rat = boost::multiprecision::cpp_rational;

Rat pow2(long e);
// q = z / 2^m for some integer z, m >= 0?
bool is_dyadic(const Rat& q);

// Mathematical mod into [0, m).
Int floormod(const Int& x, const Int& m);

// ---------------------------------------------------------------------------
// RaySet: an eventually periodic subset of the universe. Per logical ray a
// set of residues mod 2^a, plus finite added/removed exceptions. Canonical:
// minimal modulus, added disjoint from the periodic part, removed inside it.

class RaySet {
 public:
  RaySet() = default;

  static RaySet empty();
  static RaySet universe();
  static RaySet full_ray(Ray r);
  // Uniform coset: the paper-style set with residue s mod 2^a on all rays.
  static RaySet uniform_coset(int log2mod, const Int& s);
  // Residue coset on one ray only.
  static RaySet ray_coset(Ray r, int log2mod, const Int& s);
  static RaySet singleton(const MElement& e);
  static RaySet of_elements(std::vector<MElement> es);

  bool contains(const MElement& e) const;

  RaySet complement() const;
  RaySet set_union(const RaySet& o) const;
  RaySet set_intersect(const RaySet& o) const;
  RaySet set_minus(const RaySet& o) const;

  // Keep only elements on ray r.
  RaySet restrict_to_ray(Ray r) const;
  // Keep only elements with index >= b (lower=true) or index <= b.
  RaySet restrict_halfline(Ray r, const Int& b, bool lower) const;

  bool is_empty() const;
  bool is_finite() const;
  // The three residue sets coincide (the class D, up to the exceptions).
  bool is_uniform() const;
  bool operator==(const RaySet& o) const;

  // All elements; requires is_finite().
  std::vector<MElement> elements() const;
  // Elements with |index| <= w (test windows).
  std::vector<MElement> elements_in_window(const Int& w) const;

  // (|res_N| + |res_Z-| + |res_Z+|) / (3 * 2^a); exceptions ignored.
  Rat measure() const;

  int log2_modulus() const { return log2mod_; }
  const std::vector<Int>& residues(Ray r) const { return res_[static_cast<int>(r)]; }
  const std::vector<MElement>& added() const { return added_; }
  const std::vector<MElement>& removed() const { return removed_; }
  size_t exception_count() const { return added_.size() + removed_.size(); }

  std::string to_json() const;

 private:
  friend RaySet combine(const RaySet&, const RaySet&, bool (*)(bool, bool));
  void canonicalize();
  void align_to(int log2mod);
  bool periodic_contains(const MElement& e) const;

  int log2mod_ = 0;                       // modulus 2^log2mod_
  std::array<std::vector<Int>, 3> res_;   // sorted residues in [0, 2^a) per ray
  std::vector<MElement> added_, removed_; // sorted
};

// ---------------------------------------------------------------------------
// PhiMap: the affine map x -> 2^exp * x + off with dyadic offset.

struct PhiMap {
  long exp = 0;
  Rat off = 0;

  static PhiMap identity() { return {}; }
  static PhiMap scale_shift(long z, Rat r) { return PhiMap{z, std::move(r)}; }

  bool is_identity() const { return exp == 0 && off == 0; }
  bool even() const { return exp % 2 == 0; }

  Rat apply_rat(const Rat& x) const { return pow2(exp) * x + off; }
  // Image when integral.
  std::optional<Int> apply(const Int& x) const;
  PhiMap inverse() const;
  // apply `this` after `g`.
  PhiMap after(const PhiMap& g) const;
  // The rational fixed point of 2^z x + r = x, if any.
  std::optional<Rat> fixed_point() const;
  // {x : phi(x) integral} as a uniform RaySet.
  RaySet integrality_set() const;

  bool operator==(const PhiMap& o) const { return exp == o.exp && off == o.off; }
};

// ---------------------------------------------------------------------------
// PartialBijection: finitely many per-ray affine pieces with pairwise
// disjoint domains and ranges.

struct Piece {
  Ray src, dst;
  RaySet dom;   // content only on ray src
  PhiMap phi;
  RaySet rng;   // cached image, content only on ray dst
};

class PartialBijection {
 public:
  PartialBijection() = default;

  // Validating constructor: trims dom to phi's integrality set and to the
  // points whose images land on dst; throws if the piece set is not 1-1.
  static std::optional<Piece> make_piece(Ray src, Ray dst, RaySet dom, PhiMap phi);
  static PartialBijection of_pieces(std::vector<Piece> pieces,
                                    std::optional<bool> odd = std::nullopt);

  static PartialBijection empty();
  static PartialBijection identity_on(const RaySet& d);
  static PartialBijection identity();  // id on the whole universe
  // Graph of s^n: domain the whole universe, including the finitely many
  // points that cross from the negative to the nonnegative Z ray.
  static PartialBijection successor_power(unsigned n);

  const std::vector<Piece>& pieces() const { return pieces_; }
  std::optional<bool> odd() const { return odd_; }

  RaySet domain() const;
  RaySet range() const;

  std::optional<MElement> apply(const MElement& e) const;
  bool graph_contains(const MElement& a, const MElement& b) const;

  PartialBijection inverse() const;
  // Function-composition order: compose(R, S) applies S first.
  static PartialBijection compose(const PartialBijection& r, const PartialBijection& s);
  PartialBijection restrict(const RaySet& d) const;
  // {x : R(x,x)}
  RaySet diagonal() const;
  RaySet image(const RaySet& s) const;

  std::string to_json() const;

 private:
  std::vector<Piece> pieces_;
  std::optional<bool> odd_;
};

// The (D,E,phi)-bijection for a uniform D: routes rays by the parity of phi,
// drops the finitely many sign-preservation violations, and restricts to
// integral images.
PartialBijection make_paper_bijection(const RaySet& d, const PhiMap& phi);

}  // namespace indkit
