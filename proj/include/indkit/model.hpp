// The structure M = <N + Z, 0, s, N, p>: universe elements, the three rays,
// the paths pi_1, pi_2, pi_3 and exact ground evaluation.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <string>

namespace indkit {

using Int = boost::multiprecision::cpp_int;

// Logical rays of the universe: the N copy, the negative part of Z, and the
// nonnegative part of Z. They partition the universe.
enum class Ray : int { Nat = 0, ZNeg = 1, ZPos = 2 };

// An element of N + Z. `zeta` selects the Z component; NatRay indices are >= 0.
struct MElement {
  bool zeta = false;
  Int index = 0;

  static MElement nat(Int n) { return MElement{false, std::move(n)}; }
  static MElement zet(Int z) { return MElement{true, std::move(z)}; }

  Ray ray() const {
    if (!zeta) return Ray::Nat;
    return index < 0 ? Ray::ZNeg : Ray::ZPos;
  }

  bool operator==(const MElement& o) const { return zeta == o.zeta && index == o.index; }
  bool operator<(const MElement& o) const {
    if (zeta != o.zeta) return !zeta;
    return index < o.index;
  }
};

inline MElement zero_m() { return MElement::nat(0); }
inline MElement zero_z() { return MElement::zet(0); }

// s_M(x,y) = (x, y+1): same component, index + 1.
MElement succ(const MElement& e);
// Predecessor; undefined exactly at 0_M.
bool has_pred(const MElement& e);
MElement pred(const MElement& e);

// Membership in pi_1 u pi_2 u pi_3, solved exactly per line.
bool in_pi(const MElement& a, const MElement& b);

std::string to_string(const MElement& e);

struct Formula;  // syntax.hpp

// Truth in M of a closed quantifier-free formula over {N, p, =} and
// model constants. Throws std::invalid_argument on quantifiers, variables
// or rel-atoms.
bool eval_ground(const Formula& f);

struct PartialBijection;  // bijections.hpp

// R0 = |M|^2 \ p_M, the odd bijection phi(x) = 2x.
PartialBijection r0();

}  // namespace indkit
