#pragma once

#include <string>
#include <vector>

#include "berezin/series.hpp"
#include "berezin/types.hpp"

namespace berezin {

enum class AtomKind { Log, Pole, ConjPole };

/// One singular building block: coeff * ln|z - a|, coeff / (z - a) or
/// coeff / conj(z - a).
struct Atom {
  AtomKind kind = AtomKind::Log;
  Complex center{};
  Complex coeff{};

  Complex eval(Complex zeta) const;
};

Atom log_atom(Complex center, Complex coeff = 1.0);
Atom pole_atom(Complex center, Complex coeff = 1.0);
Atom conj_pole_atom(Complex center, Complex coeff = 1.0);

/// A summable symbol u = K + conj(L) + sum of atoms.
///
/// `antiholomorphic` stores the holomorphic coefficients of L; the conjugation
/// is applied on evaluation. Canonical symbols have L(0) = 0.
struct Symbol {
  PowerSeries holomorphic;
  PowerSeries antiholomorphic;
  std::vector<Atom> atoms;

  static Symbol constant(Complex c);
  static Symbol harmonic(PowerSeries K, PowerSeries L);
  static Symbol from_atoms(std::vector<Atom> atoms);
};

/// Throws DomainError on non-finite data or atom centers with |a| > kMaxCenterModulus.
void validate(const Symbol& s);

/// u(zeta). SingularPoint if zeta lies within 1e-12 of an atom center.
Complex symbol_eval(const Symbol& s, Complex zeta);

/// Harmonic part K(zeta) + conj(L(zeta)) only.
Complex harmonic_eval(const PowerSeries& K, const PowerSeries& L, Complex zeta);

/// Merge same-kind atoms whose centers agree to 1e-10, drop atoms with
/// |coeff| < 1e-14 and move conj(L(0)) into K.
Symbol canonicalize(const Symbol& s);

Symbol operator+(const Symbol& a, const Symbol& b);
Symbol operator*(Complex c, const Symbol& s);
/// The symbol conj(u).
Symbol conjugate(const Symbol& s);

std::string to_string(AtomKind kind);

/// Theorem-2 node: contributes (D phi + E phi^2) conj(phi) + F phi conj(phi)^2
/// with phi = phi_a.
struct FormNode {
  Complex a{};
  Complex D{}, E{}, F{};
};

/// B(u) = K + conj(L) + sum over nodes.
struct Theorem2Form {
  PowerSeries holomorphic;
  PowerSeries antiholomorphic;
  std::vector<FormNode> nodes;
};

/// Throws DomainError on |a_i| > kMaxCenterModulus or coincident nodes.
void validate(const Theorem2Form& form);

}  // namespace berezin
