#include "berezin/symbol.hpp"

#include <string>

#include "berezin/error.hpp"

namespace berezin {

namespace {

constexpr double kSingularRadius = 1e-12;
constexpr double kMergeRadius = 1e-10;
constexpr double kDropCoeff = 1e-14;

void check_series(const PowerSeries& p, const char* what) {
  for (const auto& c : p.coeffs())
    if (!is_finite(c)) throw DomainError(std::string(what) + " has non-finite coefficient");
}

}  // namespace

Complex Atom::eval(Complex zeta) const {
  const Complex d = zeta - center;
  if (std::abs(d) <= kSingularRadius) throw SingularPoint("evaluation at atom center");
  switch (kind) {
    case AtomKind::Log:
      return coeff * std::log(std::abs(d));
    case AtomKind::Pole:
      return coeff / d;
    case AtomKind::ConjPole:
      return coeff / std::conj(d);
  }
  return {};
}

Atom log_atom(Complex center, Complex coeff) { return {AtomKind::Log, center, coeff}; }
Atom pole_atom(Complex center, Complex coeff) { return {AtomKind::Pole, center, coeff}; }
Atom conj_pole_atom(Complex center, Complex coeff) { return {AtomKind::ConjPole, center, coeff}; }

Symbol Symbol::constant(Complex c) { return {PowerSeries::constant(c), PowerSeries{}, {}}; }

Symbol Symbol::harmonic(PowerSeries K, PowerSeries L) { return {std::move(K), std::move(L), {}}; }

Symbol Symbol::from_atoms(std::vector<Atom> atoms) { return {PowerSeries{}, PowerSeries{}, std::move(atoms)}; }

void validate(const Symbol& s) {
  check_series(s.holomorphic, "K");
  check_series(s.antiholomorphic, "L");
  for (const auto& atom : s.atoms) {
    if (!is_finite(atom.center) || !is_finite(atom.coeff)) throw DomainError("atom has non-finite data");
    if (std::abs(atom.center) > kMaxCenterModulus) {
      throw DomainError("atom center modulus " + std::to_string(std::abs(atom.center)) + " exceeds " +
                        std::to_string(kMaxCenterModulus));
    }
  }
}

Complex harmonic_eval(const PowerSeries& K, const PowerSeries& L, Complex zeta) {
  return K.eval(zeta) + std::conj(L.eval(zeta));
}

Complex symbol_eval(const Symbol& s, Complex zeta) {
  Complex v = harmonic_eval(s.holomorphic, s.antiholomorphic, zeta);
  for (const auto& atom : s.atoms) v += atom.eval(zeta);
  return v;
}

Symbol canonicalize(const Symbol& s) {
  Symbol out;
  out.holomorphic = s.holomorphic;
  out.antiholomorphic = s.antiholomorphic;
  const Complex l0 = out.antiholomorphic[0];
  if (l0 != Complex{}) {
    out.holomorphic.at(0) += std::conj(l0);
    out.antiholomorphic.at(0) = 0.0;
  }
  for (const auto& atom : s.atoms) {
    bool merged = false;
    for (auto& existing : out.atoms) {
      if (existing.kind == atom.kind && std::abs(existing.center - atom.center) <= kMergeRadius) {
        existing.coeff += atom.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) out.atoms.push_back(atom);
  }
  std::erase_if(out.atoms, [](const Atom& a) { return std::abs(a.coeff) < kDropCoeff; });
  return out;
}

Symbol operator+(const Symbol& a, const Symbol& b) {
  Symbol out{a.holomorphic + b.holomorphic, a.antiholomorphic + b.antiholomorphic, a.atoms};
  out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
  return out;
}

Symbol operator*(Complex c, const Symbol& s) {
  Symbol out{c * s.holomorphic, std::conj(c) * s.antiholomorphic, s.atoms};
  for (auto& atom : out.atoms) atom.coeff *= c;
  return out;
}

Symbol conjugate(const Symbol& s) {
  // conj(K + conj(L)) = L + conj(K).
  Symbol out{s.antiholomorphic, s.holomorphic, {}};
  for (const auto& atom : s.atoms) {
    Atom c = atom;
    c.coeff = std::conj(atom.coeff);
    if (atom.kind == AtomKind::Pole) c.kind = AtomKind::ConjPole;
    if (atom.kind == AtomKind::ConjPole) c.kind = AtomKind::Pole;
    out.atoms.push_back(c);
  }
  return out;
}

std::string to_string(AtomKind kind) {
  switch (kind) {
    case AtomKind::Log:
      return "log";
    case AtomKind::Pole:
      return "pole";
    case AtomKind::ConjPole:
      return "conjpole";
  }
  return "?";
}

void validate(const Theorem2Form& form) {
  check_series(form.holomorphic, "K");
  check_series(form.antiholomorphic, "L");
  for (std::size_t i = 0; i < form.nodes.size(); ++i) {
    const auto& n = form.nodes[i];
    if (!is_finite(n.a) || !is_finite(n.D) || !is_finite(n.E) || !is_finite(n.F))
      throw DomainError("node has non-finite data");
    if (std::abs(n.a) > kMaxCenterModulus) throw DomainError("node modulus exceeds limit");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(form.nodes[j].a - n.a) <= kMergeRadius) throw DomainError("coincident nodes");
  }
}

}  // namespace berezin
