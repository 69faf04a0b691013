#include "gv/eos.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gv/grid.hpp"

namespace gv {

EquationOfState::EquationOfState(double A, double c0sq) : A_(A), c0sq_(c0sq) {
  if (!(A >= 1.0) || !std::isfinite(A)) throw DomainError("A must be >= 1");
  if (!(c0sq >= 0.0 && c0sq <= 1.0)) throw DomainError("c0sq must lie in [0, 1]");
  qref_ = c0sq / A;
}

double EquationOfState::q(double h) const {
  double x = h * (A_ - 1.0) / A_;
  return (1.0 + qref_) * std::expm1(x) + qref_;
}

double EquationOfState::rho(double h) const {
  if (stiff()) return std::exp(2.0 * h);
  return std::exp(std::log(q(h)) / (A_ - 1.0));
}

double EquationOfState::p(double h) const {
  if (stiff()) return std::exp(2.0 * h);
  return rho(h) * q(h);
}

double EquationOfState::cs2(double h) const {
  if (stiff()) return 1.0;
  return A_ * q(h);
}

double EquationOfState::cs(double h) const { return std::sqrt(cs2(h)); }

double EquationOfState::dcs(double h) const {
  if (stiff()) return 0.0;
  // 2 c c' = (A-1)(1 + rho^{A-1})
  return (A_ - 1.0) * (1.0 + q(h)) / (2.0 * cs(h));
}

double EquationOfState::h_of_rho(double r) const {
  if (!(r > 0)) throw DomainError("h_of_rho: density must be positive");
  if (stiff()) return 0.5 * std::log(r);
  double qq = std::exp((A_ - 1.0) * std::log(r));
  return A_ / (A_ - 1.0) * (std::log1p(qq) - std::log1p(qref_));
}

double EquationOfState::h_of_p(double pp) const {
  if (!(pp > 0)) throw DomainError("h_of_p: pressure must be positive");
  if (stiff()) return 0.5 * std::log(pp);
  return h_of_rho(std::exp(std::log(pp) / A_));
}

std::pair<double, double> EquationOfState::window() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (stiff()) return {-inf, inf};
  double k = A_ / (A_ - 1.0);
  double lo = -k * std::log1p(qref_);
  double hi = k * (std::log1p(1.0 / A_) - std::log1p(qref_));
  return {lo, hi};
}

bool EquationOfState::admissible(double h) const {
  if (!std::isfinite(h)) return false;
  if (stiff()) return true;
  double qq = q(h);
  return qq > 0 && A_ * qq <= 1.0 + 1e-12;
}

void EquationOfState::check(double h) const {
  if (admissible(h)) return;
  auto w = window();
  throw DomainError("hyperbolicity violated: h = " + std::to_string(h) + " outside (" + std::to_string(w.first) +
                    ", " + std::to_string(w.second) + "]");
}

ClosedForms eos_closed_forms(double A, double c0sq) {
  EquationOfState e(A, c0sq);
  return {[e](double h) { e.check(h); return e.rho(h); },
          [e](double h) { e.check(h); return e.p(h); },
          [e](double h) { e.check(h); return e.cs(h); }};
}

}  // namespace gv
