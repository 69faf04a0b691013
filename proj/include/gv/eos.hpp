#pragma once

#include <functional>
#include <utility>

namespace gv {

// p = rho^A. h is the log-enthalpy with dh/drho = c_s^2/(p+rho).
// For A > 1 the additive constant in h is fixed by the sound speed at h = 0:
// c_s(0)^2 = c0sq (c0sq = 0 gives h = A/(A-1) log(1+rho^{A-1})).
// For A = 1, rho = e^{2h} and c_s = 1.
class EquationOfState {
 public:
  explicit EquationOfState(double A = 2.0, double c0sq = 0.5);

  double A() const { return A_; }
  double c0sq() const { return c0sq_; }
  bool stiff() const { return A_ == 1.0; }

  double rho(double h) const;
  double p(double h) const;
  double cs2(double h) const;
  double cs(double h) const;
  double dcs(double h) const;  // c_s'(h)
  double h_of_rho(double rho) const;
  double h_of_p(double p) const;

  // open admissible interval of h (c_s <= 1, rho > 0)
  std::pair<double, double> window() const;
  bool admissible(double h) const;
  // throws DomainError naming h when c_s^2 > 1 + 1e-12 or rho <= 0
  void check(double h) const;

 private:
  double q(double h) const;  // rho^{A-1}
  double A_;
  double c0sq_;
  double qref_;
};

struct ClosedForms {
  std::function<double(double)> rho, p, cs;
};
ClosedForms eos_closed_forms(double A, double c0sq = 0.5);

}  // namespace gv
