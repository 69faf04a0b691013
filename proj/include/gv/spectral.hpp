#pragma once

#include <complex>
#include <vector>

#include "gv/grid.hpp"

namespace gv {

using cplx = std::complex<double>;
// Half spectrum, nx * (ny/2+1), forward transform scaled by 1/(nx*ny).
using Spectrum = std::vector<cplx>;

Spectrum fft(const Field& f);
Field ifft(const Spectrum& s, const Grid2D& g);

// Derivative wavenumbers per half-spectrum entry (Nyquist zeroed), axis in {1,2}.
const std::vector<double>& deriv_wavenumbers(const Grid2D& g, int axis);
// |xi| per half-spectrum entry, Nyquist kept.
const std::vector<double>& wavenumber_magnitude(const Grid2D& g);
// Multiplicity of each half-spectrum entry in the full sum (1 or 2).
const std::vector<double>& hermitian_weight(const Grid2D& g);
// 1 on retained modes of the 2/3 rule, 0 elsewhere.
const std::vector<double>& dealias_mask(const Grid2D& g);

Field spectral_derivative(const Field& f, int axis);
Field spectral_derivative2(const Field& f, int a, int b);
Field derivative_from_spectrum(const Spectrum& s, const Grid2D& g, int axis);
Field derivative2_from_spectrum(const Spectrum& s, const Grid2D& g, int a, int b);

void dealias(Spectrum& s, const Grid2D& g);
Field dealiased(const Field& f);
// exp(-amp * eta^order) on retained modes, eta the normalized max-norm wavenumber
void exp_filter(Spectrum& s, const Grid2D& g, double order, double amp);

Field apply_multiplier(const Field& f, const std::vector<double>& m);

// 1D real periodic transform helpers (length n, forward scaled by 1/n).
std::vector<cplx> fft1d(const std::vector<double>& x);
std::vector<double> ifft1d(const std::vector<cplx>& c, int n);
// d/dx on a periodic line of length L
std::vector<double> derivative1d(const std::vector<double>& x, double L);

}  // namespace gv
