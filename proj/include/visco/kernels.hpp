#pragma once

#include <span>
#include <string>

// Inner-loop kernels for the implicit per-cell update. At a fixed timestep the
// inclusion
//   sigma ∈ A_i (ell^{j+1} + S_i + dt dS_i) + nu_i (dS_i + d_ell) + mu_i sgn(dS_i + d_ell)
// has the closed-form solution
//   dS_i = -d_ell + shrink(sigma - Sigma_i, mu_i) / (A_i dt + nu_i),
// where Sigma_i = A_i (ell^j + S_i) is the current elastic stress and
// shrink(r, mu) = sgn(r) max(|r| - mu, 0) is the soft threshold. The kernels
// evaluate these rates and the weighted constraint residual sum w_i dS_i for
// all cells at once; a scalar reference and an AVX2 variant are provided and
// selected at runtime.

namespace visco::kernels {

// Per-step invariants, valid across all secant iterations within one step.
struct StepContext {
    std::span<const double> weight;         // w_i, sum = 1
    std::span<const double> mu;             // friction thresholds
    std::span<const double> stress;         // Sigma_i = A_i (ell^j + S_i)
    std::span<const double> inv_impedance;  // 1 / (A_i dt + nu_i)
    double d_ell = 0.0;                     // forward difference of the loading
};

using ResidualFn = double (*)(const StepContext&, double sigma_trial);
// Writes dS into `rates` and returns the residual.
using RatesFn = double (*)(const StepContext&, double sigma_trial, std::span<double> rates);

struct Kernel {
    ResidualFn residual = nullptr;
    RatesFn rates = nullptr;
    const char* name = "";
};

Kernel scalar_kernel();
bool avx2_available();
Kernel avx2_kernel();  // valid only when avx2_available()

// Best available kernel, overridable via the VISCO_KERNEL environment
// variable ("scalar" or "avx2"). The choice is made once per process.
const Kernel& active_kernel();

}  // namespace visco::kernels
