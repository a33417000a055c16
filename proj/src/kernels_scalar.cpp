#include <cmath>

#include "visco/kernels.hpp"

namespace visco::kernels {

namespace {

inline double cell_rate(const StepContext& ctx, double sigma, std::size_t i) {
    const double r = sigma - ctx.stress[i];
    const double slack = std::abs(r) - ctx.mu[i];
    const double slip = slack > 0.0 ? std::copysign(slack, r) * ctx.inv_impedance[i] : 0.0;
    return slip - ctx.d_ell;
}

double residual_scalar(const StepContext& ctx, double sigma) {
    double acc = 0.0;
    for (std::size_t i = 0; i < ctx.weight.size(); ++i)
        acc += ctx.weight[i] * cell_rate(ctx, sigma, i);
    return acc;
}

double rates_scalar(const StepContext& ctx, double sigma, std::span<double> rates) {
    double acc = 0.0;
    for (std::size_t i = 0; i < ctx.weight.size(); ++i) {
        const double dS = cell_rate(ctx, sigma, i);
        rates[i] = dS;
        acc += ctx.weight[i] * dS;
    }
    return acc;
}

}  // namespace

Kernel scalar_kernel() { return {residual_scalar, rates_scalar, "scalar"}; }

}  // namespace visco::kernels
