#include <cstdlib>
#include <cstring>

#include "visco/kernels.hpp"

namespace visco::kernels {

namespace {

Kernel select() {
    if (const char* env = std::getenv("VISCO_KERNEL")) {
        if (std::strcmp(env, "scalar") == 0) return scalar_kernel();
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return avx2_kernel();
    }
    return avx2_available() ? avx2_kernel() : scalar_kernel();
}

}  // namespace

const Kernel& active_kernel() {
    static const Kernel kernel = select();
    return kernel;
}

}  // namespace visco::kernels
