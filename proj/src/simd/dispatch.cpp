// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <string_view>

#include "thermo/simd.hpp"

namespace thermo::simd {

const KernelTable& active() {
  static const KernelTable& chosen = [&]() -> const KernelTable& {
    const char* forced = std::getenv("THERMO_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
    if (const KernelTable* avx2 = avx2_kernels()) return *avx2;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace thermo::simd
