#pragma once

#include "ramsey/kernels.hpp"

namespace ramsey::kernels::internal {

#if defined(RAMSEY_HAVE_AVX2)
const KernelTable& avx2_table_unchecked();
#endif

}  // namespace ramsey::kernels::internal
