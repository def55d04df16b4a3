#include "rovodef/exec.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rovodef {

int max_threads(ExecPolicy policy) {
    if (policy == ExecPolicy::serial) return 1;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace rovodef
