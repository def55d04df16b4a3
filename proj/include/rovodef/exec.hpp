#pragma once

namespace rovodef {

// Execution policy for the parallel kernels (overlap matrix, frequency scan,
// beam ensemble). Results are required to be bit-identical across policies;
// `serial` is the reference implementation. When the build has no OpenMP
// support, `openmp` silently degrades to the serial path.
enum class ExecPolicy {
    serial,
    openmp,
};

int max_threads(ExecPolicy policy);

}  // namespace rovodef
