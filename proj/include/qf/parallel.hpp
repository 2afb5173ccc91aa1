#pragma once

namespace qf {

// Thread count for the OpenMP kernels: QF_THREADS if set, else the OpenMP default.
int thread_count();

}  // namespace qf
