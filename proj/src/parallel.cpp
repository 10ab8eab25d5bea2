#include "hbgk/parallel.hpp"

#include <omp.h>

namespace hbgk {

void set_thread_count(int threads) { omp_set_num_threads(threads <= 0 ? 1 : threads); }

int thread_count() { return omp_get_max_threads(); }

}  // namespace hbgk
