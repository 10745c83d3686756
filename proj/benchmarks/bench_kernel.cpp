#include <benchmark/benchmark.h>
#include "corf/isometry.hpp"
BENCHMARK_MAIN();
