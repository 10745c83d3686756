#include <benchmark/benchmark.h>
#include "corf/tiling.hpp"
BENCHMARK_MAIN();
