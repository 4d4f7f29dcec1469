#include <benchmark/benchmark.h>

// The packaged benchmark_main archive is not linkable with every toolchain.
BENCHMARK_MAIN();
