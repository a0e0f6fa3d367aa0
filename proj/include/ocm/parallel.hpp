#pragma once

namespace ocm {

// Serial is the reference path kept for tests and benchmarks; both produce identical results.
enum class Exec { Serial, Parallel };

void set_thread_count(int n);
int thread_count();

}  // namespace ocm
