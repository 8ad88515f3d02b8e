// Copyright 2026 The lowregret Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOWREGRET_PARALLEL_HPP_
#define LOWREGRET_PARALLEL_HPP_

#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lowregret {

// Every Monte Carlo kernel (trials, samples, corpus draws) is a map over an
// index range where job i derives its own RNG substream and writes slot i.
// That makes the OpenMP path produce bit-identical results to the serial
// reference: scheduling changes who computes a slot, never its value, and
// reductions happen afterwards in index order.
enum class ExecMode { kSerial, kParallel };

template <typename Body>
void indexed_for(long n, ExecMode mode, Body&& body) {
#ifdef _OPENMP
  if (mode == ExecMode::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
      body(i);
    }
    return;
  }
#else
  (void)mode;
#endif
  for (long i = 0; i < n; ++i) {
    body(i);
  }
}

inline bool parallel_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace lowregret

#endif  // LOWREGRET_PARALLEL_HPP_
