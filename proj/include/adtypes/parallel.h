// Copyright 2026 The adtypes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ADTYPES_PARALLEL_H_
#define ADTYPES_PARALLEL_H_

#include <functional>

namespace adtypes {

// Calls fn(k) for k in [0, count) on up to hardware_concurrency threads.
// Results must be written to per-k slots; the caller combines them in index
// order so output does not depend on the thread count. The first exception
// thrown by any task is rethrown after all threads join.
void ParallelFor(int count, const std::function<void(int)>& fn);

// Overrides the worker count (0 restores the default).
void SetParallelism(int threads);
int Parallelism();

}  // namespace adtypes

#endif  // ADTYPES_PARALLEL_H_
