// Copyright (C) 2026 The mqsobolev Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace mqs {

/// Worker count: hardware concurrency, capped by MQSOBOLEV_THREADS when set.
std::size_t worker_count();

/// Runs body(begin, end, worker) over contiguous chunks of [0, n). Chunks are
/// disjoint, so callers writing per-index outputs get results that do not
/// depend on the worker count.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace mqs
