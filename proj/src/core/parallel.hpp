/*
 * Copyright 2026 The hajlab Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstddef>
#include <functional>

namespace hajlab {

/// Worker count: hardware concurrency capped by HAJLAB_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Each index is processed exactly once; the
/// first exception thrown (lowest index) is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hajlab
