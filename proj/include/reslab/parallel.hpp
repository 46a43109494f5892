#pragma once

#include <functional>

namespace reslab {

/// Worker cap; honors the RESLAB_THREADS environment variable.
int worker_count();

/// Runs fn(block) for block = 0..blocks-1 on up to worker_count() threads.
/// Blocks are fixed work units, so merging per-block results in block order
/// gives the same answer for any thread count.
void parallel_blocks(int blocks, const std::function<void(int)>& fn);

}  // namespace reslab
