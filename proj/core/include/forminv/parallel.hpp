#pragma once

#include <functional>

namespace forminv {

// Global worker-count knob; 1 (the default) means fully serial execution.
int parallelism();
void set_parallelism(int n);

// Runs fn(0) .. fn(count-1), possibly on several threads. Callers must make
// iterations independent and fold results in a fixed order afterwards so
// output never depends on the thread count.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace forminv
