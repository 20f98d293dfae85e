#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace ldp {

// Runs fn(b) for b in [0, nbatch).  The batch decomposition is fixed by the
// caller, so any reduction indexed by b gives the same numbers for one thread
// as for eight.  fn must only touch its own slot of shared output.
template <class F>
void for_batches(int nbatch, int nthreads, F&& fn) {
  if (nthreads <= 1 || nbatch <= 1) {
    for (int b = 0; b < nbatch; ++b) fn(b);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int b = next.fetch_add(1);
      if (b >= nbatch) return;
      fn(b);
    }
  };
  int nt = std::min(nthreads, nbatch);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace ldp
