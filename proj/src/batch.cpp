#include "mauto/batch.hpp"

#include <exception>
#include <mutex>

namespace mauto {

std::vector<char> accepts_batch(const MAutomaton& a, const std::vector<TupleWord>& words) {
  std::vector<char> out(words.size(), 0);
  for (std::size_t i = 0; i < words.size(); ++i) out[i] = accepts(a, words[i]);
  return out;
}

std::vector<char> accepts_batch_parallel(const MAutomaton& a, const std::vector<TupleWord>& words) {
  std::vector<char> out(words.size(), 0);
  const auto n = static_cast<long>(words.size());
  std::exception_ptr error;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = accepts(a, words[static_cast<std::size_t>(i)]);
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace mauto
