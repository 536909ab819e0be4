#include "pivotlab/random.hpp"

#include <cmath>

namespace pivotlab {

std::complex<double> RandomStream::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

RandomStream seed_stream(std::uint64_t master_seed, std::uint64_t trial_index) {
  const std::uint64_t base = mix64(master_seed ^ 0x6A09E667F3BCC908ULL);
  return RandomStream(mix64(base + mix64(trial_index + 0x3C6EF372FE94F82BULL)));
}

}  // namespace pivotlab
