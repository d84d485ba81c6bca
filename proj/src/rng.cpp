#include "gedembed/rng.hpp"

#include "gedembed/errors.hpp"

namespace gedembed {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

uint64_t derive_seed(uint64_t root, std::string_view purpose, uint64_t counter) {
  uint64_t h = splitmix64(root ^ fnv1a(purpose));
  return splitmix64(h ^ splitmix64(counter));
}

uint64_t Rng::bounded(uint64_t n) {
  if (n == 0) throw_validation("Rng::bounded: n must be >= 1");
  // Rejection sampling over the top of the range keeps the draw unbiased.
  uint64_t x, r;
  do {
    x = next_u64();
    r = x % n;
  } while (x - r > UINT64_MAX - n + 1);
  return r;
}

int64_t Rng::uniform_int(int64_t lo, int64_t hi) {
  if (lo > hi) throw_validation("Rng::uniform_int: empty range");
  uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<int64_t>(bounded(span));
}

double Rng::uniform_real() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform_real(double lo, double hi) {
  return lo + (hi - lo) * uniform_real();
}

}  // namespace gedembed
