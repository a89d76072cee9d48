#include "grzh/kernels.hpp"

#include <bit>
#include <cstring>

namespace grzh::kern {

namespace ref {

std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                         std::size_t nwords) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < nwords; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

void and_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t nwords) {
  for (std::size_t i = 0; i < nwords; ++i) dst[i] = a[i] & b[i];
}

bool intersects(const std::uint64_t* a, const std::uint64_t* b,
                std::size_t nwords) {
  for (std::size_t i = 0; i < nwords; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

std::size_t popcount(const std::uint64_t* a, std::size_t nwords) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < nwords; ++i) c += std::popcount(a[i]);
  return c;
}

}  // namespace ref

#if defined(GRZH_HAVE_AVX2_TU)
namespace avx2 {
std::size_t and_popcount(const std::uint64_t*, const std::uint64_t*, std::size_t);
void and_into(std::uint64_t*, const std::uint64_t*, const std::uint64_t*, std::size_t);
bool intersects(const std::uint64_t*, const std::uint64_t*, std::size_t);
std::size_t popcount(const std::uint64_t*, std::size_t);
}  // namespace avx2
#endif

namespace {

struct Table {
  std::size_t (*and_popcount)(const std::uint64_t*, const std::uint64_t*, std::size_t);
  void (*and_into)(std::uint64_t*, const std::uint64_t*, const std::uint64_t*, std::size_t);
  bool (*intersects)(const std::uint64_t*, const std::uint64_t*, std::size_t);
  std::size_t (*popcount)(const std::uint64_t*, std::size_t);
  const char* name;
};

constexpr Table kScalar{ref::and_popcount, ref::and_into, ref::intersects,
                        ref::popcount, "scalar"};

bool avx2_available() {
#if defined(GRZH_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Table pick_auto() {
#if defined(GRZH_HAVE_AVX2_TU)
  if (avx2_available())
    return {avx2::and_popcount, avx2::and_into, avx2::intersects, avx2::popcount,
            "avx2"};
#endif
  return kScalar;
}

Table& table() {
  static Table t = pick_auto();
  return t;
}

}  // namespace

std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                         std::size_t nwords) {
  return table().and_popcount(a, b, nwords);
}
void and_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t nwords) {
  table().and_into(dst, a, b, nwords);
}
bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
  return table().intersects(a, b, nwords);
}
std::size_t popcount(const std::uint64_t* a, std::size_t nwords) {
  return table().popcount(a, nwords);
}

const char* backend() { return table().name; }

bool set_backend(const char* name) {
  if (std::strcmp(name, "scalar") == 0) {
    table() = kScalar;
    return true;
  }
  if (std::strcmp(name, "auto") == 0) {
    table() = pick_auto();
    return true;
  }
#if defined(GRZH_HAVE_AVX2_TU)
  if (std::strcmp(name, "avx2") == 0 && avx2_available()) {
    table() = Table{avx2::and_popcount, avx2::and_into, avx2::intersects,
                    avx2::popcount, "avx2"};
    return true;
  }
#endif
  return false;
}

}  // namespace grzh::kern
