#pragma once
// Bitset word kernels for the exact clique / independent-set solvers. The
// scalar implementations are the reference; on x86-64 an AVX2 variant is
// picked at runtime when the CPU supports it, and the two are equivalence-
// tested against each other.

#include <cstddef>
#include <cstdint>

namespace grzh::kern {

// popcount(a & b)
std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                         std::size_t nwords);
// dst = a & b
void and_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t nwords);
// (a & b) != 0
bool intersects(const std::uint64_t* a, const std::uint64_t* b,
                std::size_t nwords);
std::size_t popcount(const std::uint64_t* a, std::size_t nwords);

// Active backend name: "avx2" or "scalar".
const char* backend();
// Force "scalar", "avx2" or "auto"; returns false if the request is
// unavailable on this machine.
bool set_backend(const char* name);

namespace ref {
std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                         std::size_t nwords);
void and_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t nwords);
bool intersects(const std::uint64_t* a, const std::uint64_t* b,
                std::size_t nwords);
std::size_t popcount(const std::uint64_t* a, std::size_t nwords);
}  // namespace ref

}  // namespace grzh::kern
