#pragma once

#include <bit>
#include <cstdint>

#include "ripsplot/rips.hpp"

namespace ripsplot::detail {

// Bits needed per vertex id for clouds of this size.
inline unsigned pack_width(std::size_t point_count) {
	const std::uint64_t top = point_count > 1 ? static_cast<std::uint64_t>(point_count - 1) : 1;
	return std::bit_width(top);
}

// Whether every simplex up to max_dim fits one 64-bit key.
inline bool packable(unsigned width, int max_dim) {
	return max_dim >= 0 && static_cast<unsigned>(max_dim + 1) * width <= 64;
}

// Most-significant-first packing: among equal-size simplices, key order is
// lexicographic vertex order.
inline std::uint64_t pack_key(const VertexId* v, std::size_t count, unsigned width) {
	std::uint64_t k = 0;
	for (std::size_t i = 0; i < count; ++i)
		k = (k << width) | static_cast<std::uint64_t>(v[i]);
	return k;
}

}  // namespace ripsplot::detail
