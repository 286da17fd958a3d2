#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ripsplot/point_cloud.hpp"

namespace ripsplot {

using VertexId = std::int32_t;
using Index = std::int64_t;

struct Simplex {
	// vertices kept sorted strictly increasing; dimension = count - 1
	std::vector<VertexId> vertices;

	int dimension() const { return static_cast<int>(vertices.size()) - 1; }
	bool operator==(const Simplex&) const = default;
};

struct FiltrationEntry {
	Simplex simplex;
	double diameter = 0.0;
};

// Ordered simplices with nondecreasing diameters; every face appears before
// its cofaces and no simplex repeats. Construction validates all three,
// since the reduction silently depends on them. Any valid order is accepted,
// not just the canonical (diameter, dimension, lexicographic) one.
class Filtration {
public:
	Filtration() = default;
	explicit Filtration(std::vector<FiltrationEntry> entries);

	const std::vector<FiltrationEntry>& entries() const { return entries_; }
	const FiltrationEntry& operator[](Index i) const { return entries_[static_cast<std::size_t>(i)]; }
	Index size() const { return static_cast<Index>(entries_.size()); }
	std::size_t point_count() const { return point_count_; }
	int max_dim() const { return max_dim_; }
	double max_diameter() const { return max_diameter_; }

	// Position of the simplex with exactly these vertices, or -1 if absent.
	Index index_of(std::span<const VertexId> vertices) const;

private:
	std::vector<FiltrationEntry> entries_;
	// lookup structures: per-dimension packed 64-bit keys when point count
	// and dimension allow, otherwise a permutation sorted by
	// (size, vertex list)
	std::vector<std::vector<std::uint64_t>> dim_keys_;
	std::vector<std::vector<Index>> dim_pos_;
	std::vector<Index> by_vertices_;
	unsigned pack_width_ = 0;
	bool packed_ = false;
	std::size_t point_count_ = 0;
	int max_dim_ = -1;
	double max_diameter_ = 0.0;
};

// Max pairwise distance within the simplex; 0 for vertices.
double simplex_diameter(const Simplex& simplex, const DistanceMatrix& dm);

// All simplices of dimension <= max_dim whose diameter fits under the
// threshold (inclusive). No threshold means the max distance-matrix entry,
// so every edge is admitted.
Filtration build_rips_filtration(const DistanceMatrix& dm, int max_dim,
                                 std::optional<double> threshold = std::nullopt);

}  // namespace ripsplot
