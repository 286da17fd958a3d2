#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ripsplot/rips.hpp"

namespace ripsplot {

struct BoundaryColumn {
	// row indices sorted ascending; all strictly below the column's own index
	std::vector<Index> rows;
};

// Largest row present, or nothing for an empty column.
std::optional<Index> low(const BoundaryColumn& col);

// Boundary of the simplex at `index`: positions of its codimension-1 faces.
// Every face must be present in the filtration.
BoundaryColumn boundary_column(const Filtration& fil, Index index);

constexpr Index kNoKiller = -1;

struct ReductionPair {
	Index creator = 0;
	Index killer = kNoKiller;  // kNoKiller when the class survives the filtration
	bool operator==(const ReductionPair&) const = default;
};

// Column reduction over Z/2 with the twist: dimensions are processed from
// high to low, and a column whose index was already claimed as a pivot row
// is skipped (it is known to reduce to zero). Returns one entry per creator,
// ordered by creator index.
std::vector<ReductionPair> reduce(const Filtration& fil);

// Plain left-to-right reduction, no clearing. Produces the same pairing as
// reduce(); kept separate so tests can pin the equality.
std::vector<ReductionPair> reduce_plain(const Filtration& fil);

inline constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

struct PersistenceFeature {
	int dimension = 0;
	double birth = 0.0;
	double death = 0.0;  // kInfiniteDeath for essential classes
	bool operator==(const PersistenceFeature&) const = default;

	bool essential() const { return death == kInfiniteDeath; }
	double persistence() const { return death - birth; }
};

struct PersistenceDiagram {
	std::size_t n_points = 0;
	double max_scale = 0.0;
	std::vector<PersistenceFeature> features;
};

// Pairs from reduce() turned into features of degree <= homology_max_dim.
// Zero-persistence pairs are dropped; unpaired creators become essential.
// The filtration must reach dimension homology_max_dim + 1, otherwise deaths
// in the top degree would be unknowable and the call fails loudly.
PersistenceDiagram compute_persistence(const Filtration& fil, int homology_max_dim);

// CSV: header `dimension,birth,death`, floats at full precision, `inf` for
// essential deaths.
void write_diagram_csv(const PersistenceDiagram& diag, std::ostream& out);
void write_diagram_csv(const PersistenceDiagram& diag, const std::string& path);
PersistenceDiagram read_diagram_csv(std::istream& in, const std::string& name);
PersistenceDiagram read_diagram_csv(const std::string& path);

// JSON: object with n_points, max_scale and a features array; essential
// deaths serialize as the string "inf".
void write_diagram_json(const PersistenceDiagram& diag, std::ostream& out);
void write_diagram_json(const PersistenceDiagram& diag, const std::string& path);

}  // namespace ripsplot
