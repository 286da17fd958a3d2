#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ripsplot/persistence.hpp"

namespace ripsplot {

enum class PlotStyle { barcode, conventional, flat };

struct FlatPoint {
	int dimension = 0;
	double birth = 0.0;
	double persistence = 0.0;  // infinite for essential features
	bool operator==(const FlatPoint&) const = default;
};

// (dim, b, d) -> (dim, b, d - b), feature for feature in diagram order.
std::vector<FlatPoint> to_flat(const PersistenceDiagram& diag);

// Indices of the finite degree-`dimension` features, most persistent first.
// Ties break by birth ascending, then by original index.
std::vector<std::size_t> rank_by_persistence(const PersistenceDiagram& diag, int dimension);

// Fraction of the plot rectangle where a feature can legally land.
// Conventional diagrams share square axes [0,S]^2 and features live strictly
// above the diagonal, so half the square is structurally unusable; the flat
// layout spans [0, max birth] x [0, max persistence] and admits any point.
double plot_efficiency(const PersistenceDiagram& diag, PlotStyle style);

// CSV: header `dimension,birth,persistence`, same float and `inf`
// conventions as the diagram CSV.
void write_flat_csv(const std::vector<FlatPoint>& points, std::ostream& out);
void write_flat_csv(const std::vector<FlatPoint>& points, const std::string& path);

}  // namespace ripsplot
