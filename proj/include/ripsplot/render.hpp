#pragma once

#include <map>
#include <string>

#include "ripsplot/persistence.hpp"

namespace ripsplot {

enum class MarkerShape { circle, triangle, square };

struct MarkerStyle {
	MarkerShape shape = MarkerShape::circle;
	std::string color = "#000000";
};

struct PlotSpec {
	double width = 640.0;
	double height = 480.0;
	double margin = 56.0;
	// degree 0 = red circle, 1 = green triangle, 2 = blue square
	std::map<int, MarkerStyle> markers = default_markers();
	bool include_essential = false;
	double essential_cap_factor = 1.15;  // must exceed 1
	double marker_size = 4.5;

	static std::map<int, MarkerStyle> default_markers();
};

struct SvgDocument {
	std::string xml;
};

// Horizontal interval per feature, degree blocks stacked bottom-to-top
// (0, then 1, then 2). Essential bars, when included, cap at
// essential_cap_factor x the largest finite diameter and end in an
// arrowhead.
SvgDocument render_barcode(const PersistenceDiagram& diag, const PlotSpec& spec);

// Square plot, shared axes [0, S] with S = essential_cap_factor x largest
// finite diameter, one marker per finite feature at (birth, death), exactly
// one diagonal reference line. Essential features, when included, sit on the
// top border as open markers.
SvgDocument render_conventional(const PersistenceDiagram& diag, const PlotSpec& spec);

// Markers at (birth, death - birth); axes pad the data range by 5%; the
// horizontal axis itself is the zero-persistence reference, so no diagonal
// is drawn.
SvgDocument render_flat(const PersistenceDiagram& diag, const PlotSpec& spec);

void save_svg(const SvgDocument& doc, const std::string& path);

}  // namespace ripsplot
