#include "ripsplot/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "ripsplot/detail/numeric.hpp"

namespace ripsplot {

std::map<int, MarkerStyle> PlotSpec::default_markers() {
	return {
	    {0, {MarkerShape::circle, "#d62728"}},
	    {1, {MarkerShape::triangle, "#2ca02c"}},
	    {2, {MarkerShape::square, "#1f77b4"}},
	};
}

namespace {

using detail::format_double;

std::string num(double v) { return format_double(v); }

// short human-readable tick value
std::string tick_label(double v) {
	char buf[32];
	std::snprintf(buf, sizeof(buf), "%.4g", v);
	return buf;
}

void validate_spec(const PlotSpec& spec) {
	if (!(spec.width > 2.0 * spec.margin) || !(spec.height > 2.0 * spec.margin))
		throw std::invalid_argument("plot size must exceed twice the margin");
	if (!(spec.essential_cap_factor > 1.0))
		throw std::invalid_argument("essential_cap_factor must exceed 1");
	if (!(spec.marker_size > 0.0)) throw std::invalid_argument("marker_size must be positive");
	if (!(spec.margin >= 10.0)) throw std::invalid_argument("margin too small for labels");
}

const MarkerStyle& style_for(const PlotSpec& spec, int dimension) {
	auto it = spec.markers.find(dimension);
	if (it == spec.markers.end())
		throw std::invalid_argument("no marker assigned for dimension " +
		                            std::to_string(dimension));
	return it->second;
}

// Features the plot will actually show, in diagram order.
std::vector<PersistenceFeature> rendered_features(const PersistenceDiagram& diag,
                                                  const PlotSpec& spec) {
	std::vector<PersistenceFeature> out;
	for (const auto& f : diag.features) {
		if (f.essential() && !spec.include_essential) continue;
		style_for(spec, f.dimension);  // every rendered degree needs a style
		out.push_back(f);
	}
	return out;
}

// Largest finite diameter in the diagram; the shared-axis scale derives from
// it. Falls back to 1 when the diagram has no positive finite value.
double max_finite_value(const PersistenceDiagram& diag) {
	double m = 0.0;
	for (const auto& f : diag.features) {
		m = std::max(m, f.birth);
		if (!f.essential()) m = std::max(m, f.death);
	}
	return m > 0.0 ? m : 1.0;
}

struct Svg {
	std::string buf;

	void open(double width, double height) {
		buf += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
		buf += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
		       "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
		       num(height) + "\">\n";
		buf += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" + num(width) +
		       "\" height=\"" + num(height) + "\" fill=\"#ffffff\"/>\n";
	}

	void close() { buf += "</svg>\n"; }

	void line(const std::string& cls, double x1, double y1, double x2, double y2,
	          const std::string& stroke, double stroke_width, const std::string& extra = "") {
		buf += "<line class=\"" + cls + "\"" + extra + " x1=\"" + num(x1) + "\" y1=\"" + num(y1) +
		       "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) + "\" stroke=\"" + stroke +
		       "\" stroke-width=\"" + num(stroke_width) + "\"/>\n";
	}

	void text(double x, double y, const std::string& anchor, const std::string& cls,
	          double size, const std::string& content, const std::string& extra = "") {
		buf += "<text class=\"" + cls + "\" x=\"" + num(x) + "\" y=\"" + num(y) +
		       "\" text-anchor=\"" + anchor + "\" font-family=\"sans-serif\" font-size=\"" +
		       num(size) + "\"" + extra + ">" + content + "</text>\n";
	}

	void circle(int dimension, double cx, double cy, double r, const std::string& color,
	            bool open) {
		buf += "<circle class=\"marker\" data-dimension=\"" + std::to_string(dimension) +
		       "\" cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\"";
		if (open)
			buf += " fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"";
		else
			buf += " fill=\"" + color + "\"";
		buf += "/>\n";
	}

	void rect_marker(int dimension, double cx, double cy, double half, const std::string& color,
	                 bool open) {
		buf += "<rect class=\"marker\" data-dimension=\"" + std::to_string(dimension) +
		       "\" x=\"" + num(cx - half) + "\" y=\"" + num(cy - half) + "\" width=\"" +
		       num(2.0 * half) + "\" height=\"" + num(2.0 * half) + "\"";
		if (open)
			buf += " fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"";
		else
			buf += " fill=\"" + color + "\"";
		buf += "/>\n";
	}

	// upright triangle with centroid on the data point
	void triangle_marker(int dimension, double cx, double cy, double radius,
	                     const std::string& color, bool open) {
		const double dx = radius * 0.8660254037844386;  // sin 60
		const double dy = radius * 0.5;
		buf += "<polygon class=\"marker\" data-dimension=\"" + std::to_string(dimension) +
		       "\" points=\"" + num(cx) + "," + num(cy - radius) + " " + num(cx - dx) + "," +
		       num(cy + dy) + " " + num(cx + dx) + "," + num(cy + dy) + "\"";
		if (open)
			buf += " fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"";
		else
			buf += " fill=\"" + color + "\"";
		buf += "/>\n";
	}

	void marker(const MarkerStyle& style, int dimension, double cx, double cy, double size,
	            bool open) {
		switch (style.shape) {
			case MarkerShape::circle:
				circle(dimension, cx, cy, size, style.color, open);
				return;
			case MarkerShape::square:
				rect_marker(dimension, cx, cy, size * 0.9, style.color, open);
				return;
			case MarkerShape::triangle:
				triangle_marker(dimension, cx, cy, size * 1.25, style.color, open);
				return;
		}
	}
};

// Linear data-to-pixel map over one axis.
struct AxisMap {
	double value_max = 1.0;
	double pixel_origin = 0.0;  // pixel of value 0
	double pixel_span = 1.0;    // signed: negative for the y axis

	double at(double v) const { return pixel_origin + pixel_span * (v / value_max); }
};

void draw_x_axis(Svg& svg, const AxisMap& x, double axis_y, const std::string& label) {
	svg.line("axis", x.pixel_origin, axis_y, x.at(x.value_max), axis_y, "#000000", 1.0);
	for (int i = 0; i <= 4; ++i) {
		const double v = x.value_max * i / 4.0;
		const double px = x.at(v);
		svg.line("tick", px, axis_y, px, axis_y + 4.0, "#000000", 1.0);
		svg.text(px, axis_y + 16.0, "middle", "tick-label", 11.0, tick_label(v));
	}
	svg.text((x.pixel_origin + x.at(x.value_max)) / 2.0, axis_y + 32.0, "middle", "axis-label",
	         12.0, label);
}

void draw_y_axis(Svg& svg, const AxisMap& y, double axis_x, const std::string& label) {
	svg.line("axis", axis_x, y.at(y.value_max), axis_x, y.pixel_origin, "#000000", 1.0);
	for (int i = 0; i <= 4; ++i) {
		const double v = y.value_max * i / 4.0;
		const double py = y.at(v);
		svg.line("tick", axis_x - 4.0, py, axis_x, py, "#000000", 1.0);
		svg.text(axis_x - 8.0, py + 4.0, "end", "tick-label", 11.0, tick_label(v));
	}
	const double mid = (y.pixel_origin + y.at(y.value_max)) / 2.0;
	svg.text(16.0, mid, "middle", "axis-label", 12.0, label,
	         " transform=\"rotate(-90 16 " + num(mid) + ")\"");
}

}  // namespace

SvgDocument render_barcode(const PersistenceDiagram& diag, const PlotSpec& spec) {
	validate_spec(spec);
	auto features = rendered_features(diag, spec);
	// block order: degree 0 at the bottom, higher degrees stacked above
	std::stable_sort(features.begin(), features.end(),
	                 [](const PersistenceFeature& a, const PersistenceFeature& b) {
		                 if (a.dimension != b.dimension) return a.dimension < b.dimension;
		                 if (a.birth != b.birth) return a.birth < b.birth;
		                 return a.death < b.death;
	                 });

	const double cap = spec.essential_cap_factor * max_finite_value(diag);
	const double left = spec.margin;
	const double right = spec.width - spec.margin;
	const double top = spec.margin;
	const double bottom = spec.height - spec.margin;

	AxisMap x{cap, left, right - left};

	Svg svg;
	svg.open(spec.width, spec.height);
	draw_x_axis(svg, x, bottom, "diameter");

	std::vector<int> dims;
	for (const auto& f : features)
		if (dims.empty() || dims.back() != f.dimension) dims.push_back(f.dimension);
	const std::size_t gaps = dims.empty() ? 0 : dims.size() - 1;
	const double slots = static_cast<double>(features.size() + gaps);
	const double slot_h = slots > 0.0 ? (bottom - top) / slots : 0.0;
	const double bar_w = slots > 0.0 ? std::min(8.0, slot_h * 0.6) : 0.0;

	// slot 0 sits at the bottom, so the ascending-degree walk stacks blocks
	// bottom-to-top
	double slot = 0.0;
	int previous_dim = -1;
	double block_start_slot = 0.0;
	auto flush_label = [&](int dim, double until_slot) {
		const double y0 = bottom - block_start_slot * slot_h;
		const double y1 = bottom - until_slot * slot_h;
		svg.text(left - 24.0, (y0 + y1) / 2.0 + 4.0, "middle", "dim-label", 12.0,
		         "H" + std::to_string(dim));
	};
	for (std::size_t i = 0; i < features.size(); ++i) {
		const auto& f = features[i];
		if (previous_dim >= 0 && f.dimension != previous_dim) {
			flush_label(previous_dim, slot);
			slot += 1.0;  // gap between degree blocks
			block_start_slot = slot;
		}
		previous_dim = f.dimension;
		const double y = bottom - (slot + 0.5) * slot_h;
		const auto& style = style_for(spec, f.dimension);
		const std::string tag = " data-dimension=\"" + std::to_string(f.dimension) + "\"";
		if (f.essential()) {
			const double x_end = x.at(cap);
			svg.line("bar", x.at(f.birth), y, x_end - 7.0, y, style.color, bar_w, tag);
			svg.buf += "<polygon class=\"arrowhead\" points=\"" + num(x_end) + "," + num(y) +
			           " " + num(x_end - 7.0) + "," + num(y - 4.0) + " " + num(x_end - 7.0) +
			           "," + num(y + 4.0) + "\" fill=\"" + style.color + "\"/>\n";
		} else {
			svg.line("bar", x.at(f.birth), y, x.at(f.death), y, style.color, bar_w, tag);
		}
		slot += 1.0;
	}
	if (previous_dim >= 0) flush_label(previous_dim, slot);

	svg.close();
	return {std::move(svg.buf)};
}

SvgDocument render_conventional(const PersistenceDiagram& diag, const PlotSpec& spec) {
	validate_spec(spec);
	const auto features = rendered_features(diag, spec);

	const double scale = spec.essential_cap_factor * max_finite_value(diag);
	const double side = std::min(spec.width, spec.height) - 2.0 * spec.margin;
	const double left = spec.margin;
	const double top = spec.margin;
	const double bottom = top + side;

	AxisMap x{scale, left, side};
	AxisMap y{scale, bottom, -side};

	Svg svg;
	svg.open(spec.width, spec.height);
	draw_x_axis(svg, x, bottom, "birth");
	draw_y_axis(svg, y, left, "death");
	svg.line("reference-line", x.at(0.0), y.at(0.0), x.at(scale), y.at(scale), "#888888", 1.0,
	         " stroke-dasharray=\"4 3\"");

	for (const auto& f : features) {
		const auto& style = style_for(spec, f.dimension);
		if (f.essential())
			svg.marker(style, f.dimension, x.at(f.birth), y.at(scale), spec.marker_size, true);
		else
			svg.marker(style, f.dimension, x.at(f.birth), y.at(f.death), spec.marker_size,
			           false);
	}

	svg.close();
	return {std::move(svg.buf)};
}

SvgDocument render_flat(const PersistenceDiagram& diag, const PlotSpec& spec) {
	validate_spec(spec);
	const auto features = rendered_features(diag, spec);

	double max_birth = 0.0;
	double max_pers = 0.0;
	for (const auto& f : features) {
		max_birth = std::max(max_birth, f.birth);
		if (!f.essential()) max_pers = std::max(max_pers, f.death - f.birth);
	}
	if (max_birth <= 0.0) max_birth = 1.0;
	if (max_pers <= 0.0) max_pers = 1.0;

	const double left = spec.margin;
	const double right = spec.width - spec.margin;
	const double top = spec.margin;
	const double bottom = spec.height - spec.margin;

	AxisMap x{1.05 * max_birth, left, right - left};
	AxisMap y{1.05 * max_pers, bottom, top - bottom};

	Svg svg;
	svg.open(spec.width, spec.height);
	draw_x_axis(svg, x, bottom, "birth");
	draw_y_axis(svg, y, left, "persistence");

	for (const auto& f : features) {
		const auto& style = style_for(spec, f.dimension);
		if (f.essential())
			svg.marker(style, f.dimension, x.at(f.birth), y.at(y.value_max), spec.marker_size,
			           true);
		else
			svg.marker(style, f.dimension, x.at(f.birth), y.at(f.death - f.birth),
			           spec.marker_size, false);
	}

	svg.close();
	return {std::move(svg.buf)};
}

void save_svg(const SvgDocument& doc, const std::string& path) {
	std::ofstream out(path);
	if (!out) throw std::runtime_error("cannot open file for writing: " + path);
	out << doc.xml;
	if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ripsplot
