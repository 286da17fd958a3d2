#include "ripsplot/diagram.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "ripsplot/detail/numeric.hpp"

namespace ripsplot {

std::vector<FlatPoint> to_flat(const PersistenceDiagram& diag) {
	std::vector<FlatPoint> out;
	out.reserve(diag.features.size());
	for (const auto& f : diag.features)
		out.push_back({f.dimension, f.birth, f.essential() ? kInfiniteDeath : f.death - f.birth});
	return out;
}

std::vector<std::size_t> rank_by_persistence(const PersistenceDiagram& diag, int dimension) {
	std::vector<std::size_t> idx;
	for (std::size_t i = 0; i < diag.features.size(); ++i) {
		const auto& f = diag.features[i];
		if (f.dimension == dimension && !f.essential()) idx.push_back(i);
	}
	std::stable_sort(idx.begin(), idx.end(), [&diag](std::size_t a, std::size_t b) {
		const auto& fa = diag.features[a];
		const auto& fb = diag.features[b];
		const double pa = fa.death - fa.birth;
		const double pb = fb.death - fb.birth;
		if (pa != pb) return pa > pb;
		if (fa.birth != fb.birth) return fa.birth < fb.birth;
		return a < b;
	});
	return idx;
}

double plot_efficiency(const PersistenceDiagram& diag, PlotStyle style) {
	bool any_finite = false;
	for (const auto& f : diag.features)
		if (!f.essential()) any_finite = true;
	if (!any_finite)
		throw std::invalid_argument("plot_efficiency needs at least one finite feature");
	switch (style) {
		case PlotStyle::conventional:
			// upper triangle of the shared square
			return 0.5;
		case PlotStyle::flat:
			// whole rectangle is feasible
			return 1.0;
		case PlotStyle::barcode:
			break;
	}
	throw std::invalid_argument("plot_efficiency is defined for conventional and flat styles");
}

void write_flat_csv(const std::vector<FlatPoint>& points, std::ostream& out) {
	out << "dimension,birth,persistence\n";
	for (const auto& p : points) {
		out << p.dimension << ',' << detail::format_double(p.birth) << ',';
		if (p.persistence == kInfiniteDeath)
			out << "inf";
		else
			out << detail::format_double(p.persistence);
		out << '\n';
	}
}

void write_flat_csv(const std::vector<FlatPoint>& points, const std::string& path) {
	std::ofstream out(path);
	if (!out) throw std::runtime_error("cannot open file for writing: " + path);
	write_flat_csv(points, out);
	if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ripsplot
