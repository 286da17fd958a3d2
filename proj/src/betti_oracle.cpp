#include "ripsplot/betti_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ripsplot {

std::int64_t BettiCurve::value_at(double t) const {
	auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
	if (it == breakpoints.begin()) return 0;
	return values[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

namespace {

using Subset = std::vector<int>;

// All vertex subsets of the given size whose pairwise distances stay within t.
std::vector<Subset> enumerate_simplices(const DistanceMatrix& dm, double t, int size) {
	std::vector<Subset> out;
	Subset current;
	auto recurse = [&](auto&& self, int next) -> void {
		if (static_cast<int>(current.size()) == size) {
			out.push_back(current);
			return;
		}
		for (int v = next; v < static_cast<int>(dm.size()); ++v) {
			bool fits = true;
			for (int u : current) {
				if (dm(static_cast<std::size_t>(u), static_cast<std::size_t>(v)) > t) {
					fits = false;
					break;
				}
			}
			if (!fits) continue;
			current.push_back(v);
			self(self, v + 1);
			current.pop_back();
		}
	};
	recurse(recurse, 0);
	return out;
}

using Bits = std::vector<std::uint64_t>;

int highest_bit(const Bits& b) {
	for (std::size_t w = b.size(); w-- > 0;) {
		if (b[w] == 0) continue;
		for (int bit = 63; bit >= 0; --bit)
			if (b[w] >> bit & 1) return static_cast<int>(w) * 64 + bit;
	}
	return -1;
}

void xor_into(Bits& a, const Bits& b) {
	for (std::size_t w = 0; w < a.size(); ++w) a[w] ^= b[w];
}

// Rank over Z/2 of the boundary map from `cols` (size m+1 subsets) to `rows`
// (size m subsets), by eliminating each column against a growing basis.
std::int64_t boundary_rank(const std::vector<Subset>& cols, const std::vector<Subset>& rows) {
	if (cols.empty() || rows.empty()) return 0;
	std::map<Subset, int> row_id;
	for (std::size_t i = 0; i < rows.size(); ++i) row_id[rows[i]] = static_cast<int>(i);

	const std::size_t words = (rows.size() + 63) / 64;
	std::map<int, Bits> basis;  // pivot bit -> reduced column
	std::int64_t rank = 0;
	Subset face;
	for (const auto& col : cols) {
		Bits bits(words, 0);
		for (std::size_t drop = 0; drop < col.size(); ++drop) {
			face.clear();
			for (std::size_t i = 0; i < col.size(); ++i)
				if (i != drop) face.push_back(col[i]);
			const int r = row_id.at(face);
			bits[static_cast<std::size_t>(r) / 64] ^= std::uint64_t{1} << (r % 64);
		}
		int pivot = highest_bit(bits);
		while (pivot >= 0) {
			auto it = basis.find(pivot);
			if (it == basis.end()) break;
			xor_into(bits, it->second);
			pivot = highest_bit(bits);
		}
		if (pivot >= 0) {
			basis.emplace(pivot, std::move(bits));
			++rank;
		}
	}
	return rank;
}

}  // namespace

std::int64_t betti_at(const DistanceMatrix& dm, double t, int degree, int max_dim) {
	if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
	if (max_dim < degree + 1)
		throw std::invalid_argument("max_dim must be at least degree + 1 to resolve deaths");
	if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("threshold must be finite and >= 0");

	const auto simplices = enumerate_simplices(dm, t, degree + 1);
	const auto cofaces = enumerate_simplices(dm, t, degree + 2);
	std::int64_t rank_down = 0;
	if (degree > 0) {
		const auto faces = enumerate_simplices(dm, t, degree);
		rank_down = boundary_rank(simplices, faces);
	}
	const std::int64_t rank_up = boundary_rank(cofaces, simplices);
	return static_cast<std::int64_t>(simplices.size()) - rank_down - rank_up;
}

BettiCurve betti_curve_from_diagram(const PersistenceDiagram& diag, int degree) {
	BettiCurve curve;
	curve.degree = degree;
	for (const auto& f : diag.features) {
		if (f.dimension != degree) continue;
		curve.breakpoints.push_back(f.birth);
		if (!f.essential()) curve.breakpoints.push_back(f.death);
	}
	std::sort(curve.breakpoints.begin(), curve.breakpoints.end());
	curve.breakpoints.erase(std::unique(curve.breakpoints.begin(), curve.breakpoints.end()),
	                        curve.breakpoints.end());
	curve.values.reserve(curve.breakpoints.size());
	for (double t : curve.breakpoints) {
		std::int64_t alive = 0;
		for (const auto& f : diag.features)
			if (f.dimension == degree && f.birth <= t && t < f.death) ++alive;
		curve.values.push_back(alive);
	}
	return curve;
}

}  // namespace ripsplot
