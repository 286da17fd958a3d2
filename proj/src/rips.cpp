#include "ripsplot/rips.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ripsplot/detail/packed_keys.hpp"

namespace ripsplot {

namespace {

// (dimension, lex vertex list) comparison, ignoring diameter
bool vertex_order_less(const Simplex& a, const Simplex& b) {
	if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
	return a.vertices < b.vertices;
}

bool filtration_order_less(const FiltrationEntry& a, const FiltrationEntry& b) {
	if (a.diameter != b.diameter) return a.diameter < b.diameter;
	return vertex_order_less(a.simplex, b.simplex);
}

void validate_simplex(const Simplex& s) {
	if (s.vertices.empty()) throw std::invalid_argument("empty simplex");
	for (std::size_t i = 0; i + 1 < s.vertices.size(); ++i)
		if (s.vertices[i] >= s.vertices[i + 1])
			throw std::invalid_argument("simplex vertices must be strictly increasing");
	if (s.vertices.front() < 0) throw std::invalid_argument("negative vertex id");
}

}  // namespace

Filtration::Filtration(std::vector<FiltrationEntry> entries) : entries_(std::move(entries)) {
	VertexId max_vertex = -1;
	for (std::size_t i = 0; i < entries_.size(); ++i) {
		const auto& e = entries_[i];
		validate_simplex(e.simplex);
		if (!std::isfinite(e.diameter) || e.diameter < 0.0)
			throw std::invalid_argument("diameter must be finite and nonnegative");
		if (i > 0 && e.diameter < entries_[i - 1].diameter)
			throw std::invalid_argument("diameters must be nondecreasing along the filtration");
		max_dim_ = std::max(max_dim_, e.simplex.dimension());
		max_diameter_ = std::max(max_diameter_, e.diameter);
		max_vertex = std::max(max_vertex, e.simplex.vertices.back());
	}
	point_count_ = entries_.empty() ? 0 : static_cast<std::size_t>(max_vertex) + 1;

	pack_width_ = detail::pack_width(point_count_);
	packed_ = detail::packable(pack_width_, max_dim_);
	if (packed_) {
		std::vector<std::vector<std::pair<std::uint64_t, Index>>> buckets(
		    static_cast<std::size_t>(max_dim_) + 1);
		for (std::size_t i = 0; i < entries_.size(); ++i) {
			const auto& v = entries_[i].simplex.vertices;
			buckets[v.size() - 1].emplace_back(detail::pack_key(v.data(), v.size(), pack_width_),
			                                   static_cast<Index>(i));
		}
		dim_keys_.resize(buckets.size());
		dim_pos_.resize(buckets.size());
		for (std::size_t d = 0; d < buckets.size(); ++d) {
			auto& b = buckets[d];
			std::sort(b.begin(), b.end());
			dim_keys_[d].reserve(b.size());
			dim_pos_[d].reserve(b.size());
			for (std::size_t i = 0; i < b.size(); ++i) {
				if (i > 0 && b[i].first == b[i - 1].first)
					throw std::invalid_argument("duplicate simplex in filtration");
				dim_keys_[d].push_back(b[i].first);
				dim_pos_[d].push_back(b[i].second);
			}
		}
	} else {
		by_vertices_.resize(entries_.size());
		for (std::size_t i = 0; i < entries_.size(); ++i) by_vertices_[i] = static_cast<Index>(i);
		std::sort(by_vertices_.begin(), by_vertices_.end(), [this](Index a, Index b) {
			return vertex_order_less(entries_[static_cast<std::size_t>(a)].simplex,
			                         entries_[static_cast<std::size_t>(b)].simplex);
		});
		for (std::size_t i = 0; i + 1 < by_vertices_.size(); ++i)
			if (entries_[static_cast<std::size_t>(by_vertices_[i])].simplex ==
			    entries_[static_cast<std::size_t>(by_vertices_[i + 1])].simplex)
				throw std::invalid_argument("duplicate simplex in filtration");
	}

	// faces must exist and appear before their cofaces
	std::vector<VertexId> face;
	for (std::size_t i = 0; i < entries_.size(); ++i) {
		const auto& v = entries_[i].simplex.vertices;
		if (v.size() == 1) continue;
		face.assign(v.begin() + 1, v.end());
		for (std::size_t drop = 0; drop < v.size(); ++drop) {
			if (drop > 0) face[drop - 1] = v[drop - 1];
			const Index pos = index_of(face);
			if (pos < 0) throw std::invalid_argument("filtration is missing a face");
			if (pos >= static_cast<Index>(i))
				throw std::invalid_argument("face appears after its coface");
		}
	}
}

Index Filtration::index_of(std::span<const VertexId> vertices) const {
	if (vertices.empty()) return -1;
	if (packed_) {
		const std::size_t d = vertices.size() - 1;
		if (d >= dim_keys_.size()) return -1;
		const auto& keys = dim_keys_[d];
		const std::uint64_t key = detail::pack_key(vertices.data(), vertices.size(), pack_width_);
		auto it = std::lower_bound(keys.begin(), keys.end(), key);
		if (it == keys.end() || *it != key) return -1;
		return dim_pos_[d][static_cast<std::size_t>(it - keys.begin())];
	}
	auto less = [this](Index idx, std::span<const VertexId> key) {
		const auto& v = entries_[static_cast<std::size_t>(idx)].simplex.vertices;
		if (v.size() != key.size()) return v.size() < key.size();
		return std::lexicographical_compare(v.begin(), v.end(), key.begin(), key.end());
	};
	auto it = std::lower_bound(by_vertices_.begin(), by_vertices_.end(), vertices, less);
	if (it == by_vertices_.end()) return -1;
	const auto& v = entries_[static_cast<std::size_t>(*it)].simplex.vertices;
	if (v.size() != vertices.size() || !std::equal(v.begin(), v.end(), vertices.begin())) return -1;
	return *it;
}

double simplex_diameter(const Simplex& simplex, const DistanceMatrix& dm) {
	validate_simplex(simplex);
	if (static_cast<std::size_t>(simplex.vertices.back()) >= dm.size())
		throw std::out_of_range("simplex vertex outside distance matrix");
	double diam = 0.0;
	for (std::size_t i = 0; i < simplex.vertices.size(); ++i)
		for (std::size_t j = i + 1; j < simplex.vertices.size(); ++j)
			diam = std::max(diam, dm(static_cast<std::size_t>(simplex.vertices[i]),
			                         static_cast<std::size_t>(simplex.vertices[j])));
	return diam;
}

namespace {

// Depth-first extension: each simplex grows by appending a larger vertex,
// diameter updates incrementally from the new vertex's distances.
void extend(const DistanceMatrix& dm, double threshold, int max_dim, std::vector<VertexId>& current,
            double diam, std::vector<FiltrationEntry>& out) {
	const auto n = static_cast<VertexId>(dm.size());
	if (static_cast<int>(current.size()) - 1 >= max_dim) return;
	for (VertexId v = current.back() + 1; v < n; ++v) {
		double new_diam = diam;
		bool ok = true;
		for (VertexId u : current) {
			const double d = dm(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
			if (d > threshold) {
				ok = false;
				break;
			}
			new_diam = std::max(new_diam, d);
		}
		if (!ok) continue;
		current.push_back(v);
		out.push_back({Simplex{current}, new_diam});
		extend(dm, threshold, max_dim, current, new_diam, out);
		current.pop_back();
	}
}

}  // namespace

Filtration build_rips_filtration(const DistanceMatrix& dm, int max_dim,
                                 std::optional<double> threshold) {
	if (max_dim < 0) throw std::invalid_argument("max_dim must be nonnegative");
	if (threshold) {
		if (!std::isfinite(*threshold) || *threshold <= 0.0)
			throw std::invalid_argument("threshold must be positive and finite");
	}
	const double t = threshold ? *threshold : dm.max_entry();

	std::vector<FiltrationEntry> entries;
	std::vector<VertexId> current;
	for (VertexId v = 0; v < static_cast<VertexId>(dm.size()); ++v) {
		current = {v};
		entries.push_back({Simplex{current}, 0.0});
		extend(dm, t, max_dim, current, 0.0, entries);
	}
	std::sort(entries.begin(), entries.end(), filtration_order_less);
	return Filtration(std::move(entries));
}

}  // namespace ripsplot
