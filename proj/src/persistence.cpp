#include "ripsplot/persistence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ripsplot/detail/numeric.hpp"

namespace ripsplot {

std::optional<Index> low(const BoundaryColumn& col) {
	if (col.rows.empty()) return std::nullopt;
	return col.rows.back();
}

BoundaryColumn boundary_column(const Filtration& fil, Index index) {
	if (index < 0 || index >= fil.size()) throw std::out_of_range("filtration index out of range");
	const auto& v = fil[index].simplex.vertices;
	BoundaryColumn col;
	if (v.size() == 1) return col;
	std::vector<VertexId> face(v.begin() + 1, v.end());
	for (std::size_t drop = 0; drop < v.size(); ++drop) {
		if (drop > 0) face[drop - 1] = v[drop - 1];
		const Index pos = fil.index_of(face);
		if (pos < 0) throw std::invalid_argument("filtration is missing a face");
		col.rows.push_back(pos);
	}
	std::sort(col.rows.begin(), col.rows.end());
	return col;
}

namespace {

using Row = std::int32_t;
constexpr Row kNoRow = -1;

// Per-dimension lookup from vertex lists to filtration positions. Vertices
// pack most-significant-first into a 64-bit key and a facet lookup becomes
// one probe of an open-addressing hash table; simplices too large to pack
// fall back to Filtration::index_of.
class FacetIndexer {
public:
	explicit FacetIndexer(const Filtration& fil) : fil_(fil) {
		const std::uint64_t top =
		    fil.point_count() > 1 ? static_cast<std::uint64_t>(fil.point_count() - 1) : 1;
		width_ = std::bit_width(top);
		packable_ = fil.max_dim() >= 0 &&
		            static_cast<unsigned>(fil.max_dim() + 1) * width_ <= 64;
		if (!packable_) return;
		std::vector<std::size_t> counts(static_cast<std::size_t>(fil.max_dim()) + 1, 0);
		for (Index i = 0; i < fil.size(); ++i)
			++counts[static_cast<std::size_t>(fil[i].simplex.dimension())];
		tables_.resize(counts.size());
		for (std::size_t d = 0; d < counts.size(); ++d) tables_[d].init(counts[d]);
		for (Index i = 0; i < fil.size(); ++i) {
			const auto& v = fil[i].simplex.vertices;
			tables_[v.size() - 1].insert(pack(v.data(), v.size()), static_cast<Row>(i));
		}
	}

	Row find(const VertexId* v, std::size_t count) const {
		if (!packable_)
			return static_cast<Row>(fil_.index_of(std::span<const VertexId>(v, count)));
		return tables_[count - 1].lookup(pack(v, count));
	}

private:
	struct Table {
		std::vector<std::uint64_t> keys;
		std::vector<Row> pos;
		std::uint64_t mask = 0;

		static std::uint64_t mix(std::uint64_t x) {
			x ^= x >> 30;
			x *= 0xbf58476d1ce4e5b9ULL;
			x ^= x >> 27;
			x *= 0x94d049bb133111ebULL;
			x ^= x >> 31;
			return x;
		}

		void init(std::size_t n) {
			std::size_t cap = 16;
			while (cap < 2 * n + 1) cap <<= 1;
			keys.assign(cap, 0);
			pos.assign(cap, kNoRow);
			mask = cap - 1;
		}

		void insert(std::uint64_t key, Row p) {
			std::uint64_t slot = mix(key) & mask;
			while (pos[slot] != kNoRow) slot = (slot + 1) & mask;
			keys[slot] = key;
			pos[slot] = p;
		}

		Row lookup(std::uint64_t key) const {
			std::uint64_t slot = mix(key) & mask;
			while (pos[slot] != kNoRow) {
				if (keys[slot] == key) return pos[slot];
				slot = (slot + 1) & mask;
			}
			return kNoRow;
		}
	};

	std::uint64_t pack(const VertexId* v, std::size_t count) const {
		std::uint64_t k = 0;
		for (std::size_t i = 0; i < count; ++i)
			k = (k << width_) | static_cast<std::uint64_t>(v[i]);
		return k;
	}

	const Filtration& fil_;
	unsigned width_ = 0;
	bool packable_ = false;
	std::vector<Table> tables_;
};

struct Reducer {
	const Filtration& fil;
	FacetIndexer indexer;
	std::vector<Row> pivot_owner;  // row -> claiming column, kNoRow if unclaimed
	std::vector<Row> store_slot;   // column -> slot in stored, kNoRow if none
	std::vector<char> is_killer;   // column ever claimed a pivot
	std::vector<std::vector<Row>> stored;
	std::vector<Row> boundary;
	std::vector<Row> merged;
	std::vector<VertexId> face;

	explicit Reducer(const Filtration& f) : fil(f), indexer(f) {
		if (f.size() > static_cast<Index>(std::numeric_limits<Row>::max()))
			throw std::invalid_argument("filtration too large to reduce");
		pivot_owner.assign(static_cast<std::size_t>(f.size()), kNoRow);
		store_slot.assign(static_cast<std::size_t>(f.size()), kNoRow);
		is_killer.assign(static_cast<std::size_t>(f.size()), 0);
	}

	void load_boundary(Row j) {
		const auto& v = fil[j].simplex.vertices;
		boundary.clear();
		face.assign(v.begin() + 1, v.end());
		for (std::size_t drop = 0; drop < v.size(); ++drop) {
			if (drop > 0) face[drop - 1] = v[drop - 1];
			const Row pos = indexer.find(face.data(), face.size());
			if (pos == kNoRow) throw std::invalid_argument("filtration is missing a face");
			boundary.push_back(pos);
		}
		std::sort(boundary.begin(), boundary.end());
	}

	void claim(Row pivot, Row j, std::vector<Row>&& column) {
		pivot_owner[pivot] = j;
		store_slot[j] = static_cast<Row>(stored.size());
		is_killer[j] = 1;
		stored.push_back(std::move(column));
	}

	// stored columns live only as long as their dimension pass needs them
	void release_stored() {
		stored.clear();
		stored.shrink_to_fit();
		std::fill(store_slot.begin(), store_slot.end(), kNoRow);
	}

	// keeps adding (symmetric difference) the earlier column with the same
	// low until the low is unclaimed or the column empties
	void reduce_column(Row j) {
		for (;;) {
			if (boundary.empty()) return;  // column vanished: j creates a class
			const Row p = boundary.back();
			const Row owner = pivot_owner[p];
			if (owner == kNoRow) {
				claim(p, j, std::move(boundary));
				return;
			}
			const auto& other = stored[static_cast<std::size_t>(store_slot[owner])];
			merged.clear();
			std::set_symmetric_difference(boundary.begin(), boundary.end(), other.begin(),
			                              other.end(), std::back_inserter(merged));
			boundary.swap(merged);
		}
	}

	std::vector<ReductionPair> extract_pairs() const {
		std::vector<ReductionPair> pairs;
		for (Index i = 0; i < fil.size(); ++i) {
			if (is_killer[i]) continue;  // killers are not creators
			const Row k = pivot_owner[i];
			pairs.push_back({i, k == kNoRow ? kNoKiller : static_cast<Index>(k)});
		}
		return pairs;
	}
};

}  // namespace

std::vector<ReductionPair> reduce(const Filtration& fil) {
	Reducer red(fil);
	std::vector<std::vector<Row>> by_dim(static_cast<std::size_t>(fil.max_dim() + 1));
	for (Index i = 0; i < fil.size(); ++i)
		by_dim[static_cast<std::size_t>(fil[i].simplex.dimension())].push_back(static_cast<Row>(i));
	for (int d = fil.max_dim(); d >= 1; --d) {
		for (Row j : by_dim[static_cast<std::size_t>(d)]) {
			if (red.pivot_owner[j] != kNoRow) continue;  // cleared: known creator
			red.load_boundary(j);
			red.reduce_column(j);
		}
		// collisions only happen within a dimension, so the pass's reduced
		// columns are dead weight from here on
		red.release_stored();
	}
	return red.extract_pairs();
}

std::vector<ReductionPair> reduce_plain(const Filtration& fil) {
	Reducer red(fil);
	for (Index j = 0; j < fil.size(); ++j) {
		if (fil[j].simplex.dimension() == 0) continue;  // empty column
		red.load_boundary(static_cast<Row>(j));
		red.reduce_column(static_cast<Row>(j));
	}
	return red.extract_pairs();
}

PersistenceDiagram compute_persistence(const Filtration& fil, int homology_max_dim) {
	if (homology_max_dim < 0) throw std::invalid_argument("homology_max_dim must be nonnegative");
	if (fil.max_dim() < homology_max_dim + 1)
		throw std::invalid_argument(
		    "filtration max_dim " + std::to_string(fil.max_dim()) +
		    " cannot resolve homology degree " + std::to_string(homology_max_dim) +
		    "; need max_dim >= " + std::to_string(homology_max_dim + 1));

	const auto pairs = reduce(fil);

	struct Tagged {
		PersistenceFeature feature;
		Index creator;
	};
	std::vector<Tagged> tagged;
	for (const auto& pr : pairs) {
		const auto& entry = fil[pr.creator];
		const int dim = entry.simplex.dimension();
		if (dim > homology_max_dim) continue;
		const double birth = entry.diameter;
		if (pr.killer == kNoKiller) {
			tagged.push_back({{dim, birth, kInfiniteDeath}, pr.creator});
			continue;
		}
		const double death = fil[pr.killer].diameter;
		if (death == birth) continue;  // invisible in every plot
		tagged.push_back({{dim, birth, death}, pr.creator});
	}
	std::sort(tagged.begin(), tagged.end(), [](const Tagged& a, const Tagged& b) {
		const auto& x = a.feature;
		const auto& y = b.feature;
		if (x.dimension != y.dimension) return x.dimension < y.dimension;
		if (x.birth != y.birth) return x.birth < y.birth;
		if (x.death != y.death) return x.death < y.death;
		return a.creator < b.creator;
	});

	PersistenceDiagram diag;
	diag.n_points = fil.point_count();
	diag.max_scale = fil.max_diameter();
	diag.features.reserve(tagged.size());
	for (auto& t : tagged) diag.features.push_back(t.feature);
	return diag;
}

namespace {

std::string death_token(double death) {
	return death == kInfiniteDeath ? "inf" : detail::format_double(death);
}

}  // namespace

void write_diagram_csv(const PersistenceDiagram& diag, std::ostream& out) {
	out << "dimension,birth,death\n";
	for (const auto& f : diag.features)
		out << f.dimension << ',' << detail::format_double(f.birth) << ',' << death_token(f.death)
		    << '\n';
}

void write_diagram_csv(const PersistenceDiagram& diag, const std::string& path) {
	std::ofstream out(path);
	if (!out) throw std::runtime_error("cannot open file for writing: " + path);
	write_diagram_csv(diag, out);
	if (!out) throw std::runtime_error("write failed: " + path);
}

PersistenceDiagram read_diagram_csv(std::istream& in, const std::string& name) {
	auto fail = [&name](std::size_t line, const std::string& what) -> void {
		throw std::runtime_error(name + ": line " + std::to_string(line) + ": " + what);
	};

	std::string line;
	if (!std::getline(in, line)) throw std::runtime_error(name + ": empty diagram file");
	if (!line.empty() && line.back() == '\r') line.pop_back();
	if (line != "dimension,birth,death")
		fail(1, "expected header 'dimension,birth,death', got '" + line + "'");

	PersistenceDiagram diag;
	std::size_t line_no = 1;
	while (std::getline(in, line)) {
		++line_no;
		if (!line.empty() && line.back() == '\r') line.pop_back();
		if (line.empty()) continue;
		const std::size_t c1 = line.find(',');
		const std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
		if (c2 == std::string::npos) fail(line_no, "expected three comma-separated fields");
		long dim = 0;
		double birth = 0.0;
		if (!detail::parse_long(std::string_view(line).substr(0, c1), dim) || dim < 0)
			fail(line_no, "invalid dimension field");
		if (!detail::parse_double(std::string_view(line).substr(c1 + 1, c2 - c1 - 1), birth) ||
		    !std::isfinite(birth) || birth < 0.0)
			fail(line_no, "invalid birth field");
		const std::string_view death_field = std::string_view(line).substr(c2 + 1);
		double death = 0.0;
		if (death_field == "inf") {
			death = kInfiniteDeath;
		} else if (!detail::parse_double(death_field, death) || !std::isfinite(death)) {
			fail(line_no, "invalid death field (number or 'inf')");
		}
		if (death <= birth) fail(line_no, "death must exceed birth");
		diag.features.push_back({static_cast<int>(dim), birth, death});
	}

	double max_finite = 0.0;
	for (const auto& f : diag.features) {
		max_finite = std::max(max_finite, f.birth);
		if (!f.essential()) max_finite = std::max(max_finite, f.death);
	}
	diag.n_points = 0;  // not recorded in the CSV
	diag.max_scale = max_finite;
	return diag;
}

PersistenceDiagram read_diagram_csv(const std::string& path) {
	std::ifstream in(path);
	if (!in) throw std::runtime_error("cannot open file: " + path);
	return read_diagram_csv(in, path);
}

void write_diagram_json(const PersistenceDiagram& diag, std::ostream& out) {
	nlohmann::ordered_json j;
	j["n_points"] = diag.n_points;
	j["max_scale"] = diag.max_scale;
	auto arr = nlohmann::ordered_json::array();
	for (const auto& f : diag.features) {
		nlohmann::ordered_json o;
		o["dimension"] = f.dimension;
		o["birth"] = f.birth;
		if (f.essential())
			o["death"] = "inf";
		else
			o["death"] = f.death;
		arr.push_back(std::move(o));
	}
	j["features"] = std::move(arr);
	out << j.dump(2) << '\n';
}

void write_diagram_json(const PersistenceDiagram& diag, const std::string& path) {
	std::ofstream out(path);
	if (!out) throw std::runtime_error("cannot open file for writing: " + path);
	write_diagram_json(diag, out);
	if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ripsplot
