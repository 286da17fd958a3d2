#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "ripsplot/persistence.hpp"
#include "ripsplot/point_cloud.hpp"
#include "ripsplot/rips.hpp"
#include "test_support.hpp"

using namespace ripsplot;

namespace {

PointCloud unit_square() {
	return PointCloud({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}, 2);
}

Filtration square_filtration() {
	return build_rips_filtration(distance_matrix(unit_square()), 2);
}

std::vector<PersistenceFeature> features_of_dim(const PersistenceDiagram& diag, int dim) {
	std::vector<PersistenceFeature> out;
	for (const auto& f : diag.features)
		if (f.dimension == dim) out.push_back(f);
	return out;
}

}  // namespace

TEST_CASE("low is the largest row of a column") {
	CHECK(!low(BoundaryColumn{}).has_value());
	CHECK(low(BoundaryColumn{{2, 5}}) == 5);
	CHECK(low(BoundaryColumn{{0}}) == 0);
}

TEST_CASE("boundary columns hold the codimension-1 face positions") {
	const Filtration fil = square_filtration();
	for (Index i = 0; i < fil.size(); ++i) {
		const BoundaryColumn col = boundary_column(fil, i);
		const int dim = fil[i].simplex.dimension();
		CHECK(col.rows.size() == static_cast<std::size_t>(dim == 0 ? 0 : dim + 1));
		CHECK(std::is_sorted(col.rows.begin(), col.rows.end()));
		for (const Index r : col.rows) {
			CHECK(r < i);
			CHECK(fil[r].simplex.dimension() == dim - 1);
		}
	}
}

TEST_CASE("reduce pairs tiny filtrations by hand") {
	const Filtration vertex({{Simplex{{0}}, 0.0}});
	CHECK(reduce(vertex) == std::vector<ReductionPair>{{0, kNoKiller}});

	// two vertices joined by an edge: the younger vertex dies, the elder lives
	const Filtration edge({{Simplex{{0}}, 0.0}, {Simplex{{1}}, 0.0}, {Simplex{{0, 1}}, 1.0}});
	CHECK(reduce(edge) == std::vector<ReductionPair>{{0, kNoKiller}, {1, 2}});

	CHECK(reduce(Filtration{}).empty());
}

TEST_CASE("reduction output is a partial matching of filtration indices") {
	const PointCloud c = sample_circle(10, 1.0, 0.1, 17);
	const Filtration fil = build_rips_filtration(distance_matrix(c), 2);
	const auto pairs = reduce(fil);

	std::set<Index> creators, killers;
	for (const auto& p : pairs) {
		CHECK(creators.insert(p.creator).second);
		if (p.killer != kNoKiller) {
			CHECK(killers.insert(p.killer).second);
			CHECK(p.killer > p.creator);
			CHECK(fil[p.killer].simplex.dimension() == fil[p.creator].simplex.dimension() + 1);
			CHECK(fil[p.killer].diameter >= fil[p.creator].diameter);
		}
	}
	// creators and killers partition the filtration
	for (Index i = 0; i < fil.size(); ++i)
		CHECK((creators.count(i) + killers.count(i)) == 1);
}

TEST_CASE("twist reduction equals plain reduction pair for pair") {
	for (std::uint64_t seed = 1; seed <= 6; ++seed) {
		const PointCloud c =
		    seed % 2 ? sample_circle(9, 1.0, 0.2, seed) : sample_sphere(8, 1.0, seed);
		const Filtration fil = build_rips_filtration(distance_matrix(c), 3);
		CHECK(reduce(fil) == reduce_plain(fil));
	}
}

TEST_CASE("unit square diagram is exact") {
	const PersistenceDiagram diag = compute_persistence(square_filtration(), 1);
	CHECK(diag.n_points == 4);
	CHECK(diag.max_scale == doctest::Approx(std::sqrt(2.0)));

	const auto h0 = features_of_dim(diag, 0);
	REQUIRE(h0.size() == 4);
	int finite = 0, essential = 0;
	for (const auto& f : h0) {
		CHECK(f.birth == 0.0);
		if (f.essential()) {
			++essential;
		} else {
			++finite;
			CHECK(f.death == doctest::Approx(1.0).epsilon(1e-12));
		}
	}
	CHECK(finite == 3);
	CHECK(essential == 1);

	const auto h1 = features_of_dim(diag, 1);
	REQUIRE(h1.size() == 1);
	CHECK(h1[0].birth == doctest::Approx(1.0).epsilon(1e-12));
	CHECK(h1[0].death == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
	CHECK(!h1[0].essential());
	CHECK(h1[0].persistence() == doctest::Approx(std::sqrt(2.0) - 1.0));
}

TEST_CASE("equilateral triangle kills its cycle instantly") {
	const PointCloud tri({{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}}, 2);
	const PersistenceDiagram diag = compute_persistence(build_rips_filtration(distance_matrix(tri), 2), 1);

	const auto h0 = features_of_dim(diag, 0);
	REQUIRE(h0.size() == 3);
	int essential = 0;
	for (const auto& f : h0)
		if (f.essential())
			++essential;
		else
			CHECK(f.death == doctest::Approx(1.0));
	CHECK(essential == 1);

	// the cycle would be born and die at the same diameter; it is dropped
	CHECK(features_of_dim(diag, 1).empty());
}

TEST_CASE("regular 20-gon has one cycle born at the side length") {
	std::vector<std::vector<double>> pts;
	for (int i = 0; i < 20; ++i) {
		const double a = 2.0 * std::acos(-1.0) * i / 20.0;
		pts.push_back({std::cos(a), std::sin(a)});
	}
	const Filtration fil = build_rips_filtration(distance_matrix(PointCloud(pts, 2)), 2);
	const PersistenceDiagram diag = compute_persistence(fil, 1);

	const auto h1 = features_of_dim(diag, 1);
	REQUIRE(h1.size() == 1);
	CHECK(h1[0].birth == doctest::Approx(2.0 * std::sin(std::acos(-1.0) / 20.0)).epsilon(1e-9));
	CHECK(h1[0].death > h1[0].birth);
}

TEST_CASE("H0 deaths equal the MST edge lengths") {
	for (std::uint64_t seed = 20; seed < 26; ++seed) {
		const PointCloud c = sample_circle(16, 1.0, 0.3, seed);
		const DistanceMatrix dm = distance_matrix(c);
		const PersistenceDiagram diag =
		    compute_persistence(build_rips_filtration(dm, 1), 0);

		std::vector<double> deaths;
		int essential = 0;
		for (const auto& f : diag.features) {
			REQUIRE(f.dimension == 0);
			CHECK(f.birth == 0.0);
			if (f.essential())
				++essential;
			else
				deaths.push_back(f.death);
		}
		CHECK(essential == 1);

		std::sort(deaths.begin(), deaths.end());
		const std::vector<double> mst = testsupport::mst_edge_lengths(dm);
		REQUIRE(deaths.size() == mst.size());
		for (std::size_t i = 0; i < mst.size(); ++i)
			CHECK(deaths[i] == doctest::Approx(mst[i]).epsilon(1e-12));
	}
}

TEST_CASE("every nonempty cloud has exactly one essential component") {
	for (std::uint64_t seed = 40; seed < 44; ++seed) {
		const PointCloud c = sample_sphere(9, 1.0, seed);
		const PersistenceDiagram diag =
		    compute_persistence(build_rips_filtration(distance_matrix(c), 2), 1);
		int essential = 0;
		for (const auto& f : diag.features)
			if (f.essential()) {
				CHECK(f.dimension == 0);
				++essential;
			}
		CHECK(essential == 1);
	}
}

TEST_CASE("diagram is invariant under valid reorderings of tied simplices") {
	const Filtration canonical = square_filtration();
	const auto reference = testsupport::feature_multiset(compute_persistence(canonical, 1).features);
	for (std::uint64_t seed = 0; seed < 8; ++seed) {
		const Filtration shuffled = testsupport::shuffle_ties(canonical, seed);
		const auto multiset = testsupport::feature_multiset(compute_persistence(shuffled, 1).features);
		CHECK(multiset == reference);
	}

	// same property on a cloud with many coincident diameters
	std::vector<std::vector<double>> grid;
	for (int x = 0; x < 3; ++x)
		for (int y = 0; y < 2; ++y) grid.push_back({double(x), double(y)});
	const Filtration fil = build_rips_filtration(distance_matrix(PointCloud(grid, 2)), 2);
	const auto base = testsupport::feature_multiset(compute_persistence(fil, 1).features);
	for (std::uint64_t seed = 100; seed < 104; ++seed) {
		const Filtration shuffled = testsupport::shuffle_ties(fil, seed);
		CHECK(testsupport::feature_multiset(compute_persistence(shuffled, 1).features) == base);
	}
}

TEST_CASE("births and deaths are the creator and killer diameters") {
	const PointCloud c = sample_circle(11, 1.0, 0.15, 33);
	const Filtration fil = build_rips_filtration(distance_matrix(c), 2);
	const auto pairs = reduce(fil);

	std::vector<PersistenceFeature> expected;
	for (const auto& p : pairs) {
		const int dim = fil[p.creator].simplex.dimension();
		if (dim > 1) continue;
		const double birth = fil[p.creator].diameter;
		const double death = p.killer == kNoKiller ? kInfiniteDeath : fil[p.killer].diameter;
		if (death == birth) continue;
		expected.push_back({dim, birth, death});
	}
	const PersistenceDiagram diag = compute_persistence(fil, 1);
	CHECK(testsupport::feature_multiset(diag.features) == testsupport::feature_multiset(expected));
}

TEST_CASE("compute_persistence refuses a filtration that is too shallow") {
	const Filtration fil = square_filtration();  // max_dim 2
	CHECK_THROWS_AS(compute_persistence(fil, 2), std::invalid_argument);
	CHECK_THROWS_AS(compute_persistence(fil, -1), std::invalid_argument);
	CHECK_NOTHROW(compute_persistence(fil, 1));

	CHECK_THROWS_WITH_AS(compute_persistence(Filtration{}, 0),
	                     doctest::Contains("max_dim"), std::invalid_argument);
}

TEST_CASE("diagram CSV round trips including the inf token") {
	const PersistenceDiagram diag = compute_persistence(square_filtration(), 1);
	std::ostringstream out;
	write_diagram_csv(diag, out);

	const std::string text = out.str();
	CHECK(text.starts_with("dimension,birth,death\n"));
	CHECK(text.find(",inf\n") != std::string::npos);

	std::istringstream in(text);
	const PersistenceDiagram back = read_diagram_csv(in, "buffer");
	CHECK(testsupport::feature_multiset(back.features) == testsupport::feature_multiset(diag.features));
	CHECK(back.max_scale == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("diagram CSV reader validates hard") {
	auto read = [](const std::string& text) {
		std::istringstream in(text);
		return read_diagram_csv(in, "buffer");
	};

	CHECK_THROWS_WITH_AS(read(""), doctest::Contains("empty"), std::runtime_error);
	CHECK_THROWS_WITH_AS(read("birth,death\n"), doctest::Contains("header"), std::runtime_error);
	CHECK_THROWS_WITH_AS(read("dimension,birth,death\n0,0,1\nbogus\n"),
	                     doctest::Contains("line 3"), std::runtime_error);
	CHECK_THROWS_WITH_AS(read("dimension,birth,death\n0,0.5,0.25\n"),
	                     doctest::Contains("death must exceed birth"), std::runtime_error);
	CHECK_THROWS_AS(read("dimension,birth,death\n0,1,1\n"), std::runtime_error);
	CHECK_THROWS_AS(read("dimension,birth,death\n-1,0,1\n"), std::runtime_error);
	CHECK_THROWS_AS(read("dimension,birth,death\n0,-0.5,1\n"), std::runtime_error);
	CHECK_THROWS_AS(read("dimension,birth,death\n0,inf,2\n"), std::runtime_error);
	CHECK_THROWS_AS(read("dimension,birth,death\n0,0,nonsense\n"), std::runtime_error);

	const PersistenceDiagram ok = read("dimension,birth,death\n1,0.25,inf\n");
	REQUIRE(ok.features.size() == 1);
	CHECK(ok.features[0].essential());
	CHECK(ok.features[0].death == kInfiniteDeath);
	CHECK(ok.max_scale == 0.25);
}

TEST_CASE("diagram JSON carries metadata and the inf sentinel as a string") {
	const PersistenceDiagram diag = compute_persistence(square_filtration(), 1);
	std::ostringstream out;
	write_diagram_json(diag, out);

	const auto j = nlohmann::json::parse(out.str());
	CHECK(j["n_points"] == 4);
	CHECK(j["max_scale"].get<double>() == doctest::Approx(std::sqrt(2.0)));
	REQUIRE(j["features"].is_array());
	REQUIRE(j["features"].size() == diag.features.size());

	std::size_t inf_count = 0;
	for (const auto& f : j["features"]) {
		REQUIRE(f.contains("dimension"));
		REQUIRE(f.contains("birth"));
		REQUIRE(f.contains("death"));
		if (f["death"].is_string()) {
			CHECK(f["death"] == "inf");
			++inf_count;
		} else {
			CHECK(f["death"].get<double>() > f["birth"].get<double>());
		}
	}
	CHECK(inf_count == 1);
}
