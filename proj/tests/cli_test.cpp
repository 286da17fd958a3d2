#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

// exit code of the tool run through the shell; RIPSPLOT_CLI_PATH comes from
// the build system
int run_cli(const std::string& args) {
	const std::string cmd = std::string(RIPSPLOT_CLI_PATH) + " " + args;
	const int status = std::system(cmd.c_str());
	REQUIRE(status != -1);
	REQUIRE(WIFEXITED(status));
	return WEXITSTATUS(status);
}

fs::path work_dir() {
	const fs::path dir = fs::temp_directory_path() / "ripsplot_cli_tests";
	fs::create_directories(dir);
	return dir;
}

std::string slurp(const fs::path& p) {
	std::ifstream in(p);
	REQUIRE(in.good());
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::size_t line_count(const std::string& text) {
	std::size_t n = 0;
	for (char c : text)
		if (c == '\n') ++n;
	return n;
}

}  // namespace

TEST_CASE("sample writes a deterministic cloud CSV") {
	const fs::path dir = work_dir();
	const fs::path a = dir / "cloud_a.csv";
	const fs::path b = dir / "cloud_b.csv";
	const fs::path c = dir / "cloud_c.csv";

	CHECK(run_cli("sample --shape circle --n 40 --noise-sd 0.05 --seed 42 -o " + a.string() +
	              " 2>/dev/null") == 0);
	CHECK(run_cli("sample --shape circle --n 40 --noise-sd 0.05 --seed 42 -o " + b.string() +
	              " 2>/dev/null") == 0);
	CHECK(run_cli("sample --shape circle --n 40 --noise-sd 0.05 --seed 43 -o " + c.string() +
	              " 2>/dev/null") == 0);

	const std::string bytes_a = slurp(a);
	CHECK(line_count(bytes_a) == 40);
	CHECK(bytes_a == slurp(b));
	CHECK(bytes_a != slurp(c));
}

TEST_CASE("sample rejects bad arguments with usage errors") {
	const fs::path out = work_dir() / "unused.csv";
	CHECK(run_cli("sample --shape hexagon -o " + out.string() + " 2>/dev/null") == 1);
	CHECK(run_cli("sample --shape circle --n 0 -o " + out.string() + " 2>/dev/null") == 1);
	CHECK(run_cli("sample --shape circle --bogus-flag 1 -o " + out.string() + " 2>/dev/null") == 1);
	CHECK(run_cli("sample --shape sphere --noise-sd 0.05 -o " + out.string() + " 2>/dev/null") ==
	      1);
	CHECK(run_cli("sample --shape circle 2>/dev/null") == 1);  // missing -o
	CHECK(run_cli("2>/dev/null") == 1);                        // missing subcommand
	CHECK(run_cli("--help >/dev/null 2>&1") == 0);
}

TEST_CASE("compute writes diagram CSV and optional JSON") {
	const fs::path dir = work_dir();
	const fs::path cloud = dir / "compute_cloud.csv";
	const fs::path diag = dir / "compute_diag.csv";
	const fs::path json = dir / "compute_diag.json";

	REQUIRE(run_cli("sample --shape circle --n 30 --noise-sd 0.1 --seed 9 -o " + cloud.string() +
	                " 2>/dev/null") == 0);
	CHECK(run_cli("compute -i " + cloud.string() + " -o " + diag.string() + " --json " +
	              json.string() + " 2>/dev/null") == 0);

	const std::string csv = slurp(diag);
	CHECK(csv.starts_with("dimension,birth,death\n"));
	CHECK(csv.find(",inf\n") != std::string::npos);

	const auto parsed = nlohmann::json::parse(slurp(json));
	CHECK(parsed["n_points"] == 30);
	CHECK(parsed["features"].is_array());
	CHECK(!parsed["features"].empty());
}

TEST_CASE("compute maps missing and malformed inputs to exit 2") {
	const fs::path dir = work_dir();
	const fs::path out = dir / "unused_diag.csv";
	const fs::path errfile = dir / "compute_err.txt";

	CHECK(run_cli("compute -i " + (dir / "missing.csv").string() + " -o " + out.string() + " 2> " +
	              errfile.string()) == 2);
	CHECK(slurp(errfile).find("missing.csv") != std::string::npos);

	const fs::path bad = dir / "bad_cloud.csv";
	std::ofstream(bad) << "1,2\n3,oops\n";
	CHECK(run_cli("compute -i " + bad.string() + " -o " + out.string() + " 2> " +
	              errfile.string()) == 2);
	const std::string message = slurp(errfile);
	CHECK(message.find("line 2") != std::string::npos);

	CHECK(run_cli("compute -i " + bad.string() + " -o " + out.string() +
	              " --threshold 0 2>/dev/null") == 1);
	CHECK(run_cli("compute -i " + bad.string() + " -o " + out.string() +
	              " --max-hom-dim 9 2>/dev/null") == 1);
}

TEST_CASE("compute honors the header flag") {
	const fs::path dir = work_dir();
	const fs::path cloud = dir / "header_cloud.csv";
	const fs::path out = dir / "header_diag.csv";
	std::ofstream(cloud) << "x,y\n0,0\n1,0\n1,1\n0,1\n";

	CHECK(run_cli("compute -i " + cloud.string() + " -o " + out.string() + " 2>/dev/null") == 2);
	CHECK(run_cli("compute --skip-header -i " + cloud.string() + " -o " + out.string() +
	              " 2>/dev/null") == 0);
	CHECK(line_count(slurp(out)) == 6);  // header + 4 H0 + 1 H1
}

TEST_CASE("plot renders each style from a diagram CSV") {
	const fs::path dir = work_dir();
	const fs::path cloud = dir / "plot_cloud.csv";
	const fs::path diag = dir / "plot_diag.csv";
	REQUIRE(run_cli("sample --shape circle --n 25 --noise-sd 0.1 --seed 4 -o " + cloud.string() +
	                " 2>/dev/null") == 0);
	REQUIRE(run_cli("compute -i " + cloud.string() + " -o " + diag.string() + " 2>/dev/null") ==
	        0);

	for (const std::string style : {"barcode", "diagram", "flat"}) {
		const fs::path svg = dir / ("plot_" + style + ".svg");
		CHECK(run_cli("plot --style " + style + " -i " + diag.string() + " -o " + svg.string() +
		              " --include-essential 2>/dev/null") == 0);
		const auto els = testsupport::parse_xml(slurp(svg));
		CHECK(els.front().tag == "svg");
		const auto refs = testsupport::elements_with_class(els, "reference-line");
		CHECK(refs.size() == (style == "diagram" ? 1u : 0u));
	}

	CHECK(run_cli("plot --style sideways -i " + diag.string() + " -o " +
	              (dir / "x.svg").string() + " 2>/dev/null") == 1);
	CHECK(run_cli("plot --style flat -i " + (dir / "absent.csv").string() + " -o " +
	              (dir / "x.svg").string() + " 2>/dev/null") == 2);

	const fs::path garbled = dir / "garbled_diag.csv";
	std::ofstream(garbled) << "dimension,birth,death\n0,0.5,0.25\n";
	const fs::path errfile = dir / "plot_err.txt";
	CHECK(run_cli("plot --style flat -i " + garbled.string() + " -o " + (dir / "x.svg").string() +
	              " 2> " + errfile.string()) == 2);
	CHECK(slurp(errfile).find("garbled_diag.csv") != std::string::npos);
}

TEST_CASE("pipeline output is byte-identical to the composed stages") {
	const fs::path dir = work_dir();
	const fs::path p_svg = dir / "pipe.svg";
	const fs::path p_cloud = dir / "pipe_cloud.csv";
	const fs::path p_diag = dir / "pipe_diag.csv";

	const std::string params = "--shape circle --n 60 --noise-sd 0.05 --seed 11";
	CHECK(run_cli("pipeline " + params + " --style flat --cloud-out " + p_cloud.string() +
	              " --diagram-out " + p_diag.string() + " -o " + p_svg.string() +
	              " 2>/dev/null") == 0);

	const fs::path s_cloud = dir / "stage_cloud.csv";
	const fs::path s_diag = dir / "stage_diag.csv";
	const fs::path s_svg = dir / "stage.svg";
	REQUIRE(run_cli("sample " + params + " -o " + s_cloud.string() + " 2>/dev/null") == 0);
	REQUIRE(run_cli("compute -i " + s_cloud.string() + " -o " + s_diag.string() +
	                " 2>/dev/null") == 0);
	REQUIRE(run_cli("plot --style flat -i " + s_diag.string() + " -o " + s_svg.string() +
	                " 2>/dev/null") == 0);

	CHECK(slurp(p_cloud) == slurp(s_cloud));
	CHECK(slurp(p_diag) == slurp(s_diag));
	CHECK(slurp(p_svg) == slurp(s_svg));

	// a second pipeline run reproduces the same bytes
	const fs::path again = dir / "pipe_again.svg";
	CHECK(run_cli("pipeline " + params + " --style flat -o " + again.string() + " 2>/dev/null") ==
	      0);
	CHECK(slurp(again) == slurp(p_svg));
}

TEST_CASE("pipeline on a sphere defaults to degree-2 homology") {
	const fs::path dir = work_dir();
	const fs::path diag = dir / "sphere_diag.csv";
	CHECK(run_cli("pipeline --shape sphere --n 30 --seed 3 --style flat --diagram-out " +
	              diag.string() + " -o " + (dir / "sphere.svg").string() + " 2>/dev/null") == 0);

	bool has_h1 = false;
	std::istringstream in(slurp(diag));
	std::string line;
	std::getline(in, line);  // header
	while (std::getline(in, line))
		if (line.starts_with("1,")) has_h1 = true;
	CHECK(has_h1);
}

TEST_CASE("successful runs keep stdout clean") {
	const fs::path dir = work_dir();
	const fs::path captured = dir / "stdout.txt";
	CHECK(run_cli("sample --shape circle --n 5 --seed 1 -o " + (dir / "quiet.csv").string() +
	              " > " + captured.string() + " 2>/dev/null") == 0);
	CHECK(slurp(captured).empty());
}

TEST_CASE("reproduce-figures emits the six panels") {
	const fs::path dir = work_dir() / "figures";
	fs::remove_all(dir);
	CHECK(run_cli("reproduce-figures -o " + dir.string() + " 2>/dev/null") == 0);

	for (const std::string dataset : {"circle", "sphere"})
		for (const std::string style : {"barcode", "diagram", "flat"}) {
			const fs::path panel = dir / (dataset + "_" + style + ".svg");
			REQUIRE_MESSAGE(fs::exists(panel), panel.string());
			const auto els = testsupport::parse_xml(slurp(panel));
			CHECK(els.front().tag == "svg");
			CHECK(!testsupport::marker_counts(els).empty());
		}
}
