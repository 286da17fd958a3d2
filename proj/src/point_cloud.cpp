#include "ripsplot/point_cloud.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "ripsplot/detail/numeric.hpp"
#include "ripsplot/random.hpp"

namespace ripsplot {

using detail::format_double;
using detail::parse_double;

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& what) {
	throw std::runtime_error(path + ": line " + std::to_string(line) + ": " + what);
}

}  // namespace

PointCloud::PointCloud(std::vector<std::vector<double>> points, int ambient_dim)
    : points_(std::move(points)), ambient_dim_(ambient_dim) {
	if (ambient_dim_ < 0) throw std::invalid_argument("ambient_dim must be nonnegative");
	for (const auto& p : points_) {
		if (static_cast<int>(p.size()) != ambient_dim_)
			throw std::invalid_argument("point with wrong number of coordinates");
		for (double c : p)
			if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
	}
}

void DistanceMatrix::set(std::size_t i, std::size_t j, double value) {
	if (i >= n_ || j >= n_) throw std::out_of_range("distance index out of range");
	if (!std::isfinite(value) || value < 0.0)
		throw std::invalid_argument("distance must be finite and nonnegative");
	if (i == j && value != 0.0) throw std::invalid_argument("diagonal distance must be zero");
	data_[i * n_ + j] = value;
	data_[j * n_ + i] = value;
}

double DistanceMatrix::max_entry() const {
	double m = 0.0;
	for (double d : data_) m = std::max(m, d);
	return m;
}

PointCloud sample_circle(std::size_t n, double radius, double noise_sd, std::uint64_t seed) {
	if (radius <= 0.0) throw std::invalid_argument("radius must be positive");
	if (noise_sd < 0.0) throw std::invalid_argument("noise_sd must be nonnegative");
	Xoshiro256StarStar rng(seed);
	std::vector<std::vector<double>> pts;
	pts.reserve(n);
	for (std::size_t i = 0; i < n; ++i) {
		const double theta = 2.0 * std::numbers::pi * rng.uniform();
		const double r = radius + noise_sd * rng.normal();
		pts.push_back({r * std::cos(theta), r * std::sin(theta)});
	}
	return PointCloud(std::move(pts), 2);
}

PointCloud sample_sphere(std::size_t n, double radius, std::uint64_t seed) {
	if (radius <= 0.0) throw std::invalid_argument("radius must be positive");
	Xoshiro256StarStar rng(seed);
	std::vector<std::vector<double>> pts;
	pts.reserve(n);
	for (std::size_t i = 0; i < n; ++i) {
		double x, y, z, norm;
		do {
			x = rng.normal();
			y = rng.normal();
			z = rng.normal();
			norm = std::sqrt(x * x + y * y + z * z);
		} while (norm < 1e-12);
		pts.push_back({radius * x / norm, radius * y / norm, radius * z / norm});
	}
	return PointCloud(std::move(pts), 3);
}

DistanceMatrix distance_matrix(const PointCloud& cloud) {
	const std::size_t n = cloud.size();
	DistanceMatrix dm(n);
	for (std::size_t i = 0; i < n; ++i) {
		for (std::size_t j = i + 1; j < n; ++j) {
			double sum = 0.0;
			for (int k = 0; k < cloud.ambient_dim(); ++k) {
				const double diff = cloud[i][k] - cloud[j][k];
				sum += diff * diff;
			}
			dm.set(i, j, std::sqrt(sum));
		}
	}
	return dm;
}

PointCloud read_cloud_csv(const std::string& path, bool skip_header) {
	std::ifstream in(path);
	if (!in) throw std::runtime_error("cannot open file: " + path);

	std::vector<std::vector<double>> pts;
	int dim = -1;
	std::string line;
	std::size_t line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		std::vector<double> coords;
		bool numeric = true;
		std::size_t pos = 0;
		while (true) {
			const std::size_t comma = line.find(',', pos);
			const std::string_view token =
			    std::string_view(line).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
			double value = 0.0;
			if (!parse_double(token, value) || !std::isfinite(value)) {
				numeric = false;
				break;
			}
			coords.push_back(value);
			if (comma == std::string::npos) break;
			pos = comma + 1;
		}
		if (!numeric) {
			if (skip_header && line_no == 1) continue;
			parse_fail(path, line_no, "invalid numeric field in '" + line + "'");
		}
		if (dim == -1) {
			dim = static_cast<int>(coords.size());
		} else if (static_cast<int>(coords.size()) != dim) {
			parse_fail(path, line_no,
			           "expected " + std::to_string(dim) + " fields, got " + std::to_string(coords.size()));
		}
		pts.push_back(std::move(coords));
	}
	if (pts.empty()) throw std::runtime_error(path + ": empty file, no points parsed");
	return PointCloud(std::move(pts), dim);
}

void write_cloud_csv(const PointCloud& cloud, const std::string& path) {
	std::ofstream out(path);
	if (!out) throw std::runtime_error("cannot open file for writing: " + path);
	for (const auto& p : cloud.points()) {
		for (std::size_t k = 0; k < p.size(); ++k) {
			if (k) out << ',';
			out << format_double(p[k]);
		}
		out << '\n';
	}
	if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ripsplot
