#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ripsplot {

// Finite set of points in Euclidean space. Immutable after construction;
// every point has exactly ambient_dim finite coordinates.
class PointCloud {
public:
	PointCloud() = default;
	PointCloud(std::vector<std::vector<double>> points, int ambient_dim);

	std::size_t size() const { return points_.size(); }
	bool empty() const { return points_.empty(); }
	int ambient_dim() const { return ambient_dim_; }
	const std::vector<double>& operator[](std::size_t i) const { return points_[i]; }
	const std::vector<std::vector<double>>& points() const { return points_; }

	bool operator==(const PointCloud&) const = default;

private:
	std::vector<std::vector<double>> points_;
	int ambient_dim_ = 0;
};

// Symmetric n x n matrix of pairwise distances: zero diagonal, all entries
// finite and nonnegative.
class DistanceMatrix {
public:
	DistanceMatrix() = default;
	explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

	std::size_t size() const { return n_; }
	double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

	// sets both (i, j) and (j, i); rejects negative or non-finite values
	void set(std::size_t i, std::size_t j, double value);

	double max_entry() const;

private:
	std::size_t n_ = 0;
	std::vector<double> data_;
};

// n points (r cos t, r sin t) with t uniform on [0, 2pi) and
// r = radius + Gaussian(0, noise_sd). Pure function of its arguments.
PointCloud sample_circle(std::size_t n, double radius, double noise_sd, std::uint64_t seed);

// n points uniform on the sphere of the given radius (normalized 3D
// Gaussian draws). Pure function of its arguments.
PointCloud sample_sphere(std::size_t n, double radius, std::uint64_t seed);

DistanceMatrix distance_matrix(const PointCloud& cloud);

// CSV: one point per line, comma-separated decimal coordinates, no header.
// With skip_header set, a first row that fails numeric parsing is dropped.
// Parse failures throw std::runtime_error naming the file and line.
PointCloud read_cloud_csv(const std::string& path, bool skip_header = false);
void write_cloud_csv(const PointCloud& cloud, const std::string& path);

}  // namespace ripsplot
