#pragma once

#include <cmath>
#include <cstdint>

namespace ripsplot {

// Seed expander (splitmix64). Used only to initialize Xoshiro256StarStar
// from a single 64-bit seed.
class SplitMix64 {
public:
	explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

	std::uint64_t next() {
		std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
		z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
		z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
		return z ^ (z >> 31);
	}

private:
	std::uint64_t state_;
};

// xoshiro256** 1.0 (Blackman/Vigna, public domain reference constants).
// All distributions below are derived from the raw bit stream with explicit
// arithmetic, never through std::<random> distribution objects, so a given
// seed reproduces the same sequence everywhere the same libm is used.
class Xoshiro256StarStar {
public:
	explicit Xoshiro256StarStar(std::uint64_t seed) {
		SplitMix64 sm(seed);
		for (auto& word : state_) word = sm.next();
	}

	std::uint64_t next() {
		const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
		const std::uint64_t t = state_[1] << 17;
		state_[2] ^= state_[0];
		state_[3] ^= state_[1];
		state_[1] ^= state_[2];
		state_[0] ^= state_[3];
		state_[2] ^= t;
		state_[3] = rotl(state_[3], 45);
		return result;
	}

	// uniform on [0, 1), 53-bit resolution
	double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

	// uniform on (0, 1]; safe as a log() argument
	double uniform_open() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

	// standard normal, Box-Muller; consumes exactly two words per draw
	double normal() {
		const double u = uniform_open();
		const double v = uniform();
		return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * kPi * v);
	}

private:
	static constexpr double kPi = 3.14159265358979323846;

	static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

	std::uint64_t state_[4];
};

}  // namespace ripsplot
