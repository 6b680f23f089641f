#include "grasynda/random.hpp"

#include <cmath>
#include <numbers>

namespace grasynda {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
	x += 0x9e3779b97f4a7c15ULL;
	x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
	x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
	return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
	std::uint64_t h = 0xcbf29ce484222325ULL;
	for (unsigned char c : s) {
		h ^= c;
		h *= 0x100000001b3ULL;
	}
	return h;
}

} // namespace

std::uint64_t stream_key(std::uint64_t seed, std::string_view id, std::uint64_t replica) {
	std::uint64_t k = splitmix64(seed);
	k = splitmix64(k ^ fnv1a(id));
	return splitmix64(k ^ splitmix64(replica + 0x632be59bd9b4e019ULL));
}

Rng::Rng(std::uint64_t key) : engine_(splitmix64(key)) {
}

double Rng::uniform() {
	return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::index(std::size_t n) {
	// Rejection on the top of the range removes modulo bias.
	const std::uint64_t bound = static_cast<std::uint64_t>(n);
	const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
	std::uint64_t x = engine_();
	while (x >= limit) {
		x = engine_();
	}
	return static_cast<std::size_t>(x % bound);
}

double Rng::normal() {
	if (spare_normal_) {
		double z = *spare_normal_;
		spare_normal_.reset();
		return z;
	}
	double u1 = uniform();
	while (u1 <= 0.0) {
		u1 = uniform();
	}
	const double u2 = uniform();
	const double r = std::sqrt(-2.0 * std::log(u1));
	const double theta = 2.0 * std::numbers::pi * u2;
	spare_normal_ = r * std::sin(theta);
	return r * std::cos(theta);
}

double Rng::gamma(double shape) {
	// Marsaglia-Tsang; shapes below 1 use the u^(1/shape) boost.
	if (shape < 1.0) {
		double u = uniform();
		while (u <= 0.0) {
			u = uniform();
		}
		return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
	}
	const double d = shape - 1.0 / 3.0;
	const double c = 1.0 / std::sqrt(9.0 * d);
	for (;;) {
		double x = normal();
		double v = 1.0 + c * x;
		if (v <= 0.0) {
			continue;
		}
		v = v * v * v;
		const double u = uniform();
		if (u < 1.0 - 0.0331 * x * x * x * x) {
			return d * v;
		}
		if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
			return d * v;
		}
	}
}

} // namespace grasynda
