#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace grasynda {

// Derives an independent stream key from a run seed, a series id and a
// replica index. Work split across threads draws from per-item streams, so
// results never depend on scheduling.
std::uint64_t stream_key(std::uint64_t seed, std::string_view id, std::uint64_t replica);

// Seeded random stream. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; the variate transforms below are implemented here
// rather than taken from <random> because the standard distributions are
// implementation-defined and would break bit-exact reruns across toolchains.
class Rng {
public:
	explicit Rng(std::uint64_t key);

	std::uint64_t next() {
		return engine_();
	}
	// Uniform on [0, 1) with 53 random bits.
	double uniform();
	// Uniform integer in [0, n). n must be > 0.
	std::size_t index(std::size_t n);
	double normal();
	double normal(double mean, double sd) {
		return mean + sd * normal();
	}
	// Gamma(shape, 1).
	double gamma(double shape);

private:
	std::mt19937_64 engine_;
	std::optional<double> spare_normal_;
};

} // namespace grasynda
