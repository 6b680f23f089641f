#include "grasynda/spline.hpp"

#include "grasynda/error.hpp"

#include <algorithm>
#include <cmath>

namespace grasynda {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
	const std::size_t n = x_.size();
	if (n < 2 || y_.size() != n) {
		throw UsageError("cubic spline needs at least two knots with matching ordinates");
	}
	for (std::size_t i = 1; i < n; ++i) {
		if (!(x_[i - 1] < x_[i])) {
			throw UsageError("cubic spline knots must be strictly increasing");
		}
	}
	second_.assign(n, 0.0);
	if (n == 2) {
		return;
	}
	// Tridiagonal system for the interior second derivatives (Thomas algorithm).
	std::vector<double> diag(n, 0.0);
	std::vector<double> rhs(n, 0.0);
	std::vector<double> upper(n, 0.0);
	for (std::size_t i = 1; i + 1 < n; ++i) {
		const double h0 = x_[i] - x_[i - 1];
		const double h1 = x_[i + 1] - x_[i];
		const double lower = h0;
		diag[i] = 2.0 * (h0 + h1);
		upper[i] = h1;
		rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
		if (i > 1) {
			const double m = lower / diag[i - 1];
			diag[i] -= m * upper[i - 1];
			rhs[i] -= m * rhs[i - 1];
		}
	}
	for (std::size_t i = n - 2; i >= 1; --i) {
		const double next = i + 2 < n ? second_[i + 1] : 0.0;
		second_[i] = (rhs[i] - upper[i] * next) / diag[i];
		if (i == 1) {
			break;
		}
	}
}

double CubicSpline::operator()(double at) const {
	const std::size_t n = x_.size();
	std::size_t hi = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), at) - x_.begin());
	hi = std::clamp<std::size_t>(hi, 1, n - 1);
	const std::size_t lo = hi - 1;
	const double h = x_[hi] - x_[lo];
	const double a = (x_[hi] - at) / h;
	const double b = (at - x_[lo]) / h;
	return a * y_[lo] + b * y_[hi] + ((a * a * a - a) * second_[lo] + (b * b * b - b) * second_[hi]) * h * h / 6.0;
}

std::vector<double> CubicSpline::evaluate(std::span<const double> at) const {
	std::vector<double> out(at.size());
	std::transform(at.begin(), at.end(), out.begin(), [this](double t) { return (*this)(t); });
	return out;
}

double interpolate_linear(std::span<const double> samples, double position) {
	const std::size_t n = samples.size();
	if (n == 0) {
		throw UsageError("cannot interpolate an empty sequence");
	}
	if (n == 1 || position <= 0.0) {
		return samples.front();
	}
	if (position >= static_cast<double>(n - 1)) {
		return samples.back();
	}
	const auto lo = static_cast<std::size_t>(std::floor(position));
	const double frac = position - static_cast<double>(lo);
	if (frac == 0.0) {
		return samples[lo];
	}
	return samples[lo] + frac * (samples[lo + 1] - samples[lo]);
}

} // namespace grasynda
