#pragma once

#include <span>
#include <vector>

namespace grasynda {

// Natural cubic spline (zero second derivative at both ends) through knots
// with strictly increasing abscissae. Two knots give the straight line.
class CubicSpline {
public:
	CubicSpline(std::vector<double> x, std::vector<double> y);

	double operator()(double at) const;
	std::vector<double> evaluate(std::span<const double> at) const;

private:
	std::vector<double> x_;
	std::vector<double> y_;
	std::vector<double> second_; // second derivatives at the knots
};

// Linear interpolation of samples taken at positions 0..n-1; positions
// outside the range clamp to the end samples.
double interpolate_linear(std::span<const double> samples, double position);

} // namespace grasynda
