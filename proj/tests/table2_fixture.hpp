#pragma once

// Published per-cell mean MASE grid of the benchmark study: three
// forecasters x six datasets x ten columns (the no-augmentation baseline,
// eight augmenters and the seasonal naive reference). One record per cell.

#include "grasynda/evaluation.hpp"

#include <array>
#include <string>
#include <vector>

namespace fixture {

inline constexpr std::array<const char *, 10> kMethods{"none",  "grasynda", "dba",    "jitter",  "m_warp",
                                                       "mbb",   "scaling",  "t_warp", "tsmixup", "snaive"};
inline constexpr std::array<const char *, 6> kDatasets{"M1-M", "M1-Q", "M3-M", "M3-Q", "T-M", "T-Q"};
inline constexpr std::array<const char *, 3> kForecasters{"NHITS", "MLP", "KAN"};

// [forecaster][dataset][method]
inline constexpr double kGrid[3][6][10] = {
    {
        {0.977, 0.945, 0.948, 0.970, 0.981, 0.952, 0.948, 0.977, 0.978, 1.221},
        {1.037, 1.034, 1.094, 1.036, 0.974, 1.029, 1.039, 1.066, 1.049, 1.647},
        {0.801, 0.759, 0.779, 0.786, 0.773, 0.764, 0.770, 0.757, 0.770, 1.091},
        {1.199, 1.220, 1.136, 1.185, 1.181, 1.165, 1.131, 1.193, 1.193, 1.417},
        {1.208, 1.190, 1.193, 1.200, 1.208, 1.184, 1.206, 1.230, 1.190, 1.345},
        {1.635, 1.555, 1.565, 1.608, 1.628, 1.663, 1.603, 1.616, 1.622, 1.702},
    },
    {
        {0.930, 0.948, 0.985, 0.940, 0.968, 0.936, 0.926, 0.977, 0.954, 1.221},
        {1.070, 1.075, 1.064, 1.034, 0.996, 1.036, 1.040, 1.076, 1.062, 1.647},
        {0.774, 0.768, 0.777, 0.760, 0.780, 0.765, 0.767, 0.757, 0.761, 1.091},
        {1.143, 1.181, 1.152, 1.148, 1.159, 1.154, 1.112, 1.132, 1.209, 1.417},
        {1.198, 1.195, 2.545, 1.213, 1.216, 1.196, 1.204, 1.257, 1.183, 1.345},
        {1.568, 1.517, 1.605, 1.654, 1.615, 1.637, 1.645, 1.720, 1.598, 1.702},
    },
    {
        {0.961, 0.941, 0.957, 0.962, 0.979, 0.939, 0.936, 1.008, 0.955, 1.221},
        {1.013, 1.022, 1.043, 1.013, 0.966, 1.016, 1.030, 1.071, 1.044, 1.647},
        {0.784, 0.779, 0.777, 0.783, 0.796, 0.773, 0.797, 0.798, 0.775, 1.091},
        {1.223, 1.207, 1.146, 1.229, 1.213, 1.221, 1.165, 1.206, 1.271, 1.417},
        {1.227, 1.190, 1.231, 1.228, 1.229, 1.217, 1.222, 1.273, 1.213, 1.345},
        {1.571, 1.548, 1.549, 1.631, 1.591, 1.600, 1.623, 1.670, 1.642, 1.702},
    },
};

// Published summary rows, [forecaster][method].
inline constexpr double kAverageRank[3][10] = {
    {7.3, 3.1, 4.4, 5.2, 5.8, 3.7, 3.8, 6.0, 5.8, 10.0},
    {4.2, 5.0, 7.0, 4.3, 6.0, 4.2, 3.8, 6.3, 4.5, 9.7},
    {4.9, 3.0, 4.3, 5.9, 5.3, 3.5, 4.5, 8.0, 5.5, 10.0},
};
// Effectiveness row, aligned with kMethods (unset for the baseline).
inline constexpr double kEffectiveness[10] = {0.0, 0.72, 0.56, 0.50, 0.39, 0.67, 0.67, 0.33, 0.56, 0.0};

inline std::vector<grasynda::ScoreRecord> records() {
	std::vector<grasynda::ScoreRecord> out;
	for (std::size_t f = 0; f < kForecasters.size(); ++f) {
		for (std::size_t d = 0; d < kDatasets.size(); ++d) {
			for (std::size_t m = 0; m < kMethods.size(); ++m) {
				out.push_back({kDatasets[d], kForecasters[f], kMethods[m], "cell", kGrid[f][d][m]});
			}
		}
	}
	return out;
}

} // namespace fixture
