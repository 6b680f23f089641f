#include "grasynda/baselines.hpp"
#include "grasynda/error.hpp"
#include "grasynda/generator.hpp"
#include "grasynda/parallel.hpp"

#include <array>
#include <cctype>
#include <cmath>

namespace grasynda {

namespace {

struct MethodName {
	AugmentMethod method;
	std::string_view name;
};

constexpr std::array<MethodName, 9> kMethodNames{{
    {AugmentMethod::none, "none"},
    {AugmentMethod::grasynda, "grasynda"},
    {AugmentMethod::jitter, "jitter"},
    {AugmentMethod::scaling, "scaling"},
    {AugmentMethod::m_warp, "m_warp"},
    {AugmentMethod::t_warp, "t_warp"},
    {AugmentMethod::mbb, "mbb"},
    {AugmentMethod::dba, "dba"},
    {AugmentMethod::tsmixup, "tsmixup"},
}};

// Default parameter values per method; "auto" marks values derived at run
// time (block length from the period, STL from the series length).
Config defaults_for(AugmentMethod method) {
	Config c;
	switch (method) {
	case AugmentMethod::none:
		break;
	case AugmentMethod::grasynda:
		c.set("quantiles", "25");
		c.set("use_stl", "auto");
		break;
	case AugmentMethod::jitter:
		c.set("sigma", "0.03");
		break;
	case AugmentMethod::scaling:
		c.set("sigma", "0.1");
		break;
	case AugmentMethod::m_warp:
	case AugmentMethod::t_warp:
		c.set("sigma", "0.2");
		c.set("knots", "4");
		break;
	case AugmentMethod::mbb:
		c.set("block_length", "auto");
		break;
	case AugmentMethod::dba:
		c.set("n_refs", "5");
		c.set("iterations", "10");
		c.set("band", "off");
		break;
	case AugmentMethod::tsmixup:
		c.set("max_k", "3");
		c.set("alpha", "1.5");
		c.set("denormalize", "false");
		break;
	}
	return c;
}

double positive_double(const Config &c, std::string_view key) {
	const double v = *c.get_double(key);
	if (!(v > 0.0) || !std::isfinite(v)) {
		throw UsageError("parameter '" + std::string(key) + "' must be > 0");
	}
	return v;
}

std::int64_t int_at_least(const Config &c, std::string_view key, std::int64_t min) {
	const auto v = *c.get_int(key);
	if (v < min) {
		throw UsageError("parameter '" + std::string(key) + "' must be >= " + std::to_string(min));
	}
	return v;
}

} // namespace

AugmentMethod parse_method(std::string_view name) {
	// Accept the dashed spellings used in reports as well.
	std::string key(name);
	for (char &ch : key) {
		ch = ch == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
	}
	if (key == "original") {
		return AugmentMethod::none;
	}
	for (const auto &m : kMethodNames) {
		if (m.name == key) {
			return m.method;
		}
	}
	throw UsageError("unknown augmentation method '" + std::string(name) + "'");
}

std::string_view method_name(AugmentMethod method) {
	for (const auto &m : kMethodNames) {
		if (m.method == method) {
			return m.name;
		}
	}
	return "unknown";
}

Config resolved_params(AugmentMethod method, const Config &params, int period) {
	Config out = defaults_for(method);
	for (const auto &[key, value] : params.entries()) {
		if (!out.contains(key)) {
			throw UsageError("unknown parameter '" + key + "' for method " + std::string(method_name(method)));
		}
		out.set(key, value);
	}
	switch (method) {
	case AugmentMethod::none:
		break;
	case AugmentMethod::grasynda:
		int_at_least(out, "quantiles", 1);
		if (*out.get("use_stl") != "auto") {
			out.get_bool("use_stl");
		}
		break;
	case AugmentMethod::jitter:
	case AugmentMethod::scaling:
		positive_double(out, "sigma");
		break;
	case AugmentMethod::m_warp:
	case AugmentMethod::t_warp:
		positive_double(out, "sigma");
		int_at_least(out, "knots", 2);
		break;
	case AugmentMethod::mbb:
		if (*out.get("block_length") == "auto") {
			out.set("block_length", std::to_string(2 * std::max(1, period)));
		}
		int_at_least(out, "block_length", 1);
		break;
	case AugmentMethod::dba:
		int_at_least(out, "n_refs", 1);
		int_at_least(out, "iterations", 1);
		if (*out.get("band") != "off") {
			int_at_least(out, "band", 0);
		}
		break;
	case AugmentMethod::tsmixup:
		int_at_least(out, "max_k", 1);
		positive_double(out, "alpha");
		out.get_bool("denormalize");
		break;
	}
	return out;
}

SeriesCollection augment(const SeriesCollection &collection, const AugmenterSpec &spec) {
	const Config params = resolved_params(spec.method, spec.params, collection.period());
	if (spec.method == AugmentMethod::none) {
		return collection;
	}
	if (spec.method == AugmentMethod::grasynda) {
		GeneratorConfig config;
		config.seed = spec.seed;
		config.quantiles = static_cast<std::size_t>(*params.get_int("quantiles"));
		if (*params.get("use_stl") != "auto") {
			config.use_stl = params.get_bool("use_stl");
		}
		const auto synthetic = grasynda(collection, config, spec.threads);
		std::vector<TimeSeries> series;
		series.reserve(synthetic.size());
		for (const auto &s : synthetic) {
			series.push_back(s.series);
		}
		return build_augmented_set(collection, series);
	}

	std::vector<std::optional<TimeSeries>> slots(collection.size());
	parallel_for(collection.size(), spec.threads, [&](std::size_t i) {
		const TimeSeries &source = collection[i];
		Rng rng(stream_key(spec.seed, source.id(), 1));
		const auto values = source.values();
		std::vector<double> out;
		switch (spec.method) {
		case AugmentMethod::jitter:
			out = jitter(values, *params.get_double("sigma"), rng);
			break;
		case AugmentMethod::scaling:
			out = scaling(values, *params.get_double("sigma"), rng);
			break;
		case AugmentMethod::m_warp:
			out = magnitude_warp(values, *params.get_double("sigma"), static_cast<int>(*params.get_int("knots")), rng);
			break;
		case AugmentMethod::t_warp:
			out = time_warp(values, *params.get_double("sigma"), static_cast<int>(*params.get_int("knots")), rng);
			break;
		case AugmentMethod::mbb: {
			// Series too short for STL are bootstrapped directly.
			const auto block = std::min(static_cast<std::size_t>(*params.get_int("block_length")), source.size());
			out = stl_applicable(source.size(), source.period()) ? mbb(source, block, rng)
			                                                     : block_bootstrap(values, block, rng);
			break;
		}
		case AugmentMethod::dba: {
			DbaParams p;
			p.n_refs = static_cast<std::size_t>(*params.get_int("n_refs"));
			p.iterations = static_cast<std::size_t>(*params.get_int("iterations"));
			if (*params.get("band") != "off") {
				p.band = static_cast<std::size_t>(*params.get_int("band"));
			}
			out = dba(collection, i, p, rng);
			break;
		}
		case AugmentMethod::tsmixup: {
			TsMixupParams p;
			p.max_k = static_cast<std::size_t>(*params.get_int("max_k"));
			p.alpha = *params.get_double("alpha");
			p.denormalize = *params.get_bool("denormalize");
			out = tsmixup(collection, i, p, rng).values;
			break;
		}
		case AugmentMethod::none:
		case AugmentMethod::grasynda:
			throw InternalError("unreachable augmentation dispatch");
		}
		auto stamps = out.size() == source.size() ? source.stamps() : std::vector<std::string>{};
		slots[i] = TimeSeries(synthetic_id(source.id(), 1), source.period(), std::move(out), std::move(stamps));
	});

	std::vector<TimeSeries> synthetic;
	synthetic.reserve(slots.size());
	for (auto &s : slots) {
		synthetic.push_back(std::move(*s));
	}
	return build_augmented_set(collection, synthetic);
}

} // namespace grasynda
