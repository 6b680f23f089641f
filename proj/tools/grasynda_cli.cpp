// Command-line front end. Talks to the library only through the C API.

#include "grasynda/grasynda.h"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kUsage = GRASYNDA_ERR_USAGE;
constexpr int kData = GRASYNDA_ERR_DATA;
constexpr int kInternal = GRASYNDA_ERR_INTERNAL;

struct Failure {
	int code;
	std::string message;
};

[[noreturn]] void raise(int code, std::string message) {
	throw Failure{code, std::move(message)};
}

void check(int status) {
	if (status != GRASYNDA_OK) {
		raise(status, grasynda_last_error());
	}
}

struct Collection {
	std::unique_ptr<grasynda_collection, decltype(&grasynda_collection_free)> ptr{nullptr, grasynda_collection_free};
	grasynda_collection *get() const {
		return ptr.get();
	}
};

std::string take(char *s) {
	std::string out(s);
	grasynda_string_free(s);
	return out;
}

std::string sha256_file(const fs::path &path) {
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		raise(kData, "cannot open '" + path.string() + "'");
	}
	std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
	if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
		raise(kInternal, "sha256 initialisation failed");
	}
	std::vector<char> buf(1 << 16);
	while (in) {
		in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
		if (in.gcount() > 0) {
			EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
		}
	}
	unsigned char digest[EVP_MAX_MD_SIZE];
	unsigned int len = 0;
	EVP_DigestFinal_ex(ctx.get(), digest, &len);
	static const char *hex = "0123456789abcdef";
	std::string out;
	for (unsigned int i = 0; i < len; ++i) {
		out += hex[digest[i] >> 4];
		out += hex[digest[i] & 15];
	}
	return out;
}

std::string utc_timestamp() {
	const std::time_t now = std::time(nullptr);
	std::tm tm{};
	gmtime_r(&now, &tm);
	char buf[32];
	std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
	return buf;
}

void write_text(const fs::path &path, const std::string &text) {
	std::ofstream out(path, std::ios::binary);
	out << text;
	if (!out) {
		raise(kData, "cannot write '" + path.string() + "'");
	}
}

// ---------------------------------------------------------------------------
// Effective configuration: CLI flag > config file > built-in default.
// ---------------------------------------------------------------------------

using Settings = std::map<std::string, std::string>;

Settings read_key_values(const fs::path &path) {
	std::ifstream in(path);
	if (!in) {
		raise(kUsage, "cannot open config '" + path.string() + "'");
	}
	Settings out;
	std::string line;
	int line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		if (const auto hash = line.find('#'); hash != std::string::npos) {
			line.erase(hash);
		}
		const auto b = line.find_first_not_of(" \t\r");
		if (b == std::string::npos) {
			continue;
		}
		const auto eq = line.find('=');
		if (eq == std::string::npos) {
			raise(kUsage, path.string() + ":" + std::to_string(line_no) + ": expected key = value");
		}
		auto trim = [](std::string s) {
			const auto first = s.find_first_not_of(" \t\r");
			const auto last = s.find_last_not_of(" \t\r");
			return first == std::string::npos ? std::string() : s.substr(first, last - first + 1);
		};
		out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
	}
	return out;
}

// A previous run's manifest also works as a config file: its effective
// configuration and input list are reused.
struct ConfigFile {
	Settings settings;
	std::vector<std::string> inputs;
};

ConfigFile read_config(const fs::path &path) {
	if (path.extension() != ".json") {
		return {read_key_values(path), {}};
	}
	std::ifstream in(path);
	if (!in) {
		raise(kUsage, "cannot open config '" + path.string() + "'");
	}
	json j;
	try {
		j = json::parse(in);
	} catch (const json::exception &e) {
		raise(kUsage, "invalid manifest '" + path.string() + "': " + e.what());
	}
	ConfigFile out;
	if (j.contains("config") && j["config"].is_object()) {
		for (const auto &[k, v] : j["config"].items()) {
			out.settings[k] = v.is_string() ? v.get<std::string>() : v.dump();
		}
	}
	if (j.contains("inputs") && j["inputs"].is_array()) {
		for (const auto &i : j["inputs"]) {
			out.inputs.push_back(i.at("path").get<std::string>());
		}
	}
	return out;
}

std::optional<std::string> lookup(const Settings &s, const std::string &key) {
	if (auto it = s.find(key); it != s.end()) {
		return it->second;
	}
	return std::nullopt;
}

long long parse_int(const std::string &key, const std::string &value, long long min) {
	errno = 0;
	char *end = nullptr;
	const long long v = std::strtoll(value.c_str(), &end, 10);
	if (value.empty() || *end != '\0' || errno != 0 || v < min) {
		raise(kUsage, "'" + key + "' must be an integer >= " + std::to_string(min) + ", got '" + value + "'");
	}
	return v;
}

std::uint64_t parse_seed(const std::string &source, const std::string &value) {
	errno = 0;
	char *end = nullptr;
	const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
	if (value.empty() || value[0] == '-' || *end != '\0' || errno != 0) {
		raise(kUsage, source + " must be a non-negative integer, got '" + value + "'");
	}
	return v;
}

double parse_real(const std::string &key, const std::string &value) {
	char *end = nullptr;
	const double v = std::strtod(value.c_str(), &end);
	if (value.empty() || *end != '\0' || !std::isfinite(v)) {
		raise(kUsage, "'" + key + "' must be a finite number, got '" + value + "'");
	}
	return v;
}

int parse_stl(const std::string &value) {
	if (value == "auto") {
		return -1;
	}
	if (value == "true" || value == "1" || value == "yes" || value == "on") {
		return 1;
	}
	if (value == "false" || value == "0" || value == "no" || value == "off") {
		return 0;
	}
	raise(kUsage, "'use_stl' must be auto, true or false, got '" + value + "'");
}

std::string join(const std::vector<std::string> &items, char sep = ',') {
	std::string out;
	for (const auto &i : items) {
		if (!out.empty()) {
			out += sep;
		}
		out += i;
	}
	return out;
}

// Flags as parsed; unset optionals fall through to the config file.
struct Flags {
	std::vector<std::string> in;
	std::string out;
	std::string config;
	std::optional<std::string> seed;
	std::optional<long long> quantiles;
	std::optional<long long> period;
	std::optional<long long> horizon;
	std::optional<long long> input_window;
	std::optional<long long> threads;
	std::optional<long long> replicas;
	std::optional<long long> length;
	std::optional<std::string> method;
	std::optional<std::string> methods;
	std::optional<std::string> forecasters;
	std::optional<std::string> export_graph;
	std::optional<std::string> name;
	std::optional<std::string> ridge_lambda;
	std::optional<std::string> scores;
	std::vector<std::string> params;
	bool no_stl = false;
};

class Run {
public:
	Run(std::string command, std::vector<std::string> argv, Flags flags)
	    : command_(std::move(command)), argv_(std::move(argv)), flags_(std::move(flags)) {}

	int execute();

private:
	void resolve();
	void set(const std::string &key, const std::string &cli_value) {
		effective_[key] = cli_value;
	}
	std::string value(const std::string &key, const std::string &fallback) const {
		return lookup(effective_, key).value_or(fallback);
	}

	Collection load(const std::string &path);
	void generate();
	void augment();
	void evaluate();
	void graph();
	void export_graphs(const Collection &c, const std::string &format, int use_stl);
	void record_output(const fs::path &path);
	void write_manifest(const std::string &status, int code, const std::string &error);

	std::string command_;
	std::vector<std::string> argv_;
	Flags flags_;
	Settings file_;
	Settings effective_;
	std::vector<std::string> inputs_;
	std::uint64_t seed_ = 0;
	std::string seed_source_ = "default";
	json extra_ = json::object();
	json outputs_ = json::array();
	std::vector<std::string> warnings_;
};

void Run::resolve() {
	if (!flags_.config.empty()) {
		auto cf = read_config(flags_.config);
		file_ = std::move(cf.settings);
		if (flags_.in.empty()) {
			flags_.in = std::move(cf.inputs);
		}
	}
	effective_ = file_;
	inputs_ = flags_.in;
	if (inputs_.empty() && !(command_ == "evaluate" && (flags_.scores || lookup(file_, "scores")))) {
		raise(kUsage, "no input given (use --in)");
	}

	auto opt_int = [&](const std::string &key, const std::optional<long long> &flag) {
		if (flag) {
			set(key, std::to_string(*flag));
		}
	};
	opt_int("quantiles", flags_.quantiles);
	opt_int("period", flags_.period);
	opt_int("horizon", flags_.horizon);
	opt_int("input_window", flags_.input_window);
	opt_int("threads", flags_.threads);
	opt_int("replicas", flags_.replicas);
	opt_int("length", flags_.length);
	if (flags_.no_stl) {
		set("use_stl", "false");
	}
	if (flags_.method) {
		set("augmenter.method", *flags_.method);
	}
	if (flags_.methods) {
		set("evaluate.methods", *flags_.methods);
	}
	if (flags_.forecasters) {
		set("evaluate.forecasters", *flags_.forecasters);
	}
	if (flags_.ridge_lambda) {
		set("evaluate.ridge_lambda", *flags_.ridge_lambda);
	}
	if (flags_.export_graph) {
		set("export_graph", *flags_.export_graph);
	}
	if (flags_.name) {
		set("name", *flags_.name);
	}
	if (flags_.scores) {
		set("scores", *flags_.scores);
	}

	// Seed: flag, then config, then the environment, then 0.
	if (flags_.seed) {
		seed_ = parse_seed("--seed", *flags_.seed);
		seed_source_ = "cli";
	} else if (auto s = lookup(file_, "seed")) {
		seed_ = parse_seed("config 'seed'", *s);
		seed_source_ = "config";
	} else if (const char *env = std::getenv("GRASYNDA_SEED"); env != nullptr && *env != '\0') {
		seed_ = parse_seed("GRASYNDA_SEED", env);
		seed_source_ = "env";
	}
	set("seed", std::to_string(seed_));

	if (!effective_.count("threads")) {
		set("threads", "1");
	}
	parse_int("threads", value("threads", "1"), 1);
}

Collection Run::load(const std::string &path) {
	const std::string name = value("name", fs::path(path).stem().string());
	int period = 1;
	int horizon = 1;
	int window = 1;
	grasynda_metadata_preset(name.c_str(), &period, &horizon, &window);
	if (auto v = lookup(effective_, "period")) {
		period = static_cast<int>(parse_int("period", *v, 1));
	}
	if (auto v = lookup(effective_, "horizon")) {
		horizon = static_cast<int>(parse_int("horizon", *v, 1));
	}
	if (auto v = lookup(effective_, "input_window")) {
		window = static_cast<int>(parse_int("input_window", *v, 1));
	}
	Collection c;
	grasynda_collection *raw = nullptr;
	check(grasynda_collection_load(path.c_str(), name.c_str(), period, horizon, window, &raw));
	c.ptr.reset(raw);
	extra_["datasets"].push_back({{"name", name},
	                              {"period", period},
	                              {"horizon", horizon},
	                              {"input_window", window},
	                              {"series", grasynda_collection_size(raw)}});
	return c;
}

void Run::record_output(const fs::path &path) {
	outputs_.push_back({{"path", fs::relative(path, flags_.out).generic_string()}, {"sha256", sha256_file(path)}});
}

std::string graph_file_stem(const std::string &id, std::set<std::string> &used) {
	std::string stem;
	for (char ch : id) {
		const bool keep = std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.';
		stem += keep ? ch : '_';
	}
	if (stem.empty() || stem[0] == '.') {
		stem.insert(0, "series");
	}
	std::string candidate = stem;
	for (int n = 2; used.count(candidate) != 0; ++n) {
		candidate = stem + "_" + std::to_string(n);
	}
	used.insert(candidate);
	return candidate;
}

void Run::export_graphs(const Collection &c, const std::string &format, int use_stl) {
	if (format != "dot" && format != "csv") {
		raise(kUsage, "--export-graph must be dot or csv, got '" + format + "'");
	}
	const auto quantiles = static_cast<std::size_t>(parse_int("quantiles", value("quantiles", "25"), 1));
	const fs::path dir = fs::path(flags_.out) / "graphs";
	fs::create_directories(dir);
	std::set<std::string> used;
	for (std::size_t i = 0; i < grasynda_collection_size(c.get()); ++i) {
		const char *id = nullptr;
		check(grasynda_collection_series(c.get(), i, &id, nullptr, nullptr));
		grasynda_graph *g = nullptr;
		check(grasynda_graph_build_series(c.get(), i, quantiles, use_stl, &g));
		std::unique_ptr<grasynda_graph, decltype(&grasynda_graph_free)> guard(g, grasynda_graph_free);
		char *text = nullptr;
		check(grasynda_graph_export(g, format.c_str(), &text));
		const fs::path path = dir / (graph_file_stem(id, used) + "." + format);
		write_text(path, take(text));
		record_output(path);
	}
}

void Run::generate() {
	if (inputs_.size() != 1) {
		raise(kUsage, "generate takes exactly one --in file");
	}
	const auto in = load(inputs_[0]);
	grasynda_generator_options opts;
	grasynda_generator_options_default(&opts);
	opts.seed = seed_;
	opts.quantiles = static_cast<std::size_t>(parse_int("quantiles", value("quantiles", "25"), 1));
	opts.replicas = static_cast<std::size_t>(parse_int("replicas", value("replicas", "1"), 1));
	opts.length = static_cast<std::size_t>(parse_int("length", value("length", "0"), 0));
	opts.use_stl = parse_stl(value("use_stl", "auto"));
	opts.threads = static_cast<int>(parse_int("threads", value("threads", "1"), 1));
	set("quantiles", std::to_string(opts.quantiles));
	set("replicas", std::to_string(opts.replicas));
	set("use_stl", value("use_stl", "auto"));

	std::size_t decomposed = 0;
	check(grasynda_stl_usage(in.get(), opts.use_stl, &decomposed));
	extra_["stl"] = decomposed > 0;
	extra_["stl_series"] = decomposed;
	extra_["series"] = grasynda_collection_size(in.get());

	Collection out;
	grasynda_collection *raw = nullptr;
	check(grasynda_generate(in.get(), &opts, &raw));
	out.ptr.reset(raw);
	const fs::path path = fs::path(flags_.out) / "synthetic.csv";
	check(grasynda_collection_save(out.get(), path.c_str()));
	record_output(path);
	if (auto format = lookup(effective_, "export_graph")) {
		export_graphs(in, *format, opts.use_stl);
	}
}

void Run::augment() {
	if (inputs_.size() != 1) {
		raise(kUsage, "augment takes exactly one --in file");
	}
	const auto in = load(inputs_[0]);
	const std::string method = value("augmenter.method", "grasynda");
	set("augmenter.method", method);

	// Method parameters: config `augmenter.<method>.<param>`, then --param.
	std::map<std::string, std::string> params;
	const std::string prefix = "augmenter." + method + ".";
	for (const auto &[k, v] : file_) {
		if (k.rfind(prefix, 0) == 0) {
			params[k.substr(prefix.size())] = v;
		}
	}
	if (method == "grasynda") {
		if (auto q = lookup(effective_, "quantiles")) {
			params["quantiles"] = *q;
		}
		if (auto s = lookup(effective_, "use_stl")) {
			params["use_stl"] = *s;
		}
	}
	for (const auto &p : flags_.params) {
		const auto eq = p.find('=');
		if (eq == std::string::npos || eq == 0) {
			raise(kUsage, "--param expects key=value, got '" + p + "'");
		}
		params[p.substr(0, eq)] = p.substr(eq + 1);
	}
	std::vector<std::string> pairs;
	for (const auto &[k, v] : params) {
		pairs.push_back(k + "=" + v);
	}
	const std::string inline_params = join(pairs);

	char *resolved = nullptr;
	check(grasynda_augment_params(method.c_str(), inline_params.c_str(), grasynda_collection_period(in.get()),
	                              &resolved));
	std::istringstream lines(take(resolved));
	std::string line;
	while (std::getline(lines, line)) {
		const auto eq = line.find(" = ");
		if (eq != std::string::npos) {
			set(prefix + line.substr(0, eq), line.substr(eq + 3));
		}
	}

	Collection out;
	grasynda_collection *raw = nullptr;
	const int threads = static_cast<int>(parse_int("threads", value("threads", "1"), 1));
	check(grasynda_augment(in.get(), method.c_str(), inline_params.c_str(), seed_, threads, &raw));
	out.ptr.reset(raw);
	extra_["series_in"] = grasynda_collection_size(in.get());
	extra_["series_out"] = grasynda_collection_size(out.get());
	const fs::path path = fs::path(flags_.out) / "augmented.csv";
	check(grasynda_collection_save(out.get(), path.c_str()));
	record_output(path);
}

void Run::evaluate() {
	grasynda_report *raw = nullptr;
	if (auto scores = lookup(effective_, "scores")) {
		check(grasynda_report_from_scores(scores->c_str(), "none", &raw));
		inputs_.push_back(*scores);
	} else {
		const std::string methods = value("evaluate.methods", "none,grasynda");
		const std::string forecasters = value("evaluate.forecasters", "snaive,ridge");
		const std::string lambda = value("evaluate.ridge_lambda", "0.001");
		set("evaluate.methods", methods);
		set("evaluate.forecasters", forecasters);
		set("evaluate.ridge_lambda", lambda);

		std::vector<std::string> pairs;
		for (const auto &[k, v] : file_) {
			if (k.rfind("augmenter.", 0) == 0 && k != "augmenter.method") {
				pairs.push_back(k.substr(std::string("augmenter.").size()) + "=" + v);
			}
		}
		for (const auto &p : flags_.params) {
			const auto eq = p.find('=');
			if (eq == std::string::npos || p.find('.') > eq) {
				raise(kUsage, "--param expects method.key=value, got '" + p + "'");
			}
			set("augmenter." + p.substr(0, eq), p.substr(eq + 1));
			pairs.push_back(p);
		}
		const std::string params = join(pairs);

		std::vector<Collection> datasets;
		std::vector<const grasynda_collection *> handles;
		for (const auto &path : inputs_) {
			datasets.push_back(load(path));
			handles.push_back(datasets.back().get());
		}
		grasynda_evaluate_options opts;
		grasynda_evaluate_options_default(&opts);
		opts.methods = methods.c_str();
		opts.forecasters = forecasters.c_str();
		opts.params = params.c_str();
		opts.seed = seed_;
		opts.ridge_lambda = parse_real("evaluate.ridge_lambda", lambda);
		opts.threads = static_cast<int>(parse_int("threads", value("threads", "1"), 1));
		check(grasynda_evaluate(handles.data(), handles.size(), &opts, &raw));
	}
	std::unique_ptr<grasynda_report, decltype(&grasynda_report_free)> report(raw, grasynda_report_free);
	for (std::size_t i = 0; i < grasynda_report_warning_count(raw); ++i) {
		warnings_.push_back(grasynda_report_warning(raw, i));
	}
	const std::pair<const char *, const char *> files[] = {
	    {"csv", "report.csv"}, {"table", "report.txt"}, {"summary", "summary.csv"}, {"scores", "scores.csv"}};
	for (const auto &[kind, file] : files) {
		char *text = nullptr;
		check(grasynda_report_write(raw, kind, &text));
		const fs::path path = fs::path(flags_.out) / file;
		write_text(path, take(text));
		record_output(path);
	}
}

void Run::graph() {
	if (inputs_.size() != 1) {
		raise(kUsage, "graph takes exactly one --in file");
	}
	const auto in = load(inputs_[0]);
	const std::string format = value("export_graph", "dot");
	set("export_graph", format);
	set("quantiles", value("quantiles", "25"));
	set("use_stl", value("use_stl", "auto"));
	export_graphs(in, format, parse_stl(value("use_stl", "auto")));
}

void Run::write_manifest(const std::string &status, int code, const std::string &error) {
	json m;
	m["command"] = argv_;
	m["subcommand"] = command_;
	m["status"] = status;
	m["exit_code"] = code;
	if (!error.empty()) {
		m["error"] = error;
	}
	m["version"] = grasynda_version();
	m["seed"] = seed_;
	m["seed_source"] = seed_source_;
	m["config"] = json::object();
	for (const auto &[k, v] : effective_) {
		m["config"][k] = v;
	}
	json inputs = json::array();
	for (const auto &path : inputs_) {
		json entry{{"path", fs::absolute(path).lexically_normal().string()}};
		try {
			entry["sha256"] = sha256_file(path);
		} catch (const Failure &) {
			entry["sha256"] = nullptr;
		}
		inputs.push_back(entry);
	}
	m["inputs"] = inputs;
	m["outputs"] = outputs_;
	for (const auto &[k, v] : extra_.items()) {
		m[k] = v;
	}
	m["warnings"] = warnings_;
	m["timestamp"] = utc_timestamp();
	std::ofstream out(fs::path(flags_.out) / "manifest.json", std::ios::binary);
	out << m.dump(2) << '\n';
}

int Run::execute() {
	if (flags_.out.empty()) {
		std::cerr << "error: --out is required\n";
		return kUsage;
	}
	try {
		fs::create_directories(flags_.out);
	} catch (const fs::filesystem_error &e) {
		std::cerr << "error: cannot create output directory: " << e.what() << '\n';
		return kData;
	}
	int code = 0;
	std::string error;
	try {
		resolve();
		if (command_ == "generate") {
			generate();
		} else if (command_ == "augment") {
			augment();
		} else if (command_ == "evaluate") {
			evaluate();
		} else {
			graph();
		}
	} catch (const Failure &f) {
		code = f.code;
		error = f.message;
	} catch (const fs::filesystem_error &e) {
		code = kData;
		error = e.what();
	} catch (const std::exception &e) {
		code = kInternal;
		error = e.what();
	}
	try {
		write_manifest(code == 0 ? "ok" : "failed", code, error);
	} catch (const std::exception &e) {
		std::cerr << "error: cannot write manifest: " << e.what() << '\n';
		return code == 0 ? kData : code;
	}
	for (const auto &w : warnings_) {
		std::cerr << "warning: " << w << '\n';
	}
	if (code != 0) {
		std::cerr << "error: " << error << '\n';
	}
	return code;
}

} // namespace

int main(int argc, char **argv) {
	CLI::App app{"Synthetic time series generation with quantile graphs"};
	app.require_subcommand(1);
	Flags flags;

	auto common = [&](CLI::App *sub, bool many_inputs) {
		if (many_inputs) {
			sub->add_option("--in", flags.in, "Input CSV(s) in unique_id,ds,y format");
		} else {
			sub->add_option("--in", flags.in, "Input CSV in unique_id,ds,y format")->expected(1);
		}
		sub->add_option("--out", flags.out, "Output directory")->required();
		sub->add_option("--config", flags.config, "key = value config file or a previous manifest.json");
		sub->add_option("--seed", flags.seed, "Random seed (fallback: GRASYNDA_SEED)");
		sub->add_option("--period", flags.period, "Seasonal period");
		sub->add_option("--horizon", flags.horizon, "Forecast horizon");
		sub->add_option("--input-window", flags.input_window, "Forecaster input window");
		sub->add_option("--threads", flags.threads, "Worker threads");
		sub->add_option("--name", flags.name, "Dataset name (default: input file stem)");
	};

	auto *gen = app.add_subcommand("generate", "Generate one synthetic replica set");
	common(gen, false);
	gen->add_option("--quantiles", flags.quantiles, "Number of quantile states (default 25)");
	gen->add_flag("--no-stl", flags.no_stl, "Never decompose before sampling");
	gen->add_option("--replicas", flags.replicas, "Synthetic series per source (default 1)");
	gen->add_option("--length", flags.length, "Synthetic length (default: source length)");
	gen->add_option("--export-graph", flags.export_graph, "Write per-series graphs (dot|csv)");

	auto *aug = app.add_subcommand("augment", "Original plus synthetic series for one method");
	common(aug, false);
	aug->add_option("--method", flags.method,
	                "none|grasynda|jitter|scaling|m_warp|t_warp|mbb|dba|tsmixup (default grasynda)");
	aug->add_option("--param", flags.params, "Method parameter key=value (repeatable)");
	aug->add_option("--quantiles", flags.quantiles, "Quantile states for grasynda");
	aug->add_flag("--no-stl", flags.no_stl, "Disable decomposition for grasynda");

	auto *eval = app.add_subcommand("evaluate", "Run the augmentation/forecasting grid and aggregate MASE");
	common(eval, true);
	eval->add_option("--methods", flags.methods, "Comma-separated methods (default none,grasynda)");
	eval->add_option("--forecasters", flags.forecasters, "Comma-separated forecasters (default snaive,ridge)");
	eval->add_option("--param", flags.params, "Method parameter method.key=value (repeatable)");
	eval->add_option("--ridge-lambda", flags.ridge_lambda, "Ridge penalty (default 0.001)");
	eval->add_option("--scores", flags.scores, "Aggregate an existing scores CSV instead of running");

	auto *graph = app.add_subcommand("graph", "Export quantile graphs");
	common(graph, false);
	graph->add_option("--quantiles", flags.quantiles, "Number of quantile states (default 25)");
	graph->add_flag("--no-stl", flags.no_stl, "Build graphs on the raw series");
	graph->add_option("--export-graph", flags.export_graph, "dot|csv (default dot)");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp &e) {
		return app.exit(e);
	} catch (const CLI::CallForAllHelp &e) {
		return app.exit(e);
	} catch (const CLI::ParseError &e) {
		app.exit(e);
		return kUsage;
	}

	std::vector<std::string> args(argv, argv + argc);
	const std::string command = app.get_subcommands().front()->get_name();
	return Run(command, std::move(args), std::move(flags)).execute();
}
