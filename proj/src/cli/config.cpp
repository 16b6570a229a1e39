// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mfchain/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mfchain::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg)
{
	throw ConfigError("field '" + field + "': " + msg);
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed)
{
	if(!obj.is_object()) {
		fail(path, "expected an object");
	}
	const std::set<std::string> ok(allowed.begin(), allowed.end());
	for(const auto& [key, value] : obj.items()) {
		if(!ok.contains(key)) {
			fail(path.empty() ? key : path + "." + key, "unknown key");
		}
	}
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

double number(const json& v, const std::string& field)
{
	if(!v.is_number()) {
		fail(field, "expected a number");
	}
	const double d = v.get<double>();
	if(!std::isfinite(d)) {
		fail(field, "must be finite");
	}
	return d;
}

long integer(const json& v, const std::string& field)
{
	if(!v.is_number_integer()) {
		fail(field, "expected an integer");
	}
	return v.get<long>();
}

// number | [numbers] | {"start", "stop", "step"}
std::vector<double> number_list(const json& v, const std::string& field)
{
	if(v.is_number()) {
		return {number(v, field)};
	}
	if(v.is_array()) {
		if(v.empty()) {
			fail(field, "list must not be empty");
		}
		std::vector<double> out;
		for(std::size_t i = 0; i < v.size(); ++i) {
			out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
		}
		return out;
	}
	if(v.is_object()) {
		only_keys(v, field, {"start", "stop", "step"});
		for(const char* k : {"start", "stop", "step"}) {
			if(!v.contains(k)) {
				fail(join(field, k), "missing");
			}
		}
		const double step = number(v["step"], join(field, "step"));
		if(!(step > 0.0)) {
			fail(join(field, "step"), "must be positive");
		}
		auto out = SweepGrid::range(number(v["start"], join(field, "start")), number(v["stop"], join(field, "stop")), step);
		if(out.empty()) {
			fail(field, "range is empty");
		}
		return out;
	}
	fail(field, "expected a number, a list or a {start, stop, step} range");
}

ImpurityKind impurity_kind(const json& v, const std::string& field)
{
	if(v == "TypeI" || v == "I") {
		return ImpurityKind::TypeI;
	}
	if(v == "TypeII" || v == "II") {
		return ImpurityKind::TypeII;
	}
	fail(field, "expected \"TypeI\" or \"TypeII\"");
}

void read_model(const json& j, ModelBlock& m)
{
	only_keys(j, "model", {"type", "j1", "j2", "e0", "jx", "jz", "jz_grid"});
	if(j.contains("type")) {
		if(j["type"] == "multiferroic") {
			m.type = ModelBlock::Type::Multiferroic;
		} else if(j["type"] == "xxz") {
			m.type = ModelBlock::Type::XXZ;
		} else {
			fail("model.type", "expected \"multiferroic\" or \"xxz\"");
		}
	}
	if(j.contains("j1")) m.j1 = number(j["j1"], "model.j1");
	if(j.contains("j2")) m.j2 = number(j["j2"], "model.j2");
	if(j.contains("e0")) m.e0 = number(j["e0"], "model.e0");
	if(j.contains("jx")) m.jx = number(j["jx"], "model.jx");
	if(j.contains("jz")) m.jz = number(j["jz"], "model.jz");
	if(j.contains("jz_grid")) m.jz_grid = number_list(j["jz_grid"], "model.jz_grid");
}

void read_protocol(const json& j, ProtocolBlock& p)
{
	only_keys(j, "protocol", {"n_sites", "t_max", "dt"});
	if(j.contains("n_sites")) {
		const long n = integer(j["n_sites"], "protocol.n_sites");
		if(n < 4 || n % 2 != 0 || n > 64) {
			fail("protocol.n_sites", "must be even, >= 4 and <= 64");
		}
		p.n_sites = static_cast<int>(n);
	}
	if(j.contains("t_max")) p.t_max = number(j["t_max"], "protocol.t_max");
	if(j.contains("dt")) p.dt = number(j["dt"], "protocol.dt");
	if(!(p.t_max > 0.0)) fail("protocol.t_max", "must be positive");
	if(!(p.dt > 0.0)) fail("protocol.dt", "must be positive");
}

void read_kick(const json& j, KickBlock& k)
{
	only_keys(j, "kick", {"tau", "e1", "n_max", "tau_grid", "e1_grid"});
	if(j.contains("tau")) {
		k.tau = number(j["tau"], "kick.tau");
		if(!(*k.tau > 0.0)) fail("kick.tau", "must be positive");
	}
	if(j.contains("e1")) {
		k.e1 = number(j["e1"], "kick.e1");
		if(!(*k.e1 >= 0.0 && *k.e1 <= 5.0)) fail("kick.e1", "must lie in [0, 5]");
	}
	if(j.contains("n_max")) {
		k.n_max = integer(j["n_max"], "kick.n_max");
		if(*k.n_max < 0) fail("kick.n_max", "must be non-negative");
	}
	if(j.contains("tau_grid")) {
		k.tau_grid = number_list(j["tau_grid"], "kick.tau_grid");
		for(double t : k.tau_grid) {
			if(!(t > 0.0)) fail("kick.tau_grid", "values must be positive");
		}
	}
	if(j.contains("e1_grid")) {
		k.e1_grid = number_list(j["e1_grid"], "kick.e1_grid");
		for(double e : k.e1_grid) {
			if(!(e > 0.0 && e <= 5.0)) fail("kick.e1_grid", "values must lie in (0, 5]");
		}
	}
}

EnvironmentSpec read_environment(const json& j)
{
	only_keys(j, "environment", {"p_sites", "g"});
	EnvironmentSpec e;
	if(j.contains("p_sites")) {
		const long p = integer(j["p_sites"], "environment.p_sites");
		if(p < 1) fail("environment.p_sites", "must be >= 1");
		e.p_sites = static_cast<int>(p);
	}
	if(j.contains("g")) e.g = number(j["g"], "environment.g");
	return e;
}

ImpurityBlock read_impurity(const json& j, int n_sites)
{
	only_keys(j, "impurity", {"kind", "sites", "kappa"});
	ImpurityBlock b;
	if(j.contains("kind")) {
		const auto& k = j["kind"];
		b.kinds.clear();
		if(k.is_array()) {
			for(std::size_t i = 0; i < k.size(); ++i) {
				b.kinds.push_back(impurity_kind(k[i], "impurity.kind[" + std::to_string(i) + "]"));
			}
			if(b.kinds.empty()) fail("impurity.kind", "list must not be empty");
		} else {
			b.kinds.push_back(impurity_kind(k, "impurity.kind"));
		}
	}
	if(j.contains("sites")) {
		const auto& s = j["sites"];
		if(!s.is_array() || s.empty()) fail("impurity.sites", "expected a non-empty list of sites");
		b.sites.clear();
		for(std::size_t i = 0; i < s.size(); ++i) {
			b.sites.push_back(static_cast<int>(integer(s[i], "impurity.sites[" + std::to_string(i) + "]")));
		}
	}
	for(int site : b.sites) {
		if(site < 2 || site > n_sites - 2) {
			fail("impurity.sites", "site " + std::to_string(site) + " needs 2 <= k <= N-2");
		}
	}
	if(j.contains("kappa")) {
		b.kappa = number_list(j["kappa"], "impurity.kappa");
	}
	for(double k : b.kappa) {
		if(!(k >= 1.0)) fail("impurity.kappa", "strengths must be >= 1");
	}
	return b;
}

void read_output(const json& j, OutputBlock& o)
{
	only_keys(j, "output", {"dir", "formats"});
	if(j.contains("dir")) {
		if(!j["dir"].is_string()) fail("output.dir", "expected a string");
		o.dir = j["dir"].get<std::string>();
	}
	if(j.contains("formats")) {
		const auto& f = j["formats"];
		if(!f.is_array()) fail("output.formats", "expected a list");
		o.formats.clear();
		for(std::size_t i = 0; i < f.size(); ++i) {
			const auto field = "output.formats[" + std::to_string(i) + "]";
			if(f[i] != "csv" && f[i] != "json") fail(field, "expected \"csv\" or \"json\"");
			o.formats.push_back(f[i].get<std::string>());
		}
	}
}

std::string locate(const std::string& text, std::size_t byte)
{
	std::size_t line = 1;
	std::size_t col = 1;
	for(std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
		if(text[i] == '\n') {
			++line;
			col = 1;
		} else {
			++col;
		}
	}
	// nlohmann reports the byte just past the offending character
	return "line " + std::to_string(line) + ", column " + std::to_string(col > 1 ? col - 1 : col);
}

} // namespace

bool OutputBlock::wants(const std::string& fmt) const
{
	return std::find(formats.begin(), formats.end(), fmt) != formats.end();
}

ChainSpec RunConfig::chain() const
{
	ChainSpec c;
	c.n_sites = protocol.n_sites;
	c.j1 = model.j1;
	c.j2 = model.j2;
	c.e0 = model.e0;
	if(impurity) {
		std::vector<ImpuritySpec> specs;
		for(int s : impurity->sites) {
			specs.push_back({s, impurity->kinds.front(), impurity->kappa.front()});
		}
		c.bonds = impurity_profile(specs, c.n_sites);
	}
	return c;
}

XXZSpec RunConfig::xxz() const { return {protocol.n_sites, model.jx, model.jz}; }

Model RunConfig::model_spec() const
{
	if(model.type == ModelBlock::Type::XXZ) {
		return xxz();
	}
	return MultiferroicModel{chain(), {}};
}

SweepGrid RunConfig::grid() const
{
	SweepGrid g;
	g.t_max = protocol.t_max;
	g.dt_unkicked = protocol.dt;
	g.tau_values = kick.tau_grid;
	g.e1_values = kick.e1_grid;
	return g;
}

RunConfig parse_config(const std::string& text)
{
	json root;
	try {
		root = json::parse(text);
	} catch(const json::parse_error& e) {
		throw ConfigError("parse error at " + locate(text, e.byte) + ": " + e.what());
	}
	only_keys(root, "", {"model", "protocol", "kick", "environment", "impurity", "output", "oracle"});
	RunConfig cfg;
	if(root.contains("model")) read_model(root["model"], cfg.model);
	if(root.contains("protocol")) read_protocol(root["protocol"], cfg.protocol);
	if(root.contains("kick")) read_kick(root["kick"], cfg.kick);
	if(root.contains("environment")) cfg.environment = read_environment(root["environment"]);
	if(root.contains("impurity")) cfg.impurity = read_impurity(root["impurity"], cfg.protocol.n_sites);
	if(root.contains("output")) read_output(root["output"], cfg.output);
	if(root.contains("oracle")) {
		only_keys(root["oracle"], "oracle", {"corrupt_kick_sign"});
		if(root["oracle"].contains("corrupt_kick_sign")) {
			if(!root["oracle"]["corrupt_kick_sign"].is_boolean()) fail("oracle.corrupt_kick_sign", "expected a boolean");
			cfg.oracle.corrupt_kick_sign = root["oracle"]["corrupt_kick_sign"].get<bool>();
		}
	}
	return cfg;
}

RunConfig load_config(const std::string& path)
{
	std::ifstream in(path);
	if(!in) {
		throw ConfigError("cannot read config file '" + path + "'");
	}
	std::stringstream ss;
	ss << in.rdbuf();
	return parse_config(ss.str());
}

} // namespace mfchain::cli
