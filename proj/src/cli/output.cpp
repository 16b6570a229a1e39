// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mfchain/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace mfchain::cli {

std::string format_number(double v)
{
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.12g", v);
	return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : width_(header.size())
{
	add_row(header);
}

void CsvTable::add_row(const std::vector<std::string>& cells)
{
	if(cells.size() != width_) {
		throw std::logic_error("csv row width mismatch");
	}
	for(std::size_t i = 0; i < cells.size(); ++i) {
		text_ += cells[i];
		text_ += i + 1 == cells.size() ? '\n' : ',';
	}
}

std::string CsvTable::str() const { return text_; }

void write_file(const std::filesystem::path& path, const std::string& content)
{
	if(path.has_parent_path()) {
		std::filesystem::create_directories(path.parent_path());
	}
	std::ofstream out(path, std::ios::binary);
	out << content;
	if(!out) {
		throw std::runtime_error("cannot write '" + path.string() + "'");
	}
}

CsvTable surface_table(const SweepResult& r)
{
	CsvTable t({"tau", "e1", "f_max", "argmax_r"});
	for(const auto& p : r.surface) {
		t.add_row({format_number(p.tau), format_number(p.e1), format_number(p.f_max), std::to_string(p.kicks)});
	}
	return t;
}

std::string sweep_summary_json(const SweepResult& r, int n_sites)
{
	using nlohmann::ordered_json;
	ordered_json j;
	j["n_sites"] = n_sites;
	j["f_max"] = r.f_max;
	j["f_maxx"] = r.f_maxx;
	j["f_maxxx"] = r.f_maxxx;
	j["fidelity"] = fidelity_from_singlet(r.f_maxxx);
	j["argmax"] = {{"time", r.argmax.time}, {"tau", r.argmax.tau}, {"e1", r.argmax.e1}, {"kicks", r.argmax.kicks}};
	j["unkicked"] = {{"f_max", r.unkicked_f_max}, {"time", r.unkicked_time}};
	j["delta_f_maxxx"] = r.delta_vs_unkicked;
	auto& per = j["per_e1"] = ordered_json::array();
	for(const auto& e : r.per_e1) {
		per.push_back({{"e1", e.e1},
		               {"f_maxx", e.f_maxx},
		               {"delta_f_maxx", e.f_maxx - r.unkicked_f_max},
		               {"tau", e.tau},
		               {"kicks", e.kicks}});
	}
	return j.dump(2) + "\n";
}

} // namespace mfchain::cli
