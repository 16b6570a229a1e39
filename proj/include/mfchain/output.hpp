// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mfchain/sweep.hpp"

namespace mfchain::cli {

/// 12 significant digits, locale independent.
std::string format_number(double v);

class CsvTable {
public:
	explicit CsvTable(std::vector<std::string> header);

	void add_row(const std::vector<std::string>& cells);
	[[nodiscard]] std::string str() const;

private:
	std::size_t width_;
	std::string text_;
};

void write_file(const std::filesystem::path& path, const std::string& content);

CsvTable surface_table(const SweepResult& r);
std::string sweep_summary_json(const SweepResult& r, int n_sites);

} // namespace mfchain::cli
