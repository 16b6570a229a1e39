// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mfchain/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>

#include <json.hpp>

#include "mfchain/oracle.hpp"
#include "mfchain/output.hpp"
#include "mfchain/validation.hpp"

namespace mfchain::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

fs::path out_dir(const RunConfig& cfg, const CommandOptions& opt) { return opt.out_dir.value_or(cfg.output.dir); }

std::string kind_name(ImpurityKind k) { return k == ImpurityKind::TypeI ? "TypeI" : "TypeII"; }

std::vector<std::string> series_row(const SingletResult& s)
{
	return {format_number(s.time),          format_number(s.f),
	        format_number(s.fidelity),      format_number(s.transfer_prob),
	        format_number(s.type4_weight),  format_number(s.env_factor.real()),
	        format_number(s.env_factor.imag())};
}

SingletResult sample(const SectorState& s, double e_vac, double t, const SectorBasis& basis,
                     const std::optional<EnvironmentSpec>& env)
{
	return env ? singlet_fraction_env(s, e_vac, t, basis, *env) : singlet_fraction(s, e_vac, t, basis);
}

void emit_json(const RunConfig& cfg, const fs::path& path, const std::string& text, std::ostream& log)
{
	if(cfg.output.wants("json")) {
		write_file(path, text);
		log << "wrote " << path.string() << "\n";
	}
}

void emit_csv(const RunConfig& cfg, const fs::path& path, const CsvTable& t, std::ostream& log)
{
	if(cfg.output.wants("csv")) {
		write_file(path, t.str());
		log << "wrote " << path.string() << "\n";
	}
}

} // namespace

int cmd_evolve(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log)
{
	const int n = cfg.protocol.n_sites;
	const SectorBasis basis(n);
	const bool xxz = cfg.model.type == ModelBlock::Type::XXZ;
	const ChainSpec chain = cfg.chain();
	const Matrix h = xxz ? build_xxz_sector(cfg.xxz(), basis) : build_h0_sector(chain, basis);
	const SpectralDecomposition sd(h);
	const auto s0 = initial_state(basis);
	const auto& env = cfg.environment;

	CsvTable table({"time", "f", "fidelity", "transfer_prob", "type4_weight", "re_r", "im_r"});
	const bool kicked = cfg.kick.tau.has_value() || cfg.kick.e1.has_value();
	if(kicked) {
		if(xxz) {
			throw ConfigError("kick: the xxz model has no chirality to kick");
		}
		if(!cfg.kick.tau || !cfg.kick.e1) {
			throw ConfigError("kick: evolve needs both tau and e1");
		}
		const double tau = *cfg.kick.tau;
		const long limit = KickSchedule::kicks_within(cfg.protocol.t_max, tau);
		const long n_max = cfg.kick.n_max.value_or(0) > 0 ? *cfg.kick.n_max : limit;
		if(n_max > limit) {
			throw ConfigError("kick.n_max: n_max * tau exceeds protocol.t_max");
		}
		const Matrix u0 = sd.propagator(tau);
		const Matrix u1 = kick_operator(build_chirality_sector(chain, basis), *cfg.kick.e1);
		table.add_row(series_row(sample(s0, sd.vacuum_energy(), 0.0, basis, env)));
		for_each_kick(u0, u1, s0, n_max, [&](long r, const SectorState& s) {
			const double t = static_cast<double>(r) * tau;
			table.add_row(series_row(sample(s, sd.vacuum_energy(), t, basis, env)));
		});
	} else {
		const long steps = KickSchedule::kicks_within(cfg.protocol.t_max, cfg.protocol.dt);
		for(long k = 0; k <= steps; ++k) {
			const double t = static_cast<double>(k) * cfg.protocol.dt;
			table.add_row(series_row(sample(evolve_continuous(sd, s0, t), sd.vacuum_energy(), t, basis, env)));
		}
	}
	emit_csv(cfg, out_dir(cfg, opt) / "evolve.csv", table, log);
	return kOk;
}

int cmd_sweep(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log)
{
	const auto grid = cfg.grid();
	grid.validate();
	const auto result = fmaxxx(cfg.model_spec(), cfg.environment, grid, opt.threads);
	const auto dir = out_dir(cfg, opt);
	emit_csv(cfg, dir / "sweep_surface.csv", surface_table(result), log);
	emit_json(cfg, dir / "sweep_summary.json", sweep_summary_json(result, cfg.protocol.n_sites), log);
	log << "f_maxxx " << format_number(result.f_maxxx) << " at tau " << format_number(result.argmax.tau) << " E1 "
	    << format_number(result.argmax.e1) << " r " << result.argmax.kicks << "; unkicked "
	    << format_number(result.unkicked_f_max) << "\n";
	return kOk;
}

int cmd_impurity(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log)
{
	if(!cfg.impurity) {
		throw ConfigError("impurity: block required for this command");
	}
	if(cfg.model.type != ModelBlock::Type::Multiferroic) {
		throw ConfigError("model.type: impurity studies need the multiferroic model");
	}
	const auto grid = cfg.grid();
	grid.validate();
	RunConfig clean = cfg;
	clean.impurity.reset();
	const ChainSpec base = clean.chain();

	CsvTable table({"kind", "kappa", "f_max_unkicked", "f_maxxx_kicked", "tau", "e1", "argmax_r"});
	ordered_json rows = ordered_json::array();
	for(ImpurityKind kind : cfg.impurity->kinds) {
		const auto result = impurity_sweep(base, kind, cfg.impurity->kappa, cfg.impurity->sites, grid, opt.threads);
		for(const auto& r : result) {
			table.add_row({kind_name(r.kind), format_number(r.kappa), format_number(r.unkicked_f_max),
			               format_number(r.kicked.f_maxxx), format_number(r.kicked.argmax.tau),
			               format_number(r.kicked.argmax.e1), std::to_string(r.kicked.argmax.kicks)});
			rows.push_back({{"kind", kind_name(r.kind)},
			                {"kappa", r.kappa},
			                {"f_max_unkicked", r.unkicked_f_max},
			                {"f_maxxx_kicked", r.kicked.f_maxxx},
			                {"argmax", {{"tau", r.kicked.argmax.tau}, {"e1", r.kicked.argmax.e1}, {"kicks", r.kicked.argmax.kicks}}}});
			log << kind_name(r.kind) << " kappa " << format_number(r.kappa) << ": unkicked "
			    << format_number(r.unkicked_f_max) << ", kicked " << format_number(r.kicked.f_maxxx) << "\n";
		}
	}
	const auto dir = out_dir(cfg, opt);
	emit_csv(cfg, dir / "impurity.csv", table, log);
	emit_json(cfg, dir / "impurity.json", rows.dump(2) + "\n", log);
	return kOk;
}

int cmd_compare(const RunConfig& cfg, const CommandOptions& opt, std::ostream& log)
{
	const auto grid = cfg.grid();
	grid.validate();
	const int n = cfg.protocol.n_sites;

	CsvTable table({"model", "jz_over_jx", "f_max", "time"});
	ordered_json j;
	j["n_sites"] = n;
	auto& xxz_rows = j["xxz"] = ordered_json::array();
	double xxz_best = 0.0;
	for(double ratio : cfg.model.jz_grid) {
		const XXZSpec spec{n, cfg.model.jx, ratio * cfg.model.jx};
		const auto r = fmax_unkicked(spec, std::nullopt, grid.t_max, grid.dt_unkicked);
		table.add_row({ratio == 0.0 ? "XX" : "XXZ", format_number(ratio), format_number(r.f_max),
		               format_number(r.argmax.time)});
		xxz_rows.push_back({{"jz_over_jx", ratio}, {"f_max", r.f_max}, {"time", r.argmax.time}});
		xxz_best = std::max(xxz_best, r.f_max);
		log << (ratio == 0.0 ? "XX" : "XXZ jz/jx=" + format_number(ratio)) << ": f_max " << format_number(r.f_max)
		    << "\n";
	}
	RunConfig mf = cfg;
	mf.model.type = ModelBlock::Type::Multiferroic;
	const auto kicked = fmaxxx(mf.model_spec(), std::nullopt, grid, opt.threads);
	table.add_row({"multiferroic", "", format_number(kicked.f_maxxx), format_number(kicked.argmax.time)});
	j["multiferroic"] = {{"f_maxxx", kicked.f_maxxx},
	                     {"argmax", {{"tau", kicked.argmax.tau}, {"e1", kicked.argmax.e1}, {"kicks", kicked.argmax.kicks}}},
	                     {"unkicked_f_max", kicked.unkicked_f_max}};
	j["multiferroic_exceeds_all"] = kicked.f_maxxx > xxz_best;
	log << "multiferroic kicked: f_maxxx " << format_number(kicked.f_maxxx) << "\n";

	const auto dir = out_dir(cfg, opt);
	emit_csv(cfg, dir / "compare.csv", table, log);
	emit_json(cfg, dir / "compare.json", j.dump(2) + "\n", log);
	return kOk;
}

int cmd_oracle_check(const RunConfig& cfg, const CommandOptions&, std::ostream& log)
{
	oracle::CheckParams p;
	p.j1 = cfg.model.j1;
	p.j2 = cfg.model.j2;
	p.e0 = cfg.model.e0;
	if(cfg.kick.tau) p.tau = *cfg.kick.tau;
	if(cfg.kick.e1) p.e1 = *cfg.kick.e1;
	if(cfg.environment) {
		if(cfg.environment->p_sites + p.env_system_sites > oracle::kMaxSpins) {
			throw ConfigError("environment.p_sites: the dense reference holds at most " +
			                  std::to_string(oracle::kMaxSpins - p.env_system_sites) + " bath spins");
		}
		p.env = *cfg.environment;
	}
	p.corrupt_kick_sign = cfg.oracle.corrupt_kick_sign;

	int failed = 0;
	for(const auto& c : oracle::run_checks(p)) {
		log << (c.passed() ? "PASS " : "FAIL ") << c.name << "  residual " << format_number(c.residual) << "  tol "
		    << format_number(c.tolerance) << "\n";
		failed += c.passed() ? 0 : 1;
	}
	log << (failed == 0 ? "all checks passed" : std::to_string(failed) + " check(s) failed") << "\n";
	return failed == 0 ? kOk : kOracleFailure;
}

int run_guarded(const Command& cmd, const std::string& config_path, const CommandOptions& opt, std::ostream& log,
                std::ostream& err)
{
	try {
		const RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
		return cmd(cfg, opt, log);
	} catch(const ConfigError& e) {
		err << "config error: " << e.what() << "\n";
		return kConfigError;
	} catch(const DomainError& e) {
		err << "config error: " << e.what() << "\n";
		return kConfigError;
	} catch(const ResourceError& e) {
		err << "config error: " << e.what() << "\n";
		return kConfigError;
	} catch(const IntegrityError& e) {
		err << "integrity error: " << e.what() << "\n";
		return kIntegrityError;
	} catch(const std::exception& e) {
		err << "error: " << e.what() << "\n";
		return 1;
	}
}

} // namespace mfchain::cli
