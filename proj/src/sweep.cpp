// Copyright 2026 The mfchain Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mfchain/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <cmath>
#include <string>
#include <thread>
#include <tuple>

#include <Eigen/Eigenvalues>

namespace mfchain {

ChainSpec MultiferroicModel::effective_chain() const
{
	ChainSpec c = chain;
	const auto extra = impurity_profile(impurities, chain.n_sites);
	for(const auto& [i, f] : extra.nn_scale()) {
		c.bonds.scale_nn(i, f);
	}
	for(const auto& [i, f] : extra.nnn_scale()) {
		c.bonds.scale_nnn(i, f);
	}
	return c;
}

int model_sites(const Model& model)
{
	return std::visit(
	    [](const auto& m) {
		    if constexpr(std::is_same_v<std::decay_t<decltype(m)>, MultiferroicModel>) {
			    return m.chain.n_sites;
		    } else {
			    return m.n_sites;
		    }
	    },
	    model);
}

std::vector<double> SweepGrid::range(double start, double stop, double step)
{
	if(!(step > 0.0)) {
		throw DomainError("grid step must be positive");
	}
	std::vector<double> out;
	for(long k = 0;; ++k) {
		const double v = start + static_cast<double>(k) * step;
		if(v > stop + 1e-9) {
			break;
		}
		out.push_back(v);
	}
	return out;
}

SweepGrid SweepGrid::defaults()
{
	SweepGrid g;
	g.tau_values = range(0.05, 2.0, 0.05);
	g.e1_values = range(0.05, 5.0, 0.05);
	return g;
}

void SweepGrid::validate() const
{
	if(!(t_max > 0.0)) {
		throw DomainError("t_max must be positive");
	}
	if(!(dt_unkicked > 0.0)) {
		throw DomainError("dt must be positive");
	}
	for(double tau : tau_values) {
		if(!(tau > 0.0)) {
			throw DomainError("kick periods must be positive");
		}
	}
	for(double e1 : e1_values) {
		if(!(e1 > 0.0 && e1 <= 5.0)) {
			throw DomainError("kick amplitudes must lie in (0, 5], got " + std::to_string(e1));
		}
	}
}

namespace {

// Rows of the flip block (0-based within the block) whose weights are read
// every step: (1,N) first, then all other pairs touching an end site.
struct ObservedRows {
	std::vector<Eigen::Index> rows;
	Eigen::Index mid = 0;
};

ObservedRows observed_rows(const SectorBasis& basis)
{
	ObservedRows o;
	o.rows.push_back(static_cast<Eigen::Index>(basis.index_of(basis.end_pair())) - 1);
	for(const auto& p : basis.pairs()) {
		const auto t = basis.classify(p);
		if(t == PairType::Type2 || t == PairType::Type3) {
			o.rows.push_back(static_cast<Eigen::Index>(basis.index_of(p)) - 1);
		}
	}
	o.mid = static_cast<Eigen::Index>(basis.index_of(basis.middle_pair())) - 1;
	return o;
}

Matrix select_rows(const Matrix& m, const std::vector<Eigen::Index>& rows)
{
	Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
	for(std::size_t k = 0; k < rows.size(); ++k) {
		out.row(static_cast<Eigen::Index>(k)) = m.row(rows[k]);
	}
	return out;
}

std::vector<cplx> env_rates(std::span<const std::optional<EnvironmentSpec>> envs)
{
	// r(t) = exp(i P g t) = exp(rate * t)
	std::vector<cplx> rates;
	for(const auto& e : envs) {
		rates.emplace_back(0.0, e ? e->p_sites * e->g : 0.0);
	}
	return rates;
}

struct Candidate {
	double f = -1.0;
	double e1 = 0.0;
	double tau = 0.0;
	long kicks = 0;
	double time = 0.0;
};

// Higher f wins; ties go to smaller E1, then tau, then kick count.
bool better(const Candidate& a, const Candidate& b)
{
	if(a.f != b.f) {
		return a.f > b.f;
	}
	return std::tie(a.e1, a.tau, a.kicks) < std::tie(b.e1, b.tau, b.kicks);
}

// Everything shared between grid points of one model.
struct SectorProblem {
	SectorBasis basis;
	Matrix h_flip;
	double vacuum_energy = 0.0;
	Matrix d_flip; // empty for models without a chirality term
	ObservedRows obs;

	explicit SectorProblem(const Model& model) : basis(model_sites(model))
	{
		Matrix h;
		if(const auto* mf = std::get_if<MultiferroicModel>(&model)) {
			const auto chain = mf->effective_chain();
			h = build_h0_sector(chain, basis);
			const Matrix d = build_chirality_sector(chain, basis);
			d_flip = d.bottomRightCorner(d.rows() - 1, d.cols() - 1);
		} else {
			h = build_xxz_sector(std::get<XXZSpec>(model), basis);
		}
		vacuum_energy = h(0, 0).real();
		h_flip = h.bottomRightCorner(h.rows() - 1, h.cols() - 1);
		obs = observed_rows(basis);
	}
};

void check_norm(double norm2)
{
	if(!(std::abs(std::sqrt(norm2) - 1.0) <= 1e-6)) {
		throw IntegrityError("evolved state norm drifted to " + std::to_string(std::sqrt(norm2)));
	}
}

// Unkicked maxima for every environment, sampled at k*dt, k = 1..floor(t_max/dt).
std::vector<Candidate> unkicked_maxima(const SectorProblem& prob, std::span<const std::optional<EnvironmentSpec>> envs,
                                       double t_max, double dt)
{
	if(!(dt > 0.0) || !(t_max > 0.0)) {
		throw DomainError("t_max and dt must be positive");
	}
	const Eigen::SelfAdjointEigenSolver<Matrix> es(prob.h_flip);
	const Matrix& v = es.eigenvectors();
	const Eigen::VectorXd& lambda = es.eigenvalues();
	const Vector c = v.row(prob.obs.mid).adjoint();
	const double norm2 = c.squaredNorm();
	check_norm(norm2);
	const Matrix rows = select_rows(v, prob.obs.rows) * c.asDiagonal();
	const auto rates = env_rates(envs);

	std::vector<Candidate> best(envs.size());
	const long n = KickSchedule::kicks_within(t_max, dt);
	constexpr long kChunk = 256;
	Matrix phases(lambda.size(), kChunk);
	Matrix amps;
	for(long start = 1; start <= n; start += kChunk) {
		const long count = std::min(kChunk, n - start + 1);
		for(long k = 0; k < count; ++k) {
			const double t = static_cast<double>(start + k) * dt;
			for(Eigen::Index q = 0; q < lambda.size(); ++q) {
				phases(q, k) = std::polar(1.0, -lambda(q) * t);
			}
		}
		amps.noalias() = rows * phases.leftCols(count);
		for(long k = 0; k < count; ++k) {
			const double t = static_cast<double>(start + k) * dt;
			const cplx a_end = amps(0, k);
			const double edge = amps.col(k).squaredNorm();
			const double type4 = norm2 - edge;
			for(std::size_t e = 0; e < envs.size(); ++e) {
				const double f = singlet_from_weights(type4, a_end, prob.vacuum_energy, t, std::exp(rates[e] * t));
				if(f > best[e].f) {
					best[e] = {f, 0.0, 0.0, 0, t};
				}
			}
		}
	}
	return best;
}

// Result of one tau: best per (env, E1 column).
struct TauOutcome {
	std::vector<std::vector<Candidate>> best; // [env][e1]
};

class KickedEngine {
public:
	KickedEngine(const SectorProblem& prob, std::span<const double> e1s) : prob_(prob)
	{
		if(prob.d_flip.size() == 0) {
			throw DomainError("kicked evolution requires the multiferroic model");
		}
		const Eigen::SelfAdjointEigenSolver<Matrix> hs(prob.h_flip);
		const Eigen::SelfAdjointEigenSolver<Matrix> ds(prob.d_flip);
		vh_ = hs.eigenvectors();
		lambda_ = hs.eigenvalues();
		vd_ = ds.eigenvectors();
		// H0 eigenbasis expressed in the D eigenbasis
		w_ = vd_.adjoint() * vh_;
		rows_ = select_rows(vd_, prob.obs.rows);
		start_ = vd_.row(prob.obs.mid).adjoint();

		const auto n = vd_.rows();
		kick_phases_.resize(n, static_cast<Eigen::Index>(e1s.size()));
		for(Eigen::Index e = 0; e < kick_phases_.cols(); ++e) {
			for(Eigen::Index q = 0; q < n; ++q) {
				kick_phases_(q, e) = std::polar(1.0, -e1s[static_cast<std::size_t>(e)] * ds.eigenvalues()(q));
			}
		}
		e1s_.assign(e1s.begin(), e1s.end());
	}

	TauOutcome run(double tau, long n_kicks, std::span<const cplx> rates) const
	{
		const auto n = vd_.rows();
		const auto cols = kick_phases_.cols();
		const Vector free_phase = (lambda_ * (-tau)).unaryExpr([](double a) { return std::polar(1.0, a); });
		const Matrix u0 = nearest_unitary(w_ * free_phase.asDiagonal() * w_.adjoint());

		Matrix psi = start_.replicate(1, cols);
		Matrix next(n, cols);
		Matrix amps(rows_.rows(), cols);

		TauOutcome out;
		out.best.assign(rates.size(), std::vector<Candidate>(static_cast<std::size_t>(cols)));
		std::vector<cplx> r_now(rates.size());
		for(long r = 1; r <= n_kicks; ++r) {
			next.noalias() = u0 * psi;
			psi.swap(next);
			psi.array() *= kick_phases_.array();
			amps.noalias() = rows_ * psi;

			const double t = static_cast<double>(r) * tau;
			for(std::size_t e = 0; e < rates.size(); ++e) {
				r_now[e] = std::exp(rates[e] * t);
			}
			for(Eigen::Index c = 0; c < cols; ++c) {
				const double norm2 = psi.col(c).squaredNorm();
				const double type4 = norm2 - amps.col(c).squaredNorm();
				const cplx a_end = amps(0, c);
				for(std::size_t e = 0; e < rates.size(); ++e) {
					const double f = singlet_from_weights(type4, a_end, prob_.vacuum_energy, t, r_now[e]);
					auto& b = out.best[e][static_cast<std::size_t>(c)];
					if(f > b.f) {
						b = {f, e1s_[static_cast<std::size_t>(c)], tau, r, t};
					}
				}
			}
		}
		for(Eigen::Index c = 0; c < cols; ++c) {
			check_norm(psi.col(c).squaredNorm());
		}
		return out;
	}

private:
	const SectorProblem& prob_;
	Matrix vh_;
	Eigen::VectorXd lambda_;
	Matrix vd_;
	Matrix w_;
	Matrix rows_;
	Vector start_;
	Matrix kick_phases_;
	std::vector<double> e1s_;
};

template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn)
{
	const auto workers = static_cast<std::size_t>(std::clamp(threads, 1, 256));
	if(workers == 1 || count <= 1) {
		for(std::size_t i = 0; i < count; ++i) {
			fn(i);
		}
		return;
	}
	std::atomic<std::size_t> next{0};
	std::exception_ptr failure;
	std::atomic<bool> failed{false};
	std::vector<std::jthread> pool;
	for(std::size_t w = 0; w < std::min(workers, count); ++w) {
		pool.emplace_back([&] {
			for(std::size_t i = next++; i < count && !failed; i = next++) {
				try {
					fn(i);
				} catch(...) {
					if(!failed.exchange(true)) {
						failure = std::current_exception();
					}
				}
			}
		});
	}
	pool.clear();
	if(failure) {
		std::rethrow_exception(failure);
	}
}

// Core of every kicked sweep. `fixed_kicks` > 0 overrides floor(t_max/tau).
std::vector<SweepResult> run_kicked(const Model& model, std::span<const std::optional<EnvironmentSpec>> envs,
                                    std::vector<double> taus, std::vector<double> e1s, const SweepGrid& settings,
                                    int threads, long fixed_kicks = 0)
{
	if(taus.empty() || e1s.empty()) {
		throw DomainError("tau and E1 grids must be non-empty");
	}
	std::sort(taus.begin(), taus.end());
	std::sort(e1s.begin(), e1s.end());
	for(double tau : taus) {
		if(!(tau > 0.0)) {
			throw DomainError("kick periods must be positive");
		}
	}
	for(double e1 : e1s) {
		if(!(e1 >= 0.0)) {
			throw DomainError("kick amplitude must be non-negative");
		}
	}

	const SectorProblem prob(model);
	const auto baseline = unkicked_maxima(prob, envs, settings.t_max, settings.dt_unkicked);
	const KickedEngine engine(prob, e1s);
	const auto rates = env_rates(envs);

	std::vector<TauOutcome> per_tau(taus.size());
	parallel_for(taus.size(), threads, [&](std::size_t i) {
		const long kicks = fixed_kicks > 0 ? fixed_kicks : KickSchedule::kicks_within(settings.t_max, taus[i]);
		per_tau[i] = engine.run(taus[i], kicks, rates);
	});

	std::vector<SweepResult> results(envs.size());
	for(std::size_t e = 0; e < envs.size(); ++e) {
		SweepResult& res = results[e];
		res.unkicked_f_max = baseline[e].f;
		res.unkicked_time = baseline[e].time;

		Candidate overall;
		for(std::size_t c = 0; c < e1s.size(); ++c) {
			Candidate best_tau;
			for(std::size_t i = 0; i < taus.size(); ++i) {
				const auto& cand = per_tau[i].best[e][c];
				Candidate point = cand;
				if(point.kicks == 0) {
					// no kicks fit in t_max
					point = {-1.0, e1s[c], taus[i], 0, 0.0};
				}
				res.surface.push_back({taus[i], e1s[c], point.f, point.kicks});
				if(better(point, best_tau)) {
					best_tau = point;
				}
			}
			res.per_e1.push_back({e1s[c], best_tau.f, best_tau.tau, best_tau.kicks});
			if(better(best_tau, overall)) {
				overall = best_tau;
			}
		}
		res.f_maxxx = overall.f;
		res.f_max = overall.f;
		for(const auto& s : res.per_e1) {
			if(s.e1 == overall.e1) {
				res.f_maxx = s.f_maxx;
			}
		}
		res.argmax = {overall.time, overall.tau, overall.e1, overall.kicks};
		res.delta_vs_unkicked = res.f_maxxx - res.unkicked_f_max;
	}
	return results;
}

std::vector<std::optional<EnvironmentSpec>> single(const std::optional<EnvironmentSpec>& env) { return {env}; }

} // namespace

SweepResult fmax_unkicked(const Model& model, const std::optional<EnvironmentSpec>& env, double t_max, double dt)
{
	const SectorProblem prob(model);
	const auto envs = single(env);
	const auto best = unkicked_maxima(prob, envs, t_max, dt).front();
	SweepResult res;
	res.f_max = res.f_maxx = res.f_maxxx = res.unkicked_f_max = std::max(best.f, 0.0);
	res.unkicked_time = res.argmax.time = best.time;
	if(best.f < 0.0) {
		// no sample inside (0, t_max]: only f(0) = 1/2 is available
		res.f_max = res.f_maxx = res.f_maxxx = res.unkicked_f_max = 0.5;
	}
	return res;
}

SweepResult fmax_kicked(const Model& model, const std::optional<EnvironmentSpec>& env, const KickSchedule& schedule,
                        const SweepGrid& settings)
{
	const long limit = KickSchedule::kicks_within(settings.t_max, schedule.tau);
	if(schedule.n_max < 0 || schedule.n_max > limit) {
		throw DomainError("n_max * tau exceeds t_max");
	}
	const auto envs = single(env);
	auto res = run_kicked(model, envs, {schedule.tau}, {schedule.e1}, settings, 1,
	                      schedule.n_max > 0 ? schedule.n_max : limit);
	return res.front();
}

SweepResult fmaxx(const Model& model, const std::optional<EnvironmentSpec>& env, double e1, const SweepGrid& settings,
                  int threads)
{
	const auto envs = single(env);
	return run_kicked(model, envs, settings.tau_values, {e1}, settings, threads).front();
}

SweepResult fmaxxx(const Model& model, const std::optional<EnvironmentSpec>& env, const SweepGrid& grid, int threads)
{
	const auto envs = single(env);
	return fmaxxx_envs(model, envs, grid, threads).front();
}

std::vector<SweepResult> fmaxxx_envs(const Model& model, std::span<const std::optional<EnvironmentSpec>> envs,
                                     const SweepGrid& grid, int threads)
{
	grid.validate();
	return run_kicked(model, envs, grid.tau_values, grid.e1_values, grid, threads);
}

std::vector<ImpurityRow> impurity_sweep(const ChainSpec& base, ImpurityKind kind, std::span<const double> kappas,
                                        std::span<const int> sites, const SweepGrid& grid, int threads)
{
	std::vector<ImpurityRow> rows;
	for(double kappa : kappas) {
		if(!(kappa >= 1.0)) {
			throw DomainError("impurity strength must be >= 1");
		}
		MultiferroicModel m{base, {}};
		for(int s : sites) {
			m.impurities.push_back({s, kind, kappa});
		}
		ImpurityRow row;
		row.kind = kind;
		row.kappa = kappa;
		row.unkicked_f_max = fmax_unkicked(m, std::nullopt, grid.t_max, grid.dt_unkicked).f_max;
		row.kicked = fmaxxx(m, std::nullopt, grid, threads);
		rows.push_back(std::move(row));
	}
	return rows;
}

} // namespace mfchain
