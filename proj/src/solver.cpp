#include "fracbq/solver.hpp"

#include "fracbq/operators.hpp"
#include "fracbq/parallel.hpp"
#include "fracbq/transform.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fracbq {
namespace {

// psi0 = (1 - e^-mu)/mu, psi1 = (mu - 1 + e^-mu)/mu^2: the exact linear
// interpolation weights of one Duhamel subinterval. Series branch avoids
// cancellation for small mu; psi0(0) = 1, psi1(0) = 1/2 is the trapezoid.
inline void phi_weights(double mu, double& psi0, double& psi1) {
    if (mu < 1e-4) {
        psi0 = 1.0 - mu / 2.0 + mu * mu / 6.0 - mu * mu * mu / 24.0;
        psi1 = 0.5 - mu / 6.0 + mu * mu / 24.0 - mu * mu * mu / 120.0;
    } else {
        const double em = std::exp(-mu);
        psi0 = (1.0 - em) / mu;
        psi1 = (mu - 1.0 + em) / (mu * mu);
    }
}

using SpectralSeries = std::vector<std::vector<std::complex<double>>>; // [time][mode]

SpectralSeries to_spectral(const ScalarTrajectory& tr) {
    SpectralSeries s(tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) s[i] = forward_transform(tr.snapshots[i]).modes;
    return s;
}

// In-place per-mode integration of the piecewise-linear source series.
void duhamel_series(const SpectralGrid& g, const std::vector<double>& times, SpectralSeries& s,
                    double alpha) {
    const std::size_t nt = times.size();
    const std::size_t nodes = g.node_count();
    parallel_for(nodes, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t m = lo; m < hi; ++m) {
            const double lambda = m == 0 ? 0.0 : std::pow(g.wavevector_sq(m), alpha / 2.0);
            std::complex<double> src_prev = s[0][m];
            std::complex<double> out = 0.0;
            s[0][m] = 0.0;
            for (std::size_t i = 1; i < nt; ++i) {
                const double dt = times[i] - times[i - 1];
                const double mu = lambda * dt;
                double psi0, psi1;
                phi_weights(mu, psi0, psi1);
                const std::complex<double> src_cur = s[i][m];
                out = std::exp(-mu) * out + dt * (src_prev * (psi0 - psi1) + src_cur * psi1);
                s[i][m] = out;
                src_prev = src_cur;
            }
        }
    });
}

ScalarTrajectory from_spectral(const SpectralGrid& g, const std::vector<double>& times,
                               const SpectralSeries& s) {
    ScalarTrajectory tr(g, times);
    for (std::size_t i = 0; i < s.size(); ++i) {
        Spectrum sp(g);
        sp.modes = s[i];
        tr.snapshots[i] = inverse_transform(sp);
    }
    return tr;
}

void add_state(double a, const BoussinesqState& x, BoussinesqState& y) {
    axpy(a, x.velocity, y.velocity);
    axpy(a, x.temperature, y.temperature);
}

BoussinesqState state_difference(const BoussinesqState& a, const BoussinesqState& b) {
    BoussinesqState d = a;
    add_state(-1.0, b, d);
    return d;
}

} // namespace

SpectralGrid solver_grid(const SolverConfig& cfg) {
    return make_grid(cfg.d, cfg.n, cfg.L);
}

std::vector<double> solver_times(const SolverConfig& cfg) {
    return make_time_grid(cfg.T, cfg.nt, cfg.time_grid);
}

double composite_norm(const BoussinesqState& state, const SolverConfig& cfg) {
    const IndexFamily fam =
        derived_indices(cfg.alpha, cfg.d, cfg.p, cfg.gamma, cfg.delta_force);
    const double e1 = parabolic_morrey_norm(state.velocity, fam.velocity.p, fam.vel_traj_q,
                                            cfg.alpha, cfg.norm_options);
    const double e2 = parabolic_morrey_norm(state.temperature, fam.temperature.p,
                                            fam.temp_traj_q, cfg.alpha, cfg.norm_options);
    return e1 + cfg.weight_c * e2;
}

ScalarTrajectory duhamel(const ScalarTrajectory& source, double alpha) {
    validate(source);
    SpectralSeries s = to_spectral(source);
    duhamel_series(source.grid, source.times, s, alpha);
    return from_spectral(source.grid, source.times, s);
}

VectorTrajectory duhamel(const VectorTrajectory& source, double alpha) {
    validate(source);
    VectorTrajectory out(source.grid, source.times);
    for (int c = 0; c < source.grid.dim(); ++c) {
        ScalarTrajectory comp(source.grid, source.times);
        for (std::size_t i = 0; i < source.size(); ++i) comp.snapshots[i] = source.snapshots[i][c];
        comp = duhamel(comp, alpha);
        for (std::size_t i = 0; i < source.size(); ++i) out.snapshots[i][c] = comp.snapshots[i];
    }
    return out;
}

BoussinesqState heat_flow_state(const VectorField& u0, const ScalarField& theta0,
                                const std::vector<double>& times, double alpha) {
    BoussinesqState st(u0.grid, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        st.velocity.snapshots[i] = heat_propagate(u0, times[i], alpha);
        st.temperature.snapshots[i] = heat_propagate(theta0, times[i], alpha);
    }
    return st;
}

BoussinesqState buoyancy_term(const ScalarTrajectory& temperature, double alpha) {
    const SpectralGrid& g = temperature.grid;
    const int d = g.dim();
    VectorTrajectory src(g, temperature.times);
    for (std::size_t i = 0; i < temperature.size(); ++i) {
        VectorSpectrum vs(g);
        vs[d - 1] = forward_transform(temperature.snapshots[i]);
        leray_project_inplace(vs);
        src.snapshots[i] = inverse_transform(vs);
    }
    BoussinesqState out(g, temperature.times);
    out.velocity = duhamel(src, alpha);
    return out;
}

BoussinesqState advection_term(const BoussinesqState& U, const BoussinesqState& V, double alpha,
                               double temp_sign) {
    const SpectralGrid& g = U.velocity.grid;
    VectorTrajectory vel_src(g, U.velocity.times);
    ScalarTrajectory temp_src(g, U.velocity.times);
    for (std::size_t i = 0; i < U.velocity.size(); ++i) {
        VectorField dv = tensor_divergence(U.velocity.snapshots[i], V.velocity.snapshots[i]);
        dv = leray_project(dv);
        scale(dv, -1.0);
        vel_src.snapshots[i] = dv;
        ScalarField ds =
            scalar_flux_divergence(U.temperature.snapshots[i], V.velocity.snapshots[i]);
        scale(ds, temp_sign);
        temp_src.snapshots[i] = ds;
    }
    BoussinesqState out(g, U.velocity.times);
    out.velocity = duhamel(vel_src, alpha);
    out.temperature = duhamel(temp_src, alpha);
    return out;
}

BoussinesqState force_term(const VectorTrajectory& f, const ScalarTrajectory& g_force,
                           double alpha) {
    VectorTrajectory proj(f.grid, f.times);
    for (std::size_t i = 0; i < f.size(); ++i)
        proj.snapshots[i] = leray_project(f.snapshots[i]);
    BoussinesqState out(f.grid, f.times);
    out.velocity = duhamel(proj, alpha);
    out.temperature = duhamel(g_force, alpha);
    return out;
}

namespace {

void check_data(const SolverConfig& cfg, const BoussinesqData& data, const SpectralGrid& g,
                const std::vector<double>& times) {
    if (data.u0.grid != g || data.theta0.grid != g)
        throw std::invalid_argument("picard_solve: initial data grid does not match config");
    if (data.force_u.times != times || data.force_theta.times != times)
        throw std::invalid_argument("picard_solve: force trajectories must use the solver time grid");
    if (data.force_u.grid != g || data.force_theta.grid != g)
        throw std::invalid_argument("picard_solve: force grid does not match config");
    (void)cfg;
}

} // namespace

PicardResult picard_solve(const SolverConfig& cfg, const BoussinesqData& data) {
    const SpectralGrid g = solver_grid(cfg);
    const std::vector<double> times = solver_times(cfg);
    check_data(cfg, data, g, times);

    const BoussinesqState u0_state = heat_flow_state(data.u0, data.theta0, times, cfg.alpha);
    const BoussinesqState f_state = force_term(data.force_u, data.force_theta, cfg.alpha);
    BoussinesqState base = u0_state;
    add_state(1.0, f_state, base);

    PicardResult res;
    res.diagnostics.initial_norm = composite_norm(u0_state, cfg);
    res.diagnostics.force_norm = composite_norm(f_state, cfg);
    res.diagnostics.delta = cfg.smallness_delta > 0.0
                                ? cfg.smallness_delta
                                : 2.0 * std::max(res.diagnostics.initial_norm,
                                                 res.diagnostics.force_norm);

    BoussinesqState U = base;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        BoussinesqState next = base;
        if (cfg.enable_buoyancy) add_state(1.0, buoyancy_term(U.temperature, cfg.alpha), next);
        if (cfg.enable_advection)
            add_state(1.0, advection_term(U, U, cfg.alpha, cfg.temperature_advection_sign), next);
        const double diff = composite_norm(state_difference(next, U), cfg);
        res.diagnostics.update_norms.push_back(diff);
        res.diagnostics.iterations = it;
        U = next;
        if (diff < cfg.tol) {
            res.diagnostics.converged = true;
            break;
        }
    }
    res.diagnostics.final_residual = res.diagnostics.update_norms.empty()
                                         ? 0.0
                                         : res.diagnostics.update_norms.back();
    for (std::size_t i = 1; i < res.diagnostics.update_norms.size(); ++i) {
        const double prev = res.diagnostics.update_norms[i - 1];
        if (prev > 0.0)
            res.diagnostics.contraction.push_back(res.diagnostics.update_norms[i] / prev);
    }
    res.diagnostics.solution_norm = composite_norm(U, cfg);
    res.diagnostics.within_ball =
        res.diagnostics.solution_norm <= 3.0 * res.diagnostics.delta * (1.0 + 1e-9);
    res.state = std::move(U);
    return res;
}

double fixed_point_residual(const BoussinesqState& state, const SolverConfig& cfg,
                            const BoussinesqData& data) {
    const SpectralGrid g = solver_grid(cfg);
    const std::vector<double> times = solver_times(cfg);
    check_data(cfg, data, g, times);

    BoussinesqState rhs = heat_flow_state(data.u0, data.theta0, times, cfg.alpha);
    add_state(1.0, force_term(data.force_u, data.force_theta, cfg.alpha), rhs);
    if (cfg.enable_buoyancy) add_state(1.0, buoyancy_term(state.temperature, cfg.alpha), rhs);
    if (cfg.enable_advection)
        add_state(1.0, advection_term(state, state, cfg.alpha, cfg.temperature_advection_sign),
                  rhs);
    return composite_norm(state_difference(state, rhs), cfg);
}

namespace {

// Spectral right-hand side of the differential form, stiff part excluded:
// velocity P(-div(u (x) u) + theta e_d + f), temperature sign div(theta u) + g.
struct EtdRhs {
    VectorSpectrum vel;
    Spectrum temp;
};

EtdRhs etd_nonlinearity(const SolverConfig& cfg, const VectorField& u, const ScalarField& theta,
                        const VectorField& f, const ScalarField& g_force) {
    const SpectralGrid& g = u.grid;
    const int d = g.dim();
    VectorField vel_rhs(g);
    if (cfg.enable_advection) {
        vel_rhs = tensor_divergence(u, u);
        scale(vel_rhs, -1.0);
    }
    axpy(1.0, f, vel_rhs);
    if (cfg.enable_buoyancy) axpy(1.0, theta, vel_rhs[d - 1]);

    EtdRhs rhs;
    rhs.vel = forward_transform(vel_rhs);
    leray_project_inplace(rhs.vel);

    ScalarField temp_rhs = g_force;
    if (cfg.enable_advection) {
        ScalarField flux = scalar_flux_divergence(theta, u);
        scale(flux, cfg.temperature_advection_sign);
        axpy(1.0, flux, temp_rhs);
    }
    rhs.temp = forward_transform(temp_rhs);
    return rhs;
}

} // namespace

BoussinesqState etd_reference_solve(const SolverConfig& cfg, const BoussinesqData& data) {
    const SpectralGrid g = solver_grid(cfg);
    const std::vector<double> times = solver_times(cfg);
    check_data(cfg, data, g, times);
    const int d = g.dim();
    const std::size_t nodes = g.node_count();
    const std::size_t nt = times.size();

    BoussinesqState out(g, times);
    VectorSpectrum u_hat = forward_transform(data.u0);
    Spectrum th_hat = forward_transform(data.theta0);
    out.velocity.snapshots[0] = data.u0;
    out.temperature.snapshots[0] = data.theta0;

    for (std::size_t i = 0; i + 1 < nt; ++i) {
        const double dt = times[i + 1] - times[i];
        const VectorField u_i = inverse_transform(u_hat);
        const ScalarField th_i = inverse_transform(th_hat);
        const EtdRhs n_i = etd_nonlinearity(cfg, u_i, th_i, data.force_u.snapshots[i],
                                            data.force_theta.snapshots[i]);

        // predictor: exact propagation plus psi0-weighted frozen source
        VectorSpectrum a_vel(g);
        Spectrum a_temp(g);
        for (std::size_t m = 0; m < nodes; ++m) {
            const double lambda = m == 0 ? 0.0 : std::pow(g.wavevector_sq(m), cfg.alpha / 2.0);
            const double mu = lambda * dt;
            double psi0, psi1;
            phi_weights(mu, psi0, psi1);
            const double em = std::exp(-mu);
            for (int c = 0; c < d; ++c)
                a_vel[c].modes[m] = em * u_hat[c].modes[m] + dt * psi0 * n_i.vel[c].modes[m];
            a_temp.modes[m] = em * th_hat.modes[m] + dt * psi0 * n_i.temp.modes[m];
        }

        // corrector evaluated at the predicted endpoint state
        const VectorField u_a = inverse_transform(a_vel);
        const ScalarField th_a = inverse_transform(a_temp);
        const EtdRhs n_a = etd_nonlinearity(cfg, u_a, th_a, data.force_u.snapshots[i + 1],
                                            data.force_theta.snapshots[i + 1]);
        for (std::size_t m = 0; m < nodes; ++m) {
            const double lambda = m == 0 ? 0.0 : std::pow(g.wavevector_sq(m), cfg.alpha / 2.0);
            const double mu = lambda * dt;
            double psi0, psi1;
            phi_weights(mu, psi0, psi1);
            for (int c = 0; c < d; ++c)
                u_hat[c].modes[m] = a_vel[c].modes[m] +
                                    dt * psi1 * (n_a.vel[c].modes[m] - n_i.vel[c].modes[m]);
            th_hat.modes[m] = a_temp.modes[m] + dt * psi1 * (n_a.temp.modes[m] - n_i.temp.modes[m]);
        }
        out.velocity.snapshots[i + 1] = inverse_transform(u_hat);
        out.temperature.snapshots[i + 1] = inverse_transform(th_hat);
    }
    return out;
}

namespace {

ScalarField random_bandlimited_field(const SpectralGrid& g, std::mt19937_64& rng,
                                     double amplitude) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ScalarField f(g);
    for (auto& v : f.samples) v = gauss(rng);
    Spectrum s = forward_transform(f);
    const int cut = std::max(2, g.n() / 6);
    const std::size_t count = g.node_count();
    for (std::size_t i = 0; i < count; ++i) {
        const auto idx = g.unflatten(i);
        for (int a = 0; a < g.dim(); ++a)
            if (std::abs(g.freq_index(idx[a])) > cut) {
                s.modes[i] = 0.0;
                break;
            }
    }
    f = inverse_transform(s);
    const double m = max_abs(f);
    if (m > 0.0) scale(f, amplitude / m);
    return f;
}

} // namespace

ConstantEstimate estimate_constants(const SolverConfig& cfg, unsigned seed, int probes,
                                    const std::vector<double>& weights) {
    if (probes < 2) throw std::invalid_argument("estimate_constants: need at least 2 probes");
    const SpectralGrid g = solver_grid(cfg);
    const std::vector<double> times = solver_times(cfg);
    const IndexFamily fam = derived_indices(cfg.alpha, cfg.d, cfg.p, cfg.gamma, cfg.delta_force);
    std::mt19937_64 rng(seed);

    struct Probe {
        BoussinesqState state;
        double vel_norm = 0.0;  // |u|_E1
        double temp_norm = 0.0; // |theta|_E2
        double lin_out = 0.0;   // |L(U).velocity|_E1
    };
    std::vector<Probe> pool;
    pool.reserve(static_cast<std::size_t>(probes));
    for (int i = 0; i < probes; ++i) {
        Probe pb;
        pb.state = BoussinesqState(g, times);
        const bool theta_only = i % 2 == 0;
        ScalarField th0 = random_bandlimited_field(g, rng, 1e-3);
        pb.state.temperature = heat_flow_state(VectorField(g), th0, times, cfg.alpha).temperature;
        if (!theta_only) {
            VectorField u0(g);
            for (int c = 0; c < g.dim(); ++c) u0[c] = random_bandlimited_field(g, rng, 1e-3);
            u0 = leray_project(u0);
            pb.state.velocity = heat_flow_state(u0, ScalarField(g), times, cfg.alpha).velocity;
        }
        pb.vel_norm = parabolic_morrey_norm(pb.state.velocity, fam.velocity.p, fam.vel_traj_q,
                                            cfg.alpha, cfg.norm_options);
        pb.temp_norm = parabolic_morrey_norm(pb.state.temperature, fam.temperature.p,
                                             fam.temp_traj_q, cfg.alpha, cfg.norm_options);
        const BoussinesqState lin = buoyancy_term(pb.state.temperature, cfg.alpha);
        pb.lin_out = parabolic_morrey_norm(lin.velocity, fam.velocity.p, fam.vel_traj_q, cfg.alpha,
                                           cfg.norm_options);
        pool.push_back(std::move(pb));
    }

    struct PairOut {
        std::size_t i = 0, j = 0;
        double vel = 0.0, temp = 0.0;
    };
    std::vector<PairOut> pairs;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t step : {static_cast<std::size_t>(0), static_cast<std::size_t>(1)}) {
            PairOut po;
            po.i = i;
            po.j = (i + step) % pool.size();
            const BoussinesqState b = advection_term(pool[po.i].state, pool[po.j].state, cfg.alpha,
                                                     cfg.temperature_advection_sign);
            po.vel = parabolic_morrey_norm(b.velocity, fam.velocity.p, fam.vel_traj_q, cfg.alpha,
                                           cfg.norm_options);
            po.temp = parabolic_morrey_norm(b.temperature, fam.temperature.p, fam.temp_traj_q,
                                            cfg.alpha, cfg.norm_options);
            pairs.push_back(po);
        }
    }

    ConstantEstimate est;
    est.weights = weights;
    auto linear_at = [&](double w) {
        double best = 0.0;
        for (const auto& pb : pool) {
            const double denom = pb.vel_norm + w * pb.temp_norm;
            if (denom > 0.0) best = std::max(best, pb.lin_out / denom);
        }
        return best;
    };
    auto bilinear_at = [&](double w) {
        double best = 0.0;
        for (const auto& po : pairs) {
            const double di = pool[po.i].vel_norm + w * pool[po.i].temp_norm;
            const double dj = pool[po.j].vel_norm + w * pool[po.j].temp_norm;
            if (di > 0.0 && dj > 0.0)
                best = std::max(best, (po.vel + w * po.temp) / (di * dj));
        }
        return best;
    };
    for (double w : weights) {
        est.linear_by_weight.push_back(linear_at(w));
        est.bilinear_by_weight.push_back(bilinear_at(w));
    }
    est.linear_constant = linear_at(cfg.weight_c);
    est.bilinear_constant = bilinear_at(cfg.weight_c);
    return est;
}

} // namespace fracbq
