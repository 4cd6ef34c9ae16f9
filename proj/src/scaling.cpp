#include "fracbq/scaling.hpp"

#include "fracbq/indices.hpp"
#include "fracbq/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace fracbq {
namespace {

void check_lambda(double lambda) {
    if (lambda != 1.0 && lambda != 2.0 && lambda != 0.5)
        throw std::invalid_argument("rescale: dilation factor must be 1, 2, or 1/2 to stay on the lattice");
}

constexpr double kTiny = 1e-300;

double rel_dev(double before, double after) {
    const double ref = std::max(std::abs(before), std::abs(after));
    if (ref < kTiny) return 0.0;
    return std::abs(after - before) / ref;
}

void add_item(ScalingReport& rep, const std::string& name, double before, double after,
              double tol, double deviation = -1.0) {
    ScalingItem it;
    it.name = name;
    it.before = before;
    it.after = after;
    it.deviation = deviation >= 0.0 ? deviation : rel_dev(before, after);
    it.ok = it.deviation <= tol;
    rep.items.push_back(it);
    rep.max_deviation = std::max(rep.max_deviation, it.deviation);
    rep.all_ok = rep.all_ok && it.ok;
}

} // namespace

ScalarField rescale_field(const ScalarField& f, double lambda, double amplitude_exponent) {
    check_lambda(lambda);
    ScalarField out(make_grid(f.grid.dim(), f.grid.n(), f.grid.side() / lambda));
    const double amp = std::pow(lambda, amplitude_exponent);
    for (std::size_t i = 0; i < f.samples.size(); ++i) out.samples[i] = amp * f.samples[i];
    return out;
}

VectorField rescale_field(const VectorField& f, double lambda, double amplitude_exponent) {
    check_lambda(lambda);
    VectorField out(make_grid(f.grid.dim(), f.grid.n(), f.grid.side() / lambda));
    for (std::size_t c = 0; c < f.components.size(); ++c)
        out.components[c] = rescale_field(f.components[c], lambda, amplitude_exponent);
    return out;
}

ScalarTrajectory rescale_trajectory(const ScalarTrajectory& tr, double lambda, double alpha,
                                    double amplitude_exponent) {
    check_lambda(lambda);
    const double tfac = std::pow(lambda, -alpha);
    std::vector<double> times(tr.times.size());
    for (std::size_t i = 0; i < times.size(); ++i) times[i] = tr.times[i] * tfac;
    ScalarTrajectory out(make_grid(tr.grid.dim(), tr.grid.n(), tr.grid.side() / lambda), times);
    for (std::size_t i = 0; i < tr.size(); ++i)
        out.snapshots[i] = rescale_field(tr.snapshots[i], lambda, amplitude_exponent);
    return out;
}

VectorTrajectory rescale_trajectory(const VectorTrajectory& tr, double lambda, double alpha,
                                    double amplitude_exponent) {
    check_lambda(lambda);
    const double tfac = std::pow(lambda, -alpha);
    std::vector<double> times(tr.times.size());
    for (std::size_t i = 0; i < times.size(); ++i) times[i] = tr.times[i] * tfac;
    VectorTrajectory out(make_grid(tr.grid.dim(), tr.grid.n(), tr.grid.side() / lambda), times);
    for (std::size_t i = 0; i < tr.size(); ++i)
        out.snapshots[i] = rescale_field(tr.snapshots[i], lambda, amplitude_exponent);
    return out;
}

BoussinesqState rescale_state(const BoussinesqState& state, double lambda, double alpha) {
    BoussinesqState out;
    out.velocity = rescale_trajectory(state.velocity, lambda, alpha, alpha - 1.0);
    out.temperature = rescale_trajectory(state.temperature, lambda, alpha, 2.0 * alpha - 1.0);
    return out;
}

BoussinesqData rescale_data(const BoussinesqData& data, double lambda, double alpha) {
    BoussinesqData out;
    out.u0 = rescale_field(data.u0, lambda, alpha - 1.0);
    out.theta0 = rescale_field(data.theta0, lambda, 2.0 * alpha - 1.0);
    out.force_u = rescale_trajectory(data.force_u, lambda, alpha, 2.0 * alpha - 1.0);
    out.force_theta = rescale_trajectory(data.force_theta, lambda, alpha, 3.0 * alpha - 1.0);
    return out;
}

ScalingReport check_solution_covariance(const SolverConfig& cfg, const BoussinesqData& data,
                                        double lambda) {
    check_lambda(lambda);
    ScalingReport rep;
    rep.lambda = lambda;

    const PicardResult original = picard_solve(cfg, data);
    if (!original.diagnostics.converged)
        throw std::runtime_error("check_solution_covariance: original solve did not converge");

    SolverConfig cfg2 = cfg;
    cfg2.L = cfg.L / lambda;
    cfg2.T = cfg.T * std::pow(lambda, -cfg.alpha);
    const BoussinesqData data2 = rescale_data(data, lambda, cfg.alpha);
    const PicardResult contracted = picard_solve(cfg2, data2);
    if (!contracted.diagnostics.converged)
        throw std::runtime_error("check_solution_covariance: rescaled solve did not converge");

    const BoussinesqState mapped = rescale_state(original.state, lambda, cfg.alpha);

    // sup deviations, relative to the mapped solution's own amplitude
    double vel_ref = max_abs(mapped.velocity);
    double temp_ref = max_abs(mapped.temperature);
    BoussinesqState diff = mapped;
    axpy(-1.0, contracted.state.velocity, diff.velocity);
    axpy(-1.0, contracted.state.temperature, diff.temperature);
    const double vel_dev = vel_ref < kTiny ? 0.0 : max_abs(diff.velocity) / vel_ref;
    const double temp_dev = temp_ref < kTiny ? 0.0 : max_abs(diff.temperature) / temp_ref;
    add_item(rep, "velocity-sup", vel_ref, max_abs(contracted.state.velocity), 1e-3, vel_dev);
    add_item(rep, "temperature-sup", temp_ref, max_abs(contracted.state.temperature), 1e-3,
             temp_dev);

    const double norm_mapped = composite_norm(mapped, cfg2);
    const double norm_direct = composite_norm(contracted.state, cfg2);
    const double norm_diff = composite_norm(diff, cfg2);
    add_item(rep, "composite-norm", norm_mapped, norm_direct, 1e-3,
             norm_mapped < kTiny ? 0.0 : norm_diff / norm_mapped);
    return rep;
}

namespace {

template <typename FieldT>
BasicTrajectory<FieldT> heat_extension(const FieldT& f, double T, int nt, double alpha) {
    const std::vector<double> times = make_time_grid(T, nt, TimeGridKind::LogGraded);
    BasicTrajectory<FieldT> tr(f.grid, times);
    for (std::size_t i = 0; i < times.size(); ++i)
        tr.snapshots[i] = heat_propagate(f, times[i], alpha);
    return tr;
}

constexpr double kExtensionT = 4.0;
constexpr int kExtensionNt = 48;

} // namespace

ScalingReport check_norm_criticality(const SolverConfig& cfg, const BoussinesqData& data,
                                     const BoussinesqState& state, double lambda) {
    check_lambda(lambda);
    const double alpha = cfg.alpha;
    const IndexFamily fam = derived_indices(alpha, cfg.d, cfg.p, cfg.gamma, cfg.delta_force);
    const double tol = 0.03;

    ScalingReport rep;
    rep.lambda = lambda;

    const BoussinesqData rdata = rescale_data(data, lambda, alpha);
    const BoussinesqState rstate = rescale_state(state, lambda, alpha);

    // initial data in the time-integrated heat-flow Morrey norms
    const double su = -alpha / fam.velocity.p;
    add_item(rep, "initial-velocity-tlm",
             tlm_norm(data.u0, su, fam.velocity.p, fam.velocity.q, alpha).value,
             tlm_norm(rdata.u0, su, fam.velocity.p, fam.velocity.q, alpha).value, tol);
    const double st = -alpha / fam.temperature.p;
    add_item(rep, "initial-temperature-tlm",
             tlm_norm(data.theta0, st, fam.temperature.p, fam.temperature.q, alpha).value,
             tlm_norm(rdata.theta0, st, fam.temperature.p, fam.temperature.q, alpha).value, tol);

    // forces in the negative-order smoothed space-time norms
    add_item(rep, "velocity-force-sobolev-morrey",
             sobolev_morrey_norm(data.force_u, cfg.gamma, fam.force_u.p, fam.force_u.q, alpha,
                                 cfg.norm_options),
             sobolev_morrey_norm(rdata.force_u, cfg.gamma, fam.force_u.p, fam.force_u.q, alpha,
                                 cfg.norm_options),
             tol);
    add_item(rep, "temperature-force-sobolev-morrey",
             sobolev_morrey_norm(data.force_theta, cfg.delta_force, fam.force_theta.p,
                                 fam.force_theta.q, alpha, cfg.norm_options),
             sobolev_morrey_norm(rdata.force_theta, cfg.delta_force, fam.force_theta.p,
                                 fam.force_theta.q, alpha, cfg.norm_options),
             tol);

    // solution pair in the resolution norms
    add_item(rep, "solution-velocity-parabolic-morrey",
             parabolic_morrey_norm(state.velocity, fam.velocity.p, fam.vel_traj_q, alpha,
                                   cfg.norm_options),
             parabolic_morrey_norm(rstate.velocity, fam.velocity.p, fam.vel_traj_q, alpha,
                                   cfg.norm_options),
             tol);
    add_item(rep, "solution-temperature-parabolic-morrey",
             parabolic_morrey_norm(state.temperature, fam.temperature.p, fam.temp_traj_q, alpha,
                                   cfg.norm_options),
             parabolic_morrey_norm(rstate.temperature, fam.temperature.p, fam.temp_traj_q, alpha,
                                   cfg.norm_options),
             tol);

    // heat extensions of the initial data in the same resolution norms; the
    // extension horizon contracts with the dilation so the trajectories match
    const double tfac = std::pow(lambda, -alpha);
    add_item(rep, "initial-velocity-heat-extension",
             parabolic_morrey_norm(heat_extension(data.u0, kExtensionT, kExtensionNt, alpha),
                                   fam.velocity.p, fam.vel_traj_q, alpha, cfg.norm_options),
             parabolic_morrey_norm(
                 heat_extension(rdata.u0, kExtensionT * tfac, kExtensionNt, alpha),
                 fam.velocity.p, fam.vel_traj_q, alpha, cfg.norm_options),
             tol);
    add_item(rep, "initial-temperature-heat-extension",
             parabolic_morrey_norm(heat_extension(data.theta0, kExtensionT, kExtensionNt, alpha),
                                   fam.temperature.p, fam.temp_traj_q, alpha, cfg.norm_options),
             parabolic_morrey_norm(
                 heat_extension(rdata.theta0, kExtensionT * tfac, kExtensionNt, alpha),
                 fam.temperature.p, fam.temp_traj_q, alpha, cfg.norm_options),
             tol);
    return rep;
}

namespace {

void require_mean_free(const ScalarField& f, const char* where) {
    const double scale = max_abs(f);
    if (std::abs(mean(f)) > 1e-12 * std::max(scale, kTiny))
        throw std::invalid_argument(std::string(where) + ": field must be mean-free");
}

} // namespace

EquivalenceStats check_norm_equivalence(const std::vector<ScalarField>& family, double alpha,
                                        double p, double q, const SupOptions& opts) {
    if (family.empty()) throw std::invalid_argument("check_norm_equivalence: empty family");
    const int d = family.front().grid.dim();
    if (!(p > alpha * q / (d + alpha)))
        throw std::invalid_argument("check_norm_equivalence: need p > alpha q/(d + alpha)");
    const double inv_qsp = ((d + alpha) / q - alpha / p) / d;
    if (!(inv_qsp > 0.0) || 1.0 / inv_qsp < p)
        throw std::invalid_argument("check_norm_equivalence: derived spatial index out of range");
    const double q_sp = 1.0 / inv_qsp;

    TlmOptions topts;
    topts.morrey.space_centers_per_axis = opts.space_centers_per_axis;
    topts.morrey.measure_normalized = opts.measure_normalized;

    EquivalenceStats st;
    st.all_finite = true;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const ScalarField& f = family[i];
        require_mean_free(f, "check_norm_equivalence");
        EquivalenceRow row;
        row.id = static_cast<int>(i);
        row.tlm = tlm_norm(f, -alpha / p, p, q_sp, alpha, topts).value;
        row.pm = parabolic_morrey_norm(heat_extension(f, 16.0, 64, alpha), p, q, alpha, opts);
        if (row.tlm <= 0.0 || row.pm <= 0.0 || !std::isfinite(row.tlm) || !std::isfinite(row.pm)) {
            st.all_finite = false;
            st.rows.push_back(row);
            continue;
        }
        row.ratio = row.tlm / row.pm;
        st.rows.push_back(row);
    }
    bool first = true;
    st.one_sided_ok = st.all_finite;
    for (const auto& row : st.rows) {
        if (row.ratio <= 0.0) continue;
        if (first) {
            st.ratio_min = st.ratio_max = row.ratio;
            first = false;
        } else {
            st.ratio_min = std::min(st.ratio_min, row.ratio);
            st.ratio_max = std::max(st.ratio_max, row.ratio);
        }
        st.worst_one_sided = std::max(st.worst_one_sided, row.pm / row.tlm);
    }
    if (st.worst_one_sided > 1.05) st.one_sided_ok = false;
    if (st.ratio_min > 0.0) st.spread = st.ratio_max / st.ratio_min;
    return st;
}

double check_besov_embedding(const ScalarField& f, double beta, double alpha, double p,
                            const SupOptions& opts) {
    if (!(beta > 0.0)) throw std::invalid_argument("check_besov_embedding: beta must be positive");
    if (!(p >= 1.0 && p < alpha / beta))
        throw std::invalid_argument("check_besov_embedding: need 1 <= p < alpha/beta");
    const int d = f.grid.dim();
    const double q = (d + alpha) / beta;
    if (p > q) throw std::invalid_argument("check_besov_embedding: need p <= q");
    require_mean_free(f, "check_besov_embedding");
    const double besov = thermic_besov_norm(f, beta, alpha);
    if (besov <= 0.0) throw std::invalid_argument("check_besov_embedding: degenerate input");
    const double pm = parabolic_morrey_norm(heat_extension(f, 16.0, 64, alpha), p, q, alpha, opts);
    return pm / besov;
}

double check_besov_maximality(const ScalarField& f, double alpha, double q,
                             const SupOptions& opts) {
    if (!(q > 1.0)) throw std::invalid_argument("check_besov_maximality: need q > 1");
    const int d = f.grid.dim();
    const double beta = (d + alpha) / q;
    require_mean_free(f, "check_besov_maximality");
    SupOptions box = opts;
    box.variant = RegionVariant::Box;
    const double pm =
        parabolic_morrey_norm(heat_extension(f, 16.0, 64, alpha), 1.0, q, alpha, box);
    if (pm <= 0.0) throw std::invalid_argument("check_besov_maximality: degenerate input");
    const double besov = thermic_besov_norm(f, beta, alpha);
    return besov / pm;
}

} // namespace fracbq
