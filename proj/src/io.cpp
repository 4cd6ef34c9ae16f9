#include "fracbq/io.hpp"

#include "fracbq/trajectory.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fracbq {
namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(b, 4);
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    os.write(b, 8);
}

std::uint32_t get_u32(std::istream& is) {
    char b[4];
    is.read(b, 4);
    if (!is) throw std::invalid_argument("fbf1: truncated header");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
}

double get_f64(std::istream& is) {
    char b[8];
    is.read(b, 8);
    if (!is) throw std::invalid_argument("fbf1: truncated data");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

void write_header(std::ostream& os, const SpectralGrid& g) {
    os.write("FBF1", 4);
    put_u32(os, static_cast<std::uint32_t>(g.dim()));
    for (int a = 0; a < g.dim(); ++a) put_u32(os, static_cast<std::uint32_t>(g.n()));
    put_f64(os, g.side());
}

SpectralGrid read_header(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "FBF1", 4) != 0)
        throw std::invalid_argument("fbf1: bad magic");
    const std::uint32_t d = get_u32(is);
    if (d < 1 || d > 3) throw std::invalid_argument("fbf1: dimension out of range");
    std::uint32_t n0 = 0;
    for (std::uint32_t a = 0; a < d; ++a) {
        const std::uint32_t na = get_u32(is);
        if (a == 0) n0 = na;
        else if (na != n0) throw std::invalid_argument("fbf1: grids must be cubic");
    }
    const double L = get_f64(is);
    return make_grid(static_cast<int>(d), static_cast<int>(n0), L);
}

} // namespace

void write_fbf1(const std::string& path, const ScalarField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("fbf1: cannot open " + path + " for writing");
    write_header(os, f.grid);
    for (double v : f.samples) put_f64(os, v);
    if (!os) throw std::runtime_error("fbf1: write failed for " + path);
}

void write_fbf1(const std::string& path, const VectorField& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("fbf1: cannot open " + path + " for writing");
    write_header(os, f.grid);
    for (const auto& c : f.components)
        for (double v : c.samples) put_f64(os, v);
    if (!os) throw std::runtime_error("fbf1: write failed for " + path);
}

ScalarField read_scalar_fbf1(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("fbf1: cannot open " + path);
    ScalarField f(read_header(is));
    for (auto& v : f.samples) v = get_f64(is);
    is.peek();
    if (!is.eof()) throw std::invalid_argument("fbf1: trailing data, not a scalar field");
    return f;
}

VectorField read_vector_fbf1(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("fbf1: cannot open " + path);
    VectorField f(read_header(is));
    for (auto& c : f.components)
        for (auto& v : c.samples) v = get_f64(is);
    is.peek();
    if (!is.eof()) throw std::invalid_argument("fbf1: trailing data, component count mismatch");
    return f;
}

namespace {

using nlohmann::json;

} // namespace

SolverConfig parse_config_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    SolverConfig cfg;
    try {
        cfg.alpha = j.value("alpha", cfg.alpha);
        cfg.d = j.value("d", cfg.d);
        cfg.n = j.value("n", cfg.n);
        cfg.L = j.value("L", cfg.L);
        cfg.T = j.value("T", cfg.T);
        cfg.nt = j.value("nt", cfg.nt);
        cfg.p = j.value("p", cfg.p);
        cfg.gamma = j.value("gamma", cfg.gamma);
        cfg.delta_force = j.value("delta_force", cfg.delta_force);
        cfg.weight_c = j.value("weight_c", cfg.weight_c);
        cfg.smallness_delta = j.value("smallness_delta", cfg.smallness_delta);
        cfg.tol = j.value("tol", cfg.tol);
        cfg.max_iter = j.value("max_iter", cfg.max_iter);
        cfg.temperature_advection_sign =
            j.value("temperature_advection_sign", cfg.temperature_advection_sign);
        cfg.enable_buoyancy = j.value("enable_buoyancy", cfg.enable_buoyancy);
        cfg.enable_advection = j.value("enable_advection", cfg.enable_advection);
        if (j.contains("time_grid")) {
            const std::string tg = j.at("time_grid").get<std::string>();
            if (tg == "uniform") cfg.time_grid = TimeGridKind::Uniform;
            else if (tg == "log-graded") cfg.time_grid = TimeGridKind::LogGraded;
            else throw std::invalid_argument("config: time_grid must be \"uniform\" or \"log-graded\"");
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: bad field type: ") + e.what());
    }
    return cfg;
}

SolverConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config_json(ss.str());
}

std::string config_to_json(const SolverConfig& cfg) {
    json j;
    j["alpha"] = cfg.alpha;
    j["d"] = cfg.d;
    j["n"] = cfg.n;
    j["L"] = cfg.L;
    j["T"] = cfg.T;
    j["nt"] = cfg.nt;
    j["p"] = cfg.p;
    j["gamma"] = cfg.gamma;
    j["delta_force"] = cfg.delta_force;
    j["weight_c"] = cfg.weight_c;
    j["smallness_delta"] = cfg.smallness_delta;
    j["tol"] = cfg.tol;
    j["max_iter"] = cfg.max_iter;
    j["time_grid"] = cfg.time_grid == TimeGridKind::Uniform ? "uniform" : "log-graded";
    j["temperature_advection_sign"] = cfg.temperature_advection_sign;
    j["enable_buoyancy"] = cfg.enable_buoyancy;
    j["enable_advection"] = cfg.enable_advection;
    return j.dump(2);
}

std::string diagnostics_to_json(const PicardDiagnostics& diag, const SolverConfig& cfg) {
    json j;
    j["config"] = json::parse(config_to_json(cfg));
    json d;
    d["converged"] = diag.converged;
    d["iterations"] = diag.iterations;
    d["update_norms"] = diag.update_norms;
    d["contraction"] = diag.contraction;
    d["final_residual"] = diag.final_residual;
    d["initial_norm"] = diag.initial_norm;
    d["force_norm"] = diag.force_norm;
    d["solution_norm"] = diag.solution_norm;
    d["delta"] = diag.delta;
    d["within_ball"] = diag.within_ball;
    j["diagnostics"] = d;
    return j.dump(2);
}

std::string norm_report_to_json(const NormReport& report) {
    json j;
    j["norm_name"] = report.norm_name;
    j["params"] = report.params;
    j["value"] = report.value;
    j["refinement_gap"] = report.refinement_gap;
    j["tail_bound"] = report.tail_bound;
    return j.dump(2);
}

std::string scaling_report_to_json(const ScalingReport& report) {
    json j;
    j["lambda"] = report.lambda;
    json items = json::array();
    for (const auto& it : report.items) {
        json e;
        e["name"] = it.name;
        e["before"] = it.before;
        e["after"] = it.after;
        e["deviation"] = it.deviation;
        e["ok"] = it.ok;
        items.push_back(e);
    }
    j["items"] = items;
    j["max_deviation"] = report.max_deviation;
    j["all_ok"] = report.all_ok;
    return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << text;
    if (!text.empty() && text.back() != '\n') os << '\n';
}

void write_residual_csv(const std::string& path, const std::vector<double>& update_norms) {
    std::ostringstream ss;
    ss << "iteration,update_norm\n";
    ss.precision(17);
    for (std::size_t i = 0; i < update_norms.size(); ++i)
        ss << (i + 1) << ',' << update_norms[i] << '\n';
    write_text_file(path, ss.str());
}

void write_equivalence_csv(const std::string& path, const EquivalenceStats& stats) {
    std::ostringstream ss;
    ss << "id,tlm_norm,parabolic_morrey_norm,ratio\n";
    ss.precision(17);
    for (const auto& row : stats.rows)
        ss << row.id << ',' << row.tlm << ',' << row.pm << ',' << row.ratio << '\n';
    write_text_file(path, ss.str());
}

} // namespace fracbq
