#include "bekk/covariance.hpp"
#include "bekk/error.hpp"
#include "bekk/extremes.hpp"
#include "bekk/io.hpp"
#include "bekk/model.hpp"
#include "bekk/random.hpp"
#include "bekk/simulate.hpp"
#include "bekk/stationarity.hpp"
#include "bekk/tails.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace bekk;

namespace {

constexpr int kUsageExit = 2;
constexpr int kInternalExit = 1;

struct Common {
    std::string spec_path;
    std::string path_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
};

std::uint64_t resolve_seed(const Common& c) {
    if (c.seed) return *c.seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

json header(std::uint64_t seed, const std::string& digest) {
    return {{"tool_version", kToolVersion}, {"seed", seed}, {"spec_digest", digest}};
}

json header_for(const ModelSpec& spec, std::uint64_t seed) { return header(seed, spec_digest(spec)); }

void emit(const Common& c, const std::string& text) {
    if (c.out.empty() || c.out == "-")
        std::cout << text;
    else
        write_file_atomic(c.out, text);
}

void emit_json(const Common& c, const json& j) { emit(c, j.dump(2) + "\n"); }

std::string fmt(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

json labels_json(const ParamClass& pc) {
    json labels = json::array();
    json details = json::object();
    for (ParamLabel l : pc.labels) labels.push_back(to_string(l));
    for (const auto& [l, text] : pc.details) details[to_string(l)] = text;
    return {{"labels", labels}, {"details", details}};
}

PathSample require_path(const Common& c) {
    if (c.path_path.empty()) throw Error(ErrorCode::Io, "--path is required");
    return load_path(c.path_path);
}

ModelSpec require_spec(const Common& c) {
    if (c.spec_path.empty()) throw Error(ErrorCode::Io, "--spec is required");
    return load_spec(c.spec_path);
}

// simulate

struct SimulateArgs {
    std::size_t T = 10000;
    std::size_t burnin = kDefaultBurnin;
    std::string form = "sre";
};

void run_simulate(const Common& c, const SimulateArgs& a) {
    if (c.out.empty() || c.out == "-") throw Error(ErrorCode::Io, "simulate needs --out for the CSV file");
    const ModelSpec spec = require_spec(c);
    const std::uint64_t seed = resolve_seed(c);
    const PathSample path =
        a.form == "h" ? simulate_h_form(spec, a.T, a.burnin, seed) : simulate_sre(spec, a.T, a.burnin, seed);
    write_file_atomic(c.out, path_to_csv(path));
    json meta = path_metadata(path);
    meta["form"] = a.form;
    write_file_atomic(sidecar_path(c.out), meta.dump(2) + "\n");
}

// check-stationarity

struct StationarityArgs {
    std::size_t steps = kLyapunovDefaultSteps;
    std::size_t reps = kLyapunovDefaultReps;
    unsigned max_moment = 2;
    std::size_t mc_samples = 100000;
};

void run_stationarity(const Common& c, const StationarityArgs& a) {
    const ModelSpec spec = require_spec(c);
    const std::uint64_t seed = resolve_seed(c);
    const StationarityReport r = check_stationarity(spec, a.steps, a.reps, seed, a.max_moment, a.mc_samples);
    json j = header_for(spec, seed);
    j["lyapunov"] = {{"estimate", r.lyapunov.estimate},
                     {"std_error", r.lyapunov.std_error},
                     {"n_steps", r.lyapunov.n_steps},
                     {"n_reps", r.lyapunov.n_reps},
                     {"negative", r.lyapunov.estimate < 0.0}};
    if (r.gate)
        j["gate_l1"] = {{"rho", r.gate->rho}, {"threshold", r.gate->threshold}, {"pass", r.gate->pass}};
    else
        j["gate_l1"] = nullptr;
    json moments = json::object();
    for (const auto& [n, m] : r.moments)
        moments[std::to_string(n)] = {{"rho", m.rho}, {"pass", m.pass}, {"exact", m.exact}};
    j["moments"] = moments;
    emit_json(c, j);
}

// tail-index

struct TailArgs {
    bool goldie = false;
    std::size_t goldie_T = 1000000;
    std::size_t goldie_reps = 20;
    std::vector<std::size_t> k;
};

void run_tail_index(const Common& c, const TailArgs& a) {
    if (c.spec_path.empty() && c.path_path.empty()) throw Error(ErrorCode::Io, "tail-index needs --spec or --path");
    const std::uint64_t seed = resolve_seed(c);
    json j;
    if (!c.spec_path.empty()) {
        const ModelSpec spec = load_spec(c.spec_path);
        j = header_for(spec, seed);
        const TailProfile profile = tail_profile(spec);
        j["class"] = labels_json(profile.param_class);
        j["alpha"] = profile.alpha;
        if (a.goldie) {
            json consts = json::array();
            for (std::size_t i = 0; i < spec.d; ++i) {
                const GoldieEstimate g =
                    goldie_constant_mc(spec, i, profile.alpha[i], a.goldie_T, a.goldie_reps, mix64(seed) ^ mix64(i + 1));
                consts.push_back({{"estimate", g.value.estimate},
                                  {"std_error", g.value.std_error},
                                  {"numerator", g.numerator},
                                  {"denominator", g.denominator},
                                  {"burnin_sensitive", g.burnin_sensitive}});
            }
            j["goldie_constant"] = consts;
        }
    }
    if (!c.path_path.empty()) {
        const PathSample path = load_path(c.path_path);
        if (c.spec_path.empty()) j = header(path.seed, path.spec_digest);
        const std::vector<std::size_t> grid = a.k.empty() ? default_k_grid(path.T) : a.k;
        json hill = json::array();
        for (std::size_t i = 0; i < path.d; ++i) {
            const auto col = path.column(i);
            const HillPlateau hp = hill_plateau(col, grid);
            hill.push_back({{"marginal", i + 1}, {"k", hp.k}, {"alpha", hp.alpha}, {"plateau", hp.plateau}});
        }
        j["hill"] = hill;
        j["path"] = {{"T", path.T}, {"seed", path.seed}, {"spec_digest", path.spec_digest}};
    }
    emit_json(c, j);
}

// spectral-measure

struct SpectralArgs {
    std::vector<std::size_t> k{100, 200, 300, 400, 500};
    std::size_t grid = 100;
};

void run_spectral(const Common& c, const SpectralArgs& a) {
    const PathSample path = require_path(c);
    const auto theta = angle_grid(a.grid);
    const SpectralEstimate est = spectral_measure(path, a.k, theta);
    json meta = header(path.seed, path.spec_digest);
    meta["T"] = path.T;
    meta["k"] = est.k;
    meta["grid_points"] = theta.size();
    meta["angle_unit"] = "radian";
    if (c.format == "csv") {
        std::ostringstream os;
        os << "theta,k,phi\n";
        for (std::size_t j = 0; j < est.k.size(); ++j)
            for (std::size_t g = 0; g < theta.size(); ++g)
                os << fmt(theta[g], 12) << ',' << est.k[j] << ',' << fmt(est.phi[j][g], 12) << '\n';
        emit(c, os.str());
        if (!c.out.empty() && c.out != "-") write_file_atomic(sidecar_path(c.out), meta.dump(2) + "\n");
        return;
    }
    meta["theta"] = est.theta;
    meta["phi"] = est.phi;
    emit_json(c, meta);
}

// extremal-index

struct ExtremalArgs {
    std::optional<std::size_t> marginal;
    std::optional<std::size_t> K;
    std::size_t reps = 200000;
    std::size_t T = 1000000;
    std::size_t burnin = kDefaultBurnin;
    double quantile = 0.999;
    std::size_t block = 50;
    std::size_t gap = 20;
};

void run_extremal(const Common& c, const ExtremalArgs& a) {
    const ModelSpec spec = require_spec(c);
    if (!is_diagonal(spec))
        throw Error(ErrorCode::Inapplicable, "extremal-index formula requires a Diagonal spec (l = 1, diagonal A, no A0)");
    const std::uint64_t seed = resolve_seed(c);
    const TailProfile profile = tail_profile(spec);
    const PathSample path = c.path_path.empty() ? simulate_sre(spec, a.T, a.burnin, mix64(seed)) : load_path(c.path_path);
    if (path.d != spec.d) throw Error(ErrorCode::DimensionMismatch, "path and spec dimensions differ");
    if (path.diverged) throw Error(ErrorCode::Numerical, "path diverged");

    json j = header_for(spec, seed);
    j["label"] = "conjecture-conditional";
    j["note"] = "theta_i is meaningful under the conjectured vector-scaling regular variation of the Diagonal model";
    j["blocks_settings"] = {{"quantile", a.quantile}, {"block_length", a.block}, {"T", path.T}};
    json out = json::array();
    std::vector<std::size_t> marginals;
    if (a.marginal) {
        if (*a.marginal < 1 || *a.marginal > spec.d) throw Error(ErrorCode::DimensionMismatch, "--marginal out of range");
        marginals.push_back(*a.marginal - 1);
    } else {
        for (std::size_t i = 0; i < spec.d; ++i) marginals.push_back(i);
    }
    for (std::size_t i : marginals) {
        const double aii = spec.A[0](i, i);
        const std::size_t K = a.K.value_or(default_extremal_horizon(aii));
        const McEstimate mc = extremal_index_mc(spec, i, profile.alpha[i], K, a.reps, mix64(seed) ^ mix64(i + 1));
        const auto col = path.column(i);
        const double blocks = extremal_index_blocks(col, a.quantile, a.block);
        const double mean_size = mean_cluster_size(cluster_sizes(col, a.quantile, a.gap));
        out.push_back({{"marginal", i + 1},
                       {"alpha", profile.alpha[i]},
                       {"mc", {{"estimate", mc.estimate}, {"std_error", mc.std_error}, {"K", K}, {"reps", a.reps}}},
                       {"blocks", blocks},
                       {"mean_cluster_size", mean_size}});
    }
    j["marginals"] = out;
    emit_json(c, j);
}

// covariance

struct CovarianceArgs {
    std::size_t T = 200000;
    std::size_t burnin = kDefaultBurnin;
    std::optional<std::size_t> k;
    bool fluctuation = false;
    std::vector<std::size_t> n_grid{2000, 8000, 32000, 128000};
    std::size_t reps = 100;
    std::string fluct_out;
};

void run_covariance(const Common& c, const CovarianceArgs& a) {
    const ModelSpec spec = require_spec(c);
    const std::uint64_t seed = resolve_seed(c);
    const PathSample path = c.path_path.empty() ? simulate_sre(spec, a.T, a.burnin, seed) : load_path(c.path_path);
    if (path.d != spec.d) throw Error(ErrorCode::DimensionMismatch, "path and spec dimensions differ");
    if (path.diverged) throw Error(ErrorCode::Numerical, "path diverged");

    json j = header_for(spec, seed);
    j["T"] = path.T;
    j["gamma"] = matrix_to_json(sample_cov(path));

    std::optional<TailProfile> profile;
    try {
        profile = tail_profile(spec);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::Inapplicable) throw;
        j["alpha_cross"] = nullptr;
        j["alpha_cross_note"] = e.what();
    }
    if (profile) {
        Matrix pred(spec.d, spec.d);
        for (std::size_t r = 0; r < spec.d; ++r)
            for (std::size_t s = 0; s < spec.d; ++s) pred(r, s) = alpha_cross(profile->alpha[r], profile->alpha[s]);
        j["alpha_cross"] = matrix_to_json(pred);
        const std::size_t k = a.k.value_or(static_cast<std::size_t>(2.0 * std::sqrt(static_cast<double>(path.T))));
        json cross = json::array();
        for (const auto& e : cross_tail_check(path, *profile, k))
            cross.push_back({{"i", e.i + 1},
                             {"j", e.j + 1},
                             {"predicted", e.predicted},
                             {"hill", e.empirical},
                             {"k", e.k},
                             {"within_band", e.within_band}});
        j["cross_tail"] = cross;
        j["cross_tail_band"] = kCrossTailBand;

        if (a.fluctuation) {
            const FluctuationScan scan = fluctuation_scan(spec, *profile, a.n_grid, a.reps, mix64(seed), a.burnin);
            json ex = json::array();
            for (const auto& e : scan.exponents)
                ex.push_back({{"i", e.i + 1},
                              {"j", e.j + 1},
                              {"alpha_cross", e.alpha_cross},
                              {"slope", e.slope},
                              {"predicted_slope", e.predicted_slope}});
            j["fluctuation"] = {{"n_grid", a.n_grid}, {"reps", a.reps}, {"exponents", ex}};
            if (!a.fluct_out.empty()) {
                std::ostringstream os;
                os << "n,i,j,iqr\n";
                for (const auto& p : scan.points) os << p.n << ',' << p.i + 1 << ',' << p.j + 1 << ',' << fmt(p.iqr, 17) << '\n';
                write_file_atomic(a.fluct_out, os.str());
                write_file_atomic(sidecar_path(a.fluct_out), header_for(spec, seed).dump(2) + "\n");
            }
        }
    } else if (a.fluctuation) {
        throw Error(ErrorCode::Inapplicable, "fluctuation scan needs analytic tail indices");
    }
    emit_json(c, j);
}

// classify

void run_classify(const Common& c) {
    const ModelSpec spec = require_spec(c);
    json j = header(0, spec_digest(spec));
    j.erase("seed");
    j["d"] = spec.d;
    j["l"] = spec.l;
    j["class"] = labels_json(classify(spec));
    emit_json(c, j);
}

void report_error(const char* name, int code, const std::string& message) {
    const json err = {{"error", {{"code", code}, {"kind", name}, {"message", message}}}};
    std::cerr << err.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and analyzer for BEKK-ARCH processes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    Common common;
    auto add_common = [&](CLI::App* sub, bool spec, bool path, bool seed) {
        if (spec) sub->add_option("--spec", common.spec_path, "Model spec JSON file");
        if (path) sub->add_option("--path", common.path_path, "Path CSV written by `simulate`");
        if (seed) sub->add_option("--seed", common.seed, "RNG seed (drawn from entropy and recorded when omitted)");
        sub->add_option("--out", common.out, "Output file (stdout when omitted)");
    };

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Simulate a path and write CSV plus sidecar metadata");
    add_common(simulate, true, false, true);
    simulate->add_option("--T", sim.T, "Retained steps")->check(CLI::PositiveNumber);
    simulate->add_option("--burnin", sim.burnin, "Discarded initial steps");
    simulate->add_option("--form", sim.form, "Recursion form: sre or h")->check(CLI::IsMember({"sre", "h"}));

    StationarityArgs st;
    auto* stationarity = app.add_subcommand("check-stationarity", "Lyapunov, closed-form gate and moment checks");
    add_common(stationarity, true, false, true);
    stationarity->add_option("--steps", st.steps, "Lyapunov steps per replicate");
    stationarity->add_option("--reps", st.reps, "Lyapunov replicates");
    stationarity->add_option("--max-moment", st.max_moment, "Highest moment order n for rho(E[M^(x)2n])");
    stationarity->add_option("--mc-samples", st.mc_samples, "Monte Carlo draws for moment orders n >= 2");

    TailArgs ta;
    auto* tail = app.add_subcommand("tail-index", "Analytic tail indices from a spec, Hill estimates from a path");
    add_common(tail, true, true, true);
    tail->add_flag("--goldie", ta.goldie, "Also estimate the tail constants (Diagonal specs)");
    tail->add_option("--goldie-T", ta.goldie_T, "Steps per replicate for the tail constant");
    tail->add_option("--goldie-reps", ta.goldie_reps, "Replicates for the tail constant");
    tail->add_option("--k", ta.k, "Hill k values (comma separated)")->delimiter(',');

    SpectralArgs sp;
    auto* spectral = app.add_subcommand("spectral-measure", "Rank-based bivariate spectral-measure estimate");
    add_common(spectral, false, true, false);
    spectral->add_option("--k", sp.k, "Numbers of upper order statistics (comma separated)")->delimiter(',');
    spectral->add_option("--grid", sp.grid, "Number of angle grid points on [0, pi/2]")->check(CLI::Range(2, 1000000));
    spectral->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    ExtremalArgs ex;
    auto* extremal = app.add_subcommand("extremal-index", "Marginal extremal indices by Monte Carlo and blocks");
    add_common(extremal, true, true, true);
    extremal->add_option("--marginal", ex.marginal, "1-based marginal (all when omitted)");
    extremal->add_option("--K", ex.K, "Truncation horizon of the Monte Carlo formula");
    extremal->add_option("--reps", ex.reps, "Monte Carlo replicates");
    extremal->add_option("--T", ex.T, "Path length for the blocks estimator when no --path is given");
    extremal->add_option("--burnin", ex.burnin, "Burn-in for the simulated path");
    extremal->add_option("--quantile", ex.quantile, "Threshold quantile for blocks and clusters");
    extremal->add_option("--block", ex.block, "Block length");
    extremal->add_option("--gap", ex.gap, "Runs-declustering gap");

    CovarianceArgs cv;
    auto* covariance = app.add_subcommand("covariance", "Sample covariance, cross-tail indices and fluctuation rates");
    add_common(covariance, true, true, true);
    covariance->add_option("--T", cv.T, "Path length when no --path is given");
    covariance->add_option("--burnin", cv.burnin, "Burn-in for simulated paths");
    covariance->add_option("--k", cv.k, "Hill k for cross products");
    covariance->add_flag("--fluctuation", cv.fluctuation, "Run the fluctuation-rate scan");
    covariance->add_option("--n-grid", cv.n_grid, "Sample sizes for the scan (comma separated)")->delimiter(',');
    covariance->add_option("--reps", cv.reps, "Replicates per sample size");
    covariance->add_option("--fluct-out", cv.fluct_out, "CSV file for the per-size spreads");

    auto* classify_cmd = app.add_subcommand("classify", "Structural parameter class of a spec");
    add_common(classify_cmd, true, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("usage", kUsageExit, e.what());
        return kUsageExit;
    }

    try {
        if (*simulate) run_simulate(common, sim);
        else if (*stationarity) run_stationarity(common, st);
        else if (*tail) run_tail_index(common, ta);
        else if (*spectral) run_spectral(common, sp);
        else if (*extremal) run_extremal(common, ex);
        else if (*covariance) run_covariance(common, cv);
        else if (*classify_cmd) run_classify(common);
    } catch (const Error& e) {
        report_error(to_string(e.code()), static_cast<int>(e.code()), e.what());
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        report_error("internal", kInternalExit, e.what());
        return kInternalExit;
    }
    return 0;
}
